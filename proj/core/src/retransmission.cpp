#include "wasnem/retransmission.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "wasnem/errors.hpp"

namespace wasnem {

FrameErrorDistribution FrameErrorDistribution::deterministic(double p_f) {
  return discrete({p_f}, {1.0});
}

FrameErrorDistribution FrameErrorDistribution::discrete(std::vector<double> values,
                                                        std::vector<double> weights) {
  if (values.empty() || values.size() != weights.size()) {
    throw DomainError("frame error distribution needs matching, non-empty values and weights");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw DomainError("frame error rates must lie in [0, 1]");
    }
    if (!(weights[i] >= 0.0)) throw DomainError("weights must be non-negative");
    total += weights[i];
  }
  if (!(total > 0.0)) throw DomainError("weights must not all be zero");
  for (auto& w : weights) w /= total;
  FrameErrorDistribution d;
  d.values_ = std::move(values);
  d.weights_ = std::move(weights);
  return d;
}

FrameErrorDistribution FrameErrorDistribution::rayleigh(std::function<double(double)> p_f_of_snr,
                                                        double mean_snr) {
  if (!(mean_snr > 0.0)) throw DomainError("mean SNR must be positive");
  FrameErrorDistribution d;
  d.p_f_of_snr_ = std::move(p_f_of_snr);
  d.mean_snr_ = mean_snr;
  return d;
}

double FrameErrorDistribution::expect(const std::function<double(double)>& g) const {
  if (!p_f_of_snr_) {
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) sum += weights_[i] * g(values_[i]);
    return sum;
  }
  // gamma = -mean * ln(1 - u) maps u ~ U(0,1) onto the exponential density.
  auto integrand = [&](double u) {
    const double gamma = -mean_snr_ * std::log1p(-u);
    return g(std::clamp(p_f_of_snr_(gamma), 0.0, 1.0));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 15,
                                                                      1e-12);
}

double FrameErrorDistribution::mean() const {
  return expect([](double p) { return p; });
}

double FrameErrorDistribution::sample(std::mt19937_64& rng) const {
  if (p_f_of_snr_) {
    std::exponential_distribution<double> snr(1.0 / mean_snr_);
    return std::clamp(p_f_of_snr_(snr(rng)), 0.0, 1.0);
  }
  if (values_.size() == 1) return values_.front();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    if (u < weights_[i]) return values_[i];
    u -= weights_[i];
  }
  return values_.back();
}

FrameErrorDistribution FrameErrorDistribution::shifted(double delta) const {
  FrameErrorDistribution d = *this;
  if (p_f_of_snr_) {
    auto inner = p_f_of_snr_;
    d.p_f_of_snr_ = [inner, delta](double g) { return std::clamp(inner(g) + delta, 0.0, 1.0); };
  } else {
    for (auto& v : d.values_) v = std::clamp(v + delta, 0.0, 1.0);
  }
  return d;
}

RetransmissionStats retransmission_stats(const FrameErrorDistribution& p_f, unsigned max_trials,
                                         Fading fading) {
  if (max_trials == 0) throw DomainError("max_trials must be >= 1");
  const FrameErrorDistribution fast_equivalent =
      fading == Fading::fast ? FrameErrorDistribution::deterministic(p_f.mean()) : p_f;
  const FrameErrorDistribution& dist = fading == Fading::fast ? fast_equivalent : p_f;
  const int x = static_cast<int>(max_trials);

  const double q = dist.expect([x](double p) { return std::pow(p, x); });
  // sum_{t=1}^{x} t P{tau = t}, P{tau = t} = E[(1-P) P^{t-1}]
  const double success_weighted = dist.expect([x](double p) {
    double sum = 0.0;
    double p_pow = 1.0;
    for (int t = 1; t <= x; ++t) {
      sum += t * (1.0 - p) * p_pow;
      p_pow *= p;
    }
    return sum;
  });

  if (!(q < 1.0)) {
    throw DivergenceError("outage probability q_x = 1: the link never delivers a frame");
  }
  RetransmissionStats s;
  s.q_x = q;
  s.mean_outages = q / (1.0 - q);
  // rounding can push the ratio a few ulps outside [1, x]
  s.mean_trials_given_success = std::clamp(success_weighted / (1.0 - q), 1.0, double(x));
  s.phi = x * s.mean_outages + s.mean_trials_given_success;
  return s;
}

namespace {

constexpr unsigned kStreams = 64;

struct StreamTally {
  std::uint64_t episodes = 0;
  std::uint64_t attempts = 0;
  std::uint64_t outages = 0;
  std::uint64_t outages_sq = 0;
  std::uint64_t success_trial = 0;
  std::uint64_t success_trial_sq = 0;
  std::uint64_t trials = 0;
  std::uint64_t trials_sq = 0;

  void merge(const StreamTally& o) {
    episodes += o.episodes;
    attempts += o.attempts;
    outages += o.outages;
    outages_sq += o.outages_sq;
    success_trial += o.success_trial;
    success_trial_sq += o.success_trial_sq;
    trials += o.trials;
    trials_sq += o.trials_sq;
  }
};

StreamTally run_stream(const FrameErrorDistribution& p_f, unsigned x, Fading fading,
                       std::uint64_t episodes, std::uint64_t seed, unsigned stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  StreamTally t;
  t.episodes = episodes;
  for (std::uint64_t e = 0; e < episodes; ++e) {
    std::uint64_t outages = 0;
    std::uint64_t success_at = 0;
    while (success_at == 0) {
      ++t.attempts;
      double p_block = fading == Fading::block ? p_f.sample(rng) : 0.0;
      for (unsigned trial = 1; trial <= x; ++trial) {
        const double p = fading == Fading::block ? p_block : p_f.sample(rng);
        if (!(unit(rng) < p)) {
          success_at = trial;
          break;
        }
      }
      if (success_at == 0) ++outages;
    }
    const std::uint64_t trials = x * outages + success_at;
    t.outages += outages;
    t.outages_sq += outages * outages;
    t.success_trial += success_at;
    t.success_trial_sq += success_at * success_at;
    t.trials += trials;
    t.trials_sq += trials * trials;
  }
  return t;
}

Estimate mean_estimate(std::uint64_t sum, std::uint64_t sum_sq, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  const double mean = static_cast<double>(sum) / nn;
  double var = 0.0;
  if (n > 1) {
    var = (static_cast<double>(sum_sq) - nn * mean * mean) / (nn - 1.0);
    var = std::max(var, 0.0);
  }
  return {mean, std::sqrt(var / nn)};
}

}  // namespace

SimulatedRetransmissionStats simulate_retransmissions(const FrameErrorDistribution& p_f,
                                                      unsigned max_trials, Fading fading,
                                                      std::uint64_t episodes, std::uint64_t seed,
                                                      unsigned threads) {
  if (max_trials == 0) throw DomainError("max_trials must be >= 1");
  if (episodes == 0) throw DomainError("episodes must be >= 1");
  if (p_f.mean() >= 1.0) {
    throw DivergenceError("frame error rate 1: the simulated link never delivers a frame");
  }

  std::vector<StreamTally> tallies(kStreams);
  auto work = [&](unsigned first, unsigned step) {
    for (unsigned s = first; s < kStreams; s += step) {
      const std::uint64_t n = episodes / kStreams + (s < episodes % kStreams ? 1 : 0);
      tallies[s] = run_stream(p_f, max_trials, fading, n, seed, s);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, kStreams);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i, threads);
  }

  StreamTally total;
  for (const auto& t : tallies) total.merge(t);

  SimulatedRetransmissionStats out;
  out.episodes = total.episodes;
  out.attempts = total.attempts;
  out.seed = seed;
  const double q = static_cast<double>(total.outages) / static_cast<double>(total.attempts);
  out.q_x = {q, std::sqrt(q * (1.0 - q) / static_cast<double>(total.attempts))};
  out.mean_outages = mean_estimate(total.outages, total.outages_sq, total.episodes);
  out.mean_trials_given_success =
      mean_estimate(total.success_trial, total.success_trial_sq, total.episodes);
  out.phi = mean_estimate(total.trials, total.trials_sq, total.episodes);
  return out;
}

}  // namespace wasnem
