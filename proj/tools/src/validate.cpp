#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "wasnem/comm.hpp"
#include "wasnem/dsp.hpp"
#include "wasnem/nn.hpp"
#include "wasnem/reference/kernels.hpp"
#include "wasnem/retransmission.hpp"

namespace wasnem::cli {
namespace {

std::string ops_text(const OpCounts& ops) {
  std::string s;
  for (OpClass op : kAllOpClasses) {
    if (!s.empty()) s += ' ';
    s += std::string(op_class_name(op)) + "=" + std::to_string(ops[op]);
  }
  return s;
}

CheckResult compare_ops(std::string name, const OpCounts& formula, const OpCounts& executed) {
  CheckResult c{std::move(name), formula == executed, {}};
  c.detail = c.pass ? ops_text(executed)
                    : "expected " + ops_text(formula) + " actual " + ops_text(executed);
  return c;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

struct Case {
  std::string label;
  FrameErrorDistribution dist;
};

}  // namespace

std::vector<CheckResult> retransmission_checks(const ValidateOptions& opts) {
  std::vector<CheckResult> out;
  std::uint64_t case_index = 0;
  for (Fading fading : {Fading::fast, Fading::block}) {
    for (double pf : {0.05, 0.2, 0.5}) {
      std::vector<Case> cases;
      cases.push_back({"point", FrameErrorDistribution::deterministic(pf)});
      if (fading == Fading::block) {
        cases.push_back(
            {"two-point", FrameErrorDistribution::discrete({pf / 2, 3 * pf / 2}, {0.5, 0.5})});
      }
      for (const auto& c : cases) {
        for (unsigned x : {1u, 2u, 5u}) {
          const auto analytic = retransmission_stats(c.dist, x, fading);
          const auto simulated_dist = opts.pf_bias != 0.0 ? c.dist.shifted(opts.pf_bias) : c.dist;
          const auto sim = simulate_retransmissions(simulated_dist, x, fading, opts.episodes,
                                                    opts.seed + case_index++);
          const std::string prefix = "retransmission/" + std::string(to_string(fading)) + "/" +
                                     c.label + " pf=" + format_number(pf) +
                                     " x=" + std::to_string(x) + " ";
          // The plug-in error collapses to zero when a rare event is never
          // seen; outage counts are geometric, so the analytic q also gives
          // the error expected under the model.
          const double q = analytic.q_x;
          const double q_se = std::sqrt(q * (1.0 - q) / static_cast<double>(sim.attempts));
          const double outage_se = std::sqrt(q / static_cast<double>(opts.episodes)) / (1.0 - q);
          auto check = [&](const char* stat, double a, const Estimate& s, double model_se = 0.0) {
            const double diff = std::abs(a - s.value);
            const double se = std::max(s.std_error, model_se);
            const double bound = se > 0.0 ? 3.0 * se : 1e-12 * std::max(1.0, std::abs(a));
            out.push_back({prefix + stat, diff <= bound,
                           "analytic=" + format_number(a) + " simulated=" + format_number(s.value) +
                               " se=" + format_number(se)});
          };
          check("q_x", analytic.q_x, sim.q_x, q_se);
          check("mean_outages", analytic.mean_outages, sim.mean_outages, outage_se);
          check("mean_trials_given_success", analytic.mean_trials_given_success,
                sim.mean_trials_given_success);
          check("phi", analytic.phi, sim.phi);
        }
      }
    }
  }
  return out;
}

std::vector<CheckResult> op_count_checks() {
  namespace ref = wasnem::reference;
  std::vector<CheckResult> out;
  std::mt19937_64 rng(7);
  const std::string level = "onchip_sram";

  MfccConfig small;
  small.frame_len_samples = 40;
  small.hop_samples = 20;
  small.fft_len = 64;
  small.n_mel_bands = 20;
  small.n_cepstra = 13;
  for (const MfccConfig& cfg : {small, MfccConfig{}}) {
    const std::string tag = " nf=" + std::to_string(cfg.fft_len);
    const auto frame = random_vector(cfg.frame_len_samples, rng);
    const auto windowed = ref::window_frame(frame);
    const auto spectrum = ref::fft_radix2(windowed.value, cfg.fft_len);
    const auto mel = ref::log_mel(ref::power_bins(spectrum.value), cfg.n_mel_bands, 16e3);
    const auto cep = ref::dct(mel.value, cfg.n_cepstra);
    out.push_back(compare_ops("opcount/framing_window" + tag,
                              cost_framing_window(cfg, level).op_counts, windowed.ops));
    out.push_back(compare_ops("opcount/fft" + tag, cost_fft(cfg, level).op_counts, spectrum.ops));
    out.push_back(compare_ops("opcount/log_mel" + tag, cost_log_mel(cfg, level).op_counts, mel.ops));
    out.push_back(compare_ops("opcount/dct" + tag, cost_dct(cfg, level).op_counts, cep.ops));
  }

  // whole default pipeline against the executed per-frame chain
  {
    const HardwareProfile profile = default_profile();
    const MfccConfig cfg;
    const auto plan_cost = cost_pipeline(mfcc_plan(), 1.0, 16e3, profile.processing);
    const auto frame = random_vector(cfg.frame_len_samples, rng);
    const auto chain = ref::mfcc_frame(frame, cfg.fft_len, cfg.n_mel_bands, cfg.n_cepstra, 16e3);
    OpCounts executed{};
    for (std::uint64_t f = 0; f < plan_cost.frames; ++f) executed += chain.ops;
    out.push_back(compare_ops("opcount/mfcc_pipeline frames=" + std::to_string(plan_cost.frames),
                              plan_cost.total.op_counts, executed));
  }

  for (const FcLayer& fc : {FcLayer{30, 10}, FcLayer{1, 1}, FcLayer{14, 98}}) {
    const auto input = random_vector(fc.n_in, rng);
    const auto weights = random_vector(fc.n_in * fc.n_neurons, rng);
    const auto bias = random_vector(fc.n_neurons, rng);
    out.push_back(compare_ops(
        "opcount/fc " + std::to_string(fc.n_in) + "x" + std::to_string(fc.n_neurons),
        cost_fc(fc, 32, level).op_counts, ref::fully_connected(input, weights, bias).ops));
  }

  for (ActivationKind kind : {ActivationKind::relu, ActivationKind::logistic, ActivationKind::tanh,
                              ActivationKind::softmax}) {
    const auto input = random_vector(17, rng);
    out.push_back(compare_ops("opcount/activation " + std::string(to_string(kind)),
                              cost_activation(kind, 17, level).op_counts,
                              ref::activation(kind, input).ops));
  }

  const ConvLayer conv1d{4, {{16}, {3}, {1}, {1}}};
  const ConvLayer conv2d{3, {{8, 6}, {3, 2}, {1, 2}, {1, 0}}};
  for (const auto& [name, conv] : {std::pair{"1d", conv1d}, std::pair{"2d", conv2d}}) {
    const auto input = random_vector(product(conv.geometry.input_dims), rng);
    const auto kernels = random_vector(conv.n_templates * product(conv.geometry.template_dims), rng);
    const auto bias = random_vector(conv.n_templates, rng);
    out.push_back(compare_ops(std::string("opcount/conv ") + name, cost_conv(conv, 32, level).op_counts,
                              ref::convolution(input, conv, kernels, bias).ops));
  }

  const WindowGeometry pool_geometry{{8, 6}, {2, 3}, {2, 3}, {0, 0}};
  const PoolLayer pools[] = {{PoolMode::max, pool_geometry, true},
                             {PoolMode::avg, pool_geometry, true},
                             {PoolMode::avg, pool_geometry, false}};
  for (const auto& pool : pools) {
    const auto input = random_vector(product(pool.geometry.input_dims), rng);
    const std::string name = "opcount/pool " + std::string(to_string(pool.mode)) +
                             (pool.charge_avg_pool_div ? "" : " no-div");
    out.push_back(compare_ops(name, cost_pool(pool, 32, level).op_counts, ref::pooling(input, pool).ops));
  }

  {
    const auto input = random_vector(25, rng);
    const auto scale = random_vector(25, rng);
    const auto shift = random_vector(25, rng);
    out.push_back(compare_ops("opcount/batchnorm", cost_batchnorm(25, 32, level).op_counts,
                              ref::batch_norm(input, scale, shift).ops));
  }
  return out;
}

std::vector<CheckResult> ber_checks() {
  std::vector<CheckResult> out;
  for (double mean : {1.0, 10.0, 100.0}) {
    auto integrand = [mean](double g) {
      return q_function(std::sqrt(2.0 * g)) * std::exp(-g / mean) / mean;
    };
    const double numeric = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-12);
    const double closed = ber_binary(mean, Fading::fast);
    out.push_back({"ber/rayleigh_bpsk mean_snr=" + format_number(mean),
                   std::abs(numeric - closed) <= 1e-6,
                   "closed=" + format_number(closed) + " numeric=" + format_number(numeric)});
  }
  return out;
}

std::string validation_report(const std::vector<CheckResult>& checks) {
  std::ostringstream s;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    s << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    failed += c.pass ? 0 : 1;
  }
  s << checks.size() << " checks, " << failed << " failed\n";
  return s.str();
}

}  // namespace wasnem::cli
