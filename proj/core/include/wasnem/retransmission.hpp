#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

// Truncated-ARQ statistics. A frame is retried up to x times; after x failed
// trials an outage is declared and the node sleeps for one coherence time
// before starting a new attempt.

namespace wasnem {

// fast: the frame error rate of each trial is an independent draw.
// block: one draw is frozen for all trials of an attempt.
enum class Fading { fast, block };

// Distribution of the frame error rate P_f across coherence blocks.
class FrameErrorDistribution {
 public:
  static FrameErrorDistribution deterministic(double p_f);
  static FrameErrorDistribution discrete(std::vector<double> values, std::vector<double> weights);
  // P_f = p_f_of_snr(gamma) with gamma exponentially distributed (Rayleigh
  // power) around mean_snr.
  static FrameErrorDistribution rayleigh(std::function<double(double)> p_f_of_snr,
                                         double mean_snr);

  // E[g(P_f)].
  double expect(const std::function<double(double)>& g) const;
  double mean() const;
  double sample(std::mt19937_64& rng) const;

  bool is_continuous() const { return static_cast<bool>(p_f_of_snr_); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

  // Same distribution with every P_f shifted by `delta` (clamped to [0, 1]).
  FrameErrorDistribution shifted(double delta) const;

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  std::function<double(double)> p_f_of_snr_;
  double mean_snr_ = 0.0;
};

struct RetransmissionStats {
  double q_x = 0.0;           // outage probability
  double mean_outages = 0.0;  // tau_out
  double mean_trials_given_success = 1.0;  // tau_x
  double phi = 1.0;           // x tau_out + tau_x, expected trials per delivered frame
};

// Analytic statistics. Fast fading uses P_f = E[P_f] for every trial
// (q_x = P_f^x, phi = 1/(1-P_f)); block fading takes expectations over the
// distribution (q_x = E[P_f^x], phi = E[(1-P_f^x)/(1-P_f)] / (1 - E[P_f^x])).
// Throws DivergenceError when q_x = 1.
RetransmissionStats retransmission_stats(const FrameErrorDistribution& p_f, unsigned max_trials,
                                         Fading fading);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct SimulatedRetransmissionStats {
  Estimate q_x;
  Estimate mean_outages;
  Estimate mean_trials_given_success;
  Estimate phi;
  std::uint64_t episodes = 0;
  std::uint64_t attempts = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo of `episodes` frame deliveries. Episodes are split into a fixed
// number of streams, stream s seeded from (seed, s); results do not depend on
// the number of worker threads.
SimulatedRetransmissionStats simulate_retransmissions(const FrameErrorDistribution& p_f,
                                                      unsigned max_trials, Fading fading,
                                                      std::uint64_t episodes, std::uint64_t seed,
                                                      unsigned threads = 0);

}  // namespace wasnem
