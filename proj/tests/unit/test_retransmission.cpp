#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wasnem/errors.hpp"
#include "wasnem/retransmission.hpp"

using namespace wasnem;
using testing::rel_close;

namespace {
FrameErrorDistribution point(double pf) { return FrameErrorDistribution::deterministic(pf); }

bool within(const Estimate& e, double truth, double floor_se) {
  return std::abs(e.value - truth) <= 3.0 * std::max(e.std_error, floor_se);
}
}  // namespace

TEST_SUITE("retransmission") {
  TEST_CASE("perfect channel") {
    for (Fading f : {Fading::fast, Fading::block}) {
      const auto s = retransmission_stats(point(0.0), 3, f);
      CHECK(s.q_x == 0.0);
      CHECK(s.mean_outages == 0.0);
      CHECK(s.mean_trials_given_success == 1.0);
      CHECK(s.phi == 1.0);
      const auto sim = simulate_retransmissions(point(0.0), 3, f, 1000, 1);
      CHECK(sim.phi.value == 1.0);
      CHECK(sim.phi.std_error == 0.0);
    }
  }

  TEST_CASE("closed-form examples") {
    CHECK(rel_close(retransmission_stats(point(0.1), 1, Fading::fast).phi, 1.0 / 0.9, 1e-15));
    const auto s = retransmission_stats(point(0.2), 3, Fading::fast);
    CHECK(rel_close(s.q_x, 0.008, 1e-14));
    CHECK(rel_close(s.phi, 1.25, 1e-14));
    CHECK(rel_close(s.mean_outages, 0.008 / 0.992, 1e-14));
    CHECK(rel_close(s.phi, 3 * s.mean_outages + s.mean_trials_given_success, 1e-14));
    CHECK_THROWS_AS(retransmission_stats(point(1.0), 3, Fading::fast), DivergenceError);
    CHECK_THROWS_AS(retransmission_stats(point(1.0), 3, Fading::block), DivergenceError);
  }

  TEST_CASE("fast-fading phi does not depend on the trial limit") {
    for (double pf : {0.05, 0.3, 0.7}) {
      for (unsigned x = 1; x <= 6; ++x) {
        CHECK(rel_close(retransmission_stats(point(pf), x, Fading::fast).phi, 1.0 / (1.0 - pf),
                        1e-13));
      }
    }
  }

  TEST_CASE("Jensen ordering on a two-point distribution") {
    const auto two = FrameErrorDistribution::discrete({0.1, 0.5}, {0.5, 0.5});
    const double phi1 = retransmission_stats(two, 1, Fading::block).phi;
    for (unsigned x : {2u, 3u, 5u}) {
      const auto fast = retransmission_stats(two, x, Fading::fast);
      const auto block = retransmission_stats(two, x, Fading::block);
      CHECK(fast.q_x < block.q_x);
      CHECK(phi1 < block.phi);
    }
  }

  TEST_CASE("invariants over a grid") {
    const auto two = FrameErrorDistribution::discrete({0.05, 0.6, 0.9}, {0.2, 0.5, 0.3});
    double prev_phi = 0.0;
    for (unsigned x = 1; x <= 8; ++x) {
      const auto s = retransmission_stats(two, x, Fading::block);
      CHECK(s.q_x >= 0.0);
      CHECK(s.q_x < 1.0);
      CHECK(s.mean_trials_given_success >= 1.0);
      CHECK(s.mean_trials_given_success <= x);
      CHECK(s.phi >= 1.0);
      CHECK(s.phi >= prev_phi);
      prev_phi = s.phi;
    }
  }

  TEST_CASE("Rayleigh expectation") {
    const double mean = 7.0;
    const auto d = FrameErrorDistribution::rayleigh([](double g) { return std::exp(-g); }, mean);
    CHECK(d.is_continuous());
    CHECK(d.mean() == doctest::Approx(1.0 / (1.0 + mean)).epsilon(1e-9));
    CHECK(d.expect([](double p) { return p * p; }) ==
          doctest::Approx(1.0 / (1.0 + 2 * mean)).epsilon(1e-9));
  }

  TEST_CASE("simulation agrees with the analysis") {
    const auto sim = simulate_retransmissions(point(0.5), 1, Fading::fast, 1'000'000, 7);
    CHECK(within(sim.mean_outages, 1.0, 0.0));
    const auto s2 = simulate_retransmissions(point(0.2), 3, Fading::fast, 1'000'000, 8);
    CHECK(within(s2.q_x, 0.008, 0.0));
    CHECK(within(s2.phi, 1.25, 0.0));
    const auto two = FrameErrorDistribution::discrete({0.1, 0.5}, {0.5, 0.5});
    const auto exact = retransmission_stats(two, 3, Fading::block);
    const auto s3 = simulate_retransmissions(two, 3, Fading::block, 1'000'000, 9);
    CHECK(within(s3.q_x, exact.q_x, 0.0));
    CHECK(within(s3.mean_trials_given_success, exact.mean_trials_given_success, 0.0));
    CHECK(within(s3.phi, exact.phi, 0.0));
  }

  TEST_CASE("simulation is deterministic and thread independent") {
    const auto two = FrameErrorDistribution::discrete({0.1, 0.5}, {0.5, 0.5});
    const auto a = simulate_retransmissions(two, 3, Fading::block, 200'000, 42, 1);
    const auto b = simulate_retransmissions(two, 3, Fading::block, 200'000, 42, 4);
    const auto c = simulate_retransmissions(two, 3, Fading::block, 200'000, 42);
    CHECK(a.phi.value == b.phi.value);
    CHECK(a.q_x.value == b.q_x.value);
    CHECK(a.phi.std_error == c.phi.std_error);
    CHECK(a.attempts == c.attempts);
    const auto d = simulate_retransmissions(two, 3, Fading::block, 200'000, 43);
    CHECK(d.phi.value != a.phi.value);
  }

  TEST_CASE("shifted distribution") {
    const auto d = point(0.2).shifted(0.1);
    CHECK(d.mean() == doctest::Approx(0.3));
    CHECK(point(0.95).shifted(0.1).mean() == 1.0);
    CHECK_THROWS_AS(FrameErrorDistribution::discrete({0.1}, {}), DomainError);
    CHECK_THROWS_AS(FrameErrorDistribution::discrete({1.5}, {1.0}), DomainError);
  }
}
