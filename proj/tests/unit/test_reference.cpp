#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "wasnem/reference/kernels.hpp"
#include "wasnem/reference/tally.hpp"

using namespace wasnem;
using namespace wasnem::reference;

namespace {
std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}
}  // namespace

TEST_SUITE("reference") {
  TEST_CASE("tally counts every operation class") {
    Tally t;
    t.mac(0, 1, 2);
    t.add(1, 2);
    t.sub(1, 2);
    t.mul(1, 2);
    t.div(1, 2);
    t.max(1, 2);
    t.exp(1);
    t.log(1);
    t.cmul({1, 2}, {3, 4});
    t.cadd({1, 2}, {3, 4});
    const auto& c = t.counts();
    CHECK(c[OpClass::mac] == 1);
    CHECK(c[OpClass::add] == 2 + 2 + 2);
    CHECK(c[OpClass::mul] == 1 + 4);
    CHECK(c[OpClass::div] == 1);
    CHECK(c[OpClass::cmp] == 1);
    CHECK(c[OpClass::exp] == 1);
    CHECK(c[OpClass::log] == 1);
    CHECK(Tally{}.cmul({1, 2}, {3, 4}) == std::complex<double>(-5, 10));
  }

  TEST_CASE("FFT agrees with a direct DFT") {
    for (std::size_t n : {2u, 8u, 64u, 512u}) {
      const auto x = noise(n - n / 4, static_cast<unsigned>(n));
      const auto fast = fft_radix2(x, n).value;
      for (std::size_t k = 0; k < n; k += std::max<std::size_t>(1, n / 16)) {
        std::complex<double> direct = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          direct += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * i) / double(n));
        }
        CHECK(std::abs(fast[k] - direct) <= 1e-9 * (1.0 + std::abs(direct)));
      }
    }
  }

  TEST_CASE("DCT agrees with its definition") {
    const auto x = noise(40, 3);
    const auto c = dct(x, 14).value;
    for (std::size_t k = 0; k < 14; ++k) {
      double direct = 0.0;
      for (std::size_t m = 0; m < 40; ++m) {
        direct += x[m] * std::cos(std::numbers::pi * double(k) * (double(m) + 0.5) / 40.0);
      }
      CHECK(c[k] == doctest::Approx(direct).epsilon(1e-12));
    }
  }

  TEST_CASE("activations compute what they claim") {
    const std::vector<double> x{-2.0, -0.5, 0.0, 0.5, 2.0};
    const auto relu = activation(ActivationKind::relu, x).value;
    const auto logistic = activation(ActivationKind::logistic, x).value;
    const auto tanh = activation(ActivationKind::tanh, x).value;
    const auto softmax = activation(ActivationKind::softmax, x).value;
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(relu[i] == std::max(0.0, x[i]));
      CHECK(logistic[i] == doctest::Approx(1.0 / (1.0 + std::exp(-x[i]))));
      CHECK(tanh[i] == doctest::Approx(std::tanh(x[i])));
      sum += softmax[i];
    }
    CHECK(sum == doctest::Approx(1.0));
  }

  TEST_CASE("convolution against a hand-written 1-D case") {
    const std::vector<double> input{1, 2, 3, 4};
    const std::vector<double> kernel{1, 0, -1};
    const std::vector<double> bias{0.5};
    const ConvLayer layer{1, {{4}, {3}, {1}, {1}}};
    const auto out = convolution(input, layer, kernel, bias).value;
    // zero padding of one sample on both sides
    CHECK(out == std::vector<double>{0.5 - 2, 0.5 + 1 - 3, 0.5 + 2 - 4, 0.5 + 3});
  }

  TEST_CASE("pooling picks maxima and averages") {
    const std::vector<double> input{1, 5, 2, 3, 0, 4, 7, 6};
    const PoolLayer max_pool{PoolMode::max, {{2, 4}, {2, 2}, {2, 2}, {0, 0}}, true};
    CHECK(pooling(input, max_pool).value == std::vector<double>{5, 7});
    const PoolLayer avg_pool{PoolMode::avg, {{2, 4}, {2, 2}, {2, 2}, {0, 0}}, true};
    CHECK(pooling(input, avg_pool).value == std::vector<double>{2.5, 4.5});
  }

  TEST_CASE("dense layer and batch norm") {
    const std::vector<double> x{1, 2};
    const std::vector<double> w{1, 1, 2, -1};
    const std::vector<double> b{0, 1};
    CHECK(fully_connected(x, w, b).value == std::vector<double>{3, 1});
    CHECK(batch_norm(x, std::vector<double>{2, 3}, std::vector<double>{1, 1}).value ==
          std::vector<double>{3, 7});
  }

  TEST_CASE("per-frame chain ops add up") {
    const auto frame = noise(480, 11);
    const auto chain = mfcc_frame(frame, 512, 40, 14, 16e3);
    CHECK(chain.value.size() == 14);
    CHECK(chain.ops[OpClass::mac] == 480 + 10240 + 560);
    CHECK(chain.ops[OpClass::log] == 40);
  }
}
