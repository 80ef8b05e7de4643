#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#ifndef WASNEM_TEST_DATA
#define WASNEM_TEST_DATA "."
#endif

namespace testing {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline std::string data_path(const std::string& name) {
  return std::string(WASNEM_TEST_DATA) + "/" + name;
}

}  // namespace testing
