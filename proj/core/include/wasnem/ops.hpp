#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace wasnem {

// Arithmetic operation classes distinguished by the processing model.
enum class OpClass : std::size_t { mac, add, mul, div, cmp, exp, log };

inline constexpr std::size_t kOpClassCount = 7;

inline constexpr std::array<OpClass, kOpClassCount> kAllOpClasses{
    OpClass::mac, OpClass::add, OpClass::mul, OpClass::div,
    OpClass::cmp, OpClass::exp, OpClass::log};

std::string_view op_class_name(OpClass op);
std::optional<OpClass> parse_op_class(std::string_view name);

// A value per operation class (counts, cycle costs).
template <typename T>
struct PerOp {
  std::array<T, kOpClassCount> values{};

  constexpr T& operator[](OpClass op) { return values[static_cast<std::size_t>(op)]; }
  constexpr const T& operator[](OpClass op) const {
    return values[static_cast<std::size_t>(op)];
  }

  constexpr PerOp& operator+=(const PerOp& other) {
    for (std::size_t i = 0; i < kOpClassCount; ++i) values[i] += other.values[i];
    return *this;
  }
  friend constexpr PerOp operator+(PerOp a, const PerOp& b) { return a += b; }
  friend constexpr bool operator==(const PerOp&, const PerOp&) = default;
};

using OpCounts = PerOp<std::uint64_t>;
using OpCycleCosts = PerOp<std::uint64_t>;

// Sum_j c_j * n_j : clock cycles spent on the given operations.
double cycles(const OpCounts& counts, const OpCycleCosts& costs);

}  // namespace wasnem
