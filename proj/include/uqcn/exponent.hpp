#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uqcn {

// An element of (1/2)Z stored as twice its value.
struct HalfExponent {
  long doubled = 0;

  constexpr HalfExponent() = default;
  static constexpr HalfExponent from_doubled(long d) {
    HalfExponent h;
    h.doubled = d;
    return h;
  }
  static constexpr HalfExponent integer(long v) { return from_doubled(2 * v); }

  constexpr bool is_integer() const { return doubled % 2 == 0; }
  constexpr long floor() const { return doubled >= 0 ? doubled / 2 : -((-doubled + 1) / 2); }
  long to_integer() const {
    if (!is_integer()) throw std::domain_error("half-integer used as integer");
    return doubled / 2;
  }

  constexpr HalfExponent operator-() const { return from_doubled(-doubled); }
  constexpr HalfExponent operator+(HalfExponent o) const { return from_doubled(doubled + o.doubled); }
  constexpr HalfExponent operator-(HalfExponent o) const { return from_doubled(doubled - o.doubled); }
  constexpr HalfExponent operator*(long k) const { return from_doubled(doubled * k); }
  constexpr HalfExponent& operator+=(HalfExponent o) {
    doubled += o.doubled;
    return *this;
  }
  constexpr auto operator<=>(const HalfExponent&) const = default;

  std::string to_string() const {
    if (is_integer()) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
  }
};

// Shorthand for tests and tables: half(3) is 3/2.
constexpr HalfExponent half(long doubled) { return HalfExponent::from_doubled(doubled); }

} // namespace uqcn
