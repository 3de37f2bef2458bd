#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "ffdisc/errors.hpp"

namespace ffdisc {

// q^e, throwing PrecisionError past 64 bits.
inline std::uint64_t checked_pow(std::uint64_t q, unsigned e) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / q)
      throw PrecisionError(std::to_string(q) + "^" + std::to_string(e) + " exceeds 64 bits");
    v *= q;
  }
  return v;
}

// The value num / q^log_den in [0, 1).
struct FixedPoint {
  std::uint64_t num = 0;
  unsigned log_den = 0;
  std::uint32_t base = 2;

  std::uint64_t den() const { return checked_pow(base, log_den); }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den()); }

  // Same value with denominator base^e, e >= log_den.
  FixedPoint widened(unsigned e) const {
    if (e < log_den) throw DomainError("widened() cannot lower the denominator exponent");
    const std::uint64_t f = checked_pow(base, e - log_den);
    if (num != 0 && num > std::numeric_limits<std::uint64_t>::max() / f)
      throw PrecisionError("fixed-point numerator exceeds 64 bits");
    return {num * f, e, base};
  }

  // Floor of the value at denominator base^e, e <= log_den.
  FixedPoint truncated(unsigned e) const {
    if (e > log_den) return widened(e);
    return {num / checked_pow(base, log_den - e), e, base};
  }

  friend std::strong_ordering operator<=>(const FixedPoint& a, const FixedPoint& b) {
    if (a.base != b.base) throw DomainError("comparing fixed-point values with different bases");
    using u128 = unsigned __int128;
    const unsigned e = a.log_den > b.log_den ? a.log_den : b.log_den;
    const u128 x = u128{a.num} * checked_pow(a.base, e - a.log_den);
    const u128 y = u128{b.num} * checked_pow(b.base, e - b.log_den);
    return x <=> y;
  }
  friend bool operator==(const FixedPoint& a, const FixedPoint& b) { return (a <=> b) == 0; }
};

struct Point2D {
  std::uint64_t index = 0;
  FixedPoint x;  // Kronecker coordinate
  FixedPoint y;  // Van der Corput coordinate
};

}  // namespace ffdisc
