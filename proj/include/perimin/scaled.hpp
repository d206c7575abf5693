#pragma once

// Exact fixed-point arithmetic.  Every measure, capacity and edge length in a
// space is an int64 multiple of 1/scale for a per-space integer scale.  All
// arithmetic on such quantities goes through the checked helpers here; the
// answer to "does not fit" is always an exception, never a silent wrap.

#include <cstdint>
#include <string>

#include "perimin/errors.hpp"

namespace perimin {

using i64 = std::int64_t;
using i128 = __int128;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

/// Default capacity scale: fine enough that every builtin scenario's cell
/// measures (w * h^2 down to h = 2^-12) and prorated capacities are integers.
constexpr i64 kDefaultScale = i64{1} << 24;

/// Narrow an __int128 to int64, throwing ScaleError when it does not fit.
i64 checked_narrow(i128 v, const char* what);

/// a * b with overflow check.
i64 checked_mul(i64 a, i64 b, const char* what);

/// a + b with overflow check.
i64 checked_add(i64 a, i64 b, const char* what);

/// a * b / c, exact: throws ScaleError unless c divides a * b.
i64 exact_mul_div(i64 a, i64 b, i64 c, const char* what);

/// A reduced rational with positive denominator.  Used for lambda and epsilon
/// parameters and for exact report values; never for bulk per-edge data.
struct Fraction {
  i64 num = 0;
  i64 den = 1;

  static Fraction make(i64 num, i64 den);  ///< reduces, normalizes sign
  static Fraction from_int(i64 v) { return Fraction{v, 1}; }

  bool operator==(const Fraction&) const = default;
  bool is_positive() const { return num > 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Fraction frac_add(Fraction a, Fraction b);
Fraction frac_mul(Fraction a, Fraction b);

/// Three-way compare of a/b vs c/d without overflow.
int frac_cmp(i64 a, i64 b, i64 c, i64 d);

/// Parses "3", "-5/8", "0.25", "2^-9" (power-of-two shorthand).
/// Throws InputError on anything else.
Fraction parse_fraction(const std::string& text);

/// Exact decimal rendering of num/den when the expansion terminates within
/// 40 digits, else a "num/den" literal.  den must be positive.
std::string decimal_string(i64 num, i64 den);

/// Deterministic, portable pseudo-random stream (splitmix64 core).  Used for
/// probe sampling so that seeds mean the same thing on every platform.
class Rng {
 public:
  explicit Rng(u64 seed) : state_(seed) {}

  u64 next();                     ///< full 64-bit word
  u64 below(u64 bound);           ///< uniform in [0, bound), bound >= 1
  double unit();                  ///< uniform in [0, 1)

 private:
  u64 state_;
};

}  // namespace perimin
