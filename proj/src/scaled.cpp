#include "perimin/scaled.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace perimin {

namespace {

constexpr i64 kI64Max = std::numeric_limits<i64>::max();
constexpr i64 kI64Min = std::numeric_limits<i64>::min();

[[noreturn]] void scale_fail(const char* what) {
  throw ScaleError(std::string("value does not fit the capacity scale: ") + what);
}

}  // namespace

i64 checked_narrow(i128 v, const char* what) {
  if (v > static_cast<i128>(kI64Max) || v < static_cast<i128>(kI64Min)) scale_fail(what);
  return static_cast<i64>(v);
}

i64 checked_mul(i64 a, i64 b, const char* what) {
  return checked_narrow(static_cast<i128>(a) * b, what);
}

i64 checked_add(i64 a, i64 b, const char* what) {
  return checked_narrow(static_cast<i128>(a) + b, what);
}

i64 exact_mul_div(i64 a, i64 b, i64 c, const char* what) {
  if (c == 0) throw ScaleError(std::string("division by zero: ") + what);
  i128 p = static_cast<i128>(a) * b;
  if (p % c != 0) {
    throw ScaleError(std::string("inexact quantity at this capacity scale: ") + what);
  }
  return checked_narrow(p / c, what);
}

Fraction Fraction::make(i64 num, i64 den) {
  if (den == 0) throw InputError("fraction with zero denominator");
  if (den < 0) {
    if (num == kI64Min || den == kI64Min) throw ScaleError("fraction normalization overflow");
    num = -num;
    den = -den;
  }
  i64 g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  return Fraction{num, den};
}

Fraction frac_add(Fraction a, Fraction b) {
  i128 num = static_cast<i128>(a.num) * b.den + static_cast<i128>(b.num) * a.den;
  i128 den = static_cast<i128>(a.den) * b.den;
  return Fraction::make(checked_narrow(num, "fraction add"), checked_narrow(den, "fraction add"));
}

Fraction frac_mul(Fraction a, Fraction b) {
  i64 g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  i64 g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  i64 num = checked_mul(a.num / g1, b.num / g2, "fraction mul");
  i64 den = checked_mul(a.den / g2, b.den / g1, "fraction mul");
  return Fraction::make(num, den);
}

int frac_cmp(i64 a, i64 b, i64 c, i64 d) {
  if (b <= 0 || d <= 0) throw InternalError("frac_cmp requires positive denominators");
  i128 lhs = static_cast<i128>(a) * d;
  i128 rhs = static_cast<i128>(c) * b;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

Fraction parse_fraction(const std::string& text) {
  if (text.empty()) throw InputError("empty number");
  const char* s = text.c_str();

  auto parse_i64 = [&](const char* p, char** end) -> i64 {
    errno = 0;
    long long v = std::strtoll(p, end, 10);
    if (errno != 0 || *end == p) throw InputError("bad number: '" + text + "'");
    return static_cast<i64>(v);
  };

  // power-of-two shorthand: "2^-9", "2^4"
  if (text.size() >= 3 && text[0] == '2' && text[1] == '^') {
    char* end = nullptr;
    i64 e = parse_i64(s + 2, &end);
    if (*end != '\0') throw InputError("bad number: '" + text + "'");
    if (e < -62 || e > 62) throw InputError("power-of-two exponent out of range: '" + text + "'");
    if (e >= 0) return Fraction{i64{1} << e, 1};
    return Fraction{1, i64{1} << (-e)};
  }

  char* end = nullptr;
  i64 head = parse_i64(s, &end);
  if (*end == '\0') return Fraction{head, 1};

  if (*end == '/') {
    char* end2 = nullptr;
    i64 den = parse_i64(end + 1, &end2);
    if (*end2 != '\0') throw InputError("bad number: '" + text + "'");
    return Fraction::make(head, den);
  }

  if (*end == '.') {
    const char* frac_begin = end + 1;
    const char* p = frac_begin;
    i64 num = head;
    bool neg = text[0] == '-';
    i64 den = 1;
    while (*p != '\0') {
      if (!std::isdigit(static_cast<unsigned char>(*p))) {
        throw InputError("bad number: '" + text + "'");
      }
      num = checked_add(checked_mul(num, 10, "decimal literal"),
                        neg ? -(*p - '0') : (*p - '0'), "decimal literal");
      den = checked_mul(den, 10, "decimal literal");
      ++p;
    }
    if (p == frac_begin) throw InputError("bad number: '" + text + "'");
    return Fraction::make(num, den);
  }

  throw InputError("bad number: '" + text + "'");
}

std::string decimal_string(i64 num, i64 den) {
  if (den <= 0) throw InternalError("decimal_string requires a positive denominator");
  std::string out;
  u64 n;
  if (num < 0) {
    out += '-';
    n = u64{0} - static_cast<u64>(num);
  } else {
    n = static_cast<u64>(num);
  }
  u64 d = static_cast<u64>(den);
  out += std::to_string(n / d);
  u64 rem = n % d;
  if (rem == 0) return out;
  if (d > (~u64{0}) / 10) return std::to_string(num) + "/" + std::to_string(den);
  std::string digits;
  for (int i = 0; i < 40 && rem != 0; ++i) {
    rem *= 10;
    digits += static_cast<char>('0' + rem / d);
    rem %= d;
  }
  if (rem != 0) {
    // Non-terminating at this width: fall back to the exact rational literal.
    return std::to_string(num) + "/" + std::to_string(den);
  }
  return out + "." + digits;
}

u64 Rng::next() {
  // splitmix64: tiny, seedable, identical everywhere.
  state_ += 0x9e3779b97f4a7c15ULL;
  u64 z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

u64 Rng::below(u64 bound) {
  if (bound == 0) throw InternalError("Rng::below(0)");
  // Rejection sampling for exact uniformity.
  u64 limit = ~u64{0} - (~u64{0} % bound + 1) % bound;
  u64 v = next();
  while (v > limit) v = next();
  return v % bound;
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace perimin
