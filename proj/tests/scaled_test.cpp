#include "doctest.h"

#include "perimin/scaled.hpp"

using namespace perimin;

TEST_CASE("checked arithmetic throws instead of wrapping") {
  CHECK(checked_mul(i64{1} << 31, i64{1} << 31, "t") == i64{1} << 62);
  CHECK_THROWS_AS(checked_mul(i64{1} << 32, i64{1} << 31, "t"), ScaleError);
  CHECK(checked_add((i64{1} << 62) - 1, 1, "t") == i64{1} << 62);
  CHECK_THROWS_AS(checked_add(i64{1} << 62, i64{1} << 62, "t"), ScaleError);
  CHECK_THROWS_AS(checked_narrow(static_cast<i128>(1) << 80, "t"), ScaleError);
  CHECK(checked_narrow(static_cast<i128>(-42), "t") == -42);
}

TEST_CASE("exact_mul_div requires divisibility") {
  CHECK(exact_mul_div(1 << 24, 1, 512, "t") == 1 << 15);
  CHECK(exact_mul_div(100, 3, 6, "t") == 50);
  CHECK_THROWS_AS(exact_mul_div(1 << 24, 1, 3, "t"), ScaleError);
  // the product exceeds int64 but the quotient fits
  CHECK(exact_mul_div(i64{1} << 40, i64{1} << 40, i64{1} << 60, "t") == i64{1} << 20);
}

TEST_CASE("fractions reduce and normalize signs") {
  CHECK(Fraction::make(4, -8) == Fraction{-1, 2});
  CHECK(Fraction::make(-6, -4) == Fraction{3, 2});
  CHECK(Fraction::make(0, 7) == Fraction{0, 1});
  CHECK_THROWS_AS(Fraction::make(1, 0), InputError);
}

TEST_CASE("fraction arithmetic stays exact on large operands") {
  CHECK(frac_add(Fraction{1, 3}, Fraction{1, 6}) == Fraction{1, 2});
  CHECK(frac_add(Fraction{-1, 2}, Fraction{1, 2}) == Fraction{0, 1});
  CHECK(frac_mul(Fraction{2, 3}, Fraction{3, 4}) == Fraction{1, 2});
  // cross reduction keeps intermediates in range
  Fraction big{i64{1} << 40, 3};
  Fraction inv{3, i64{1} << 20};
  CHECK(frac_mul(big, inv) == Fraction{i64{1} << 20, 1});
  Fraction a{(i64{1} << 60) + 1, i64{1} << 60};
  CHECK(frac_add(a, Fraction{-1, 1}) == Fraction{1, i64{1} << 60});
}

TEST_CASE("frac_cmp orders without overflow") {
  CHECK(frac_cmp(1, 3, 1, 3) == 0);
  CHECK(frac_cmp(2, 3, 3, 4) < 0);
  CHECK(frac_cmp(3, 4, 2, 3) > 0);
  CHECK(frac_cmp(-1, 2, 1, 1000000) < 0);
  i64 huge = (i64{1} << 62) - 1;
  CHECK(frac_cmp(huge, huge - 1, huge + 0, huge) > 0);
}

TEST_CASE("parse_fraction accepts integers, ratios, decimals and powers of two") {
  CHECK(parse_fraction("3") == Fraction{3, 1});
  CHECK(parse_fraction("-5/8") == Fraction{-5, 8});
  CHECK(parse_fraction("0.25") == Fraction{1, 4});
  CHECK(parse_fraction("-0.5") == Fraction{-1, 2});
  CHECK(parse_fraction("2^-9") == Fraction{1, 512});
  CHECK(parse_fraction("2^4") == Fraction{16, 1});
  CHECK(parse_fraction("6/4") == Fraction{3, 2});
}

TEST_CASE("parse_fraction rejects malformed input") {
  CHECK_THROWS_AS(parse_fraction(""), InputError);
  CHECK_THROWS_AS(parse_fraction("abc"), InputError);
  CHECK_THROWS_AS(parse_fraction("1/0"), InputError);
  CHECK_THROWS_AS(parse_fraction("1.2.3"), InputError);
  CHECK_THROWS_AS(parse_fraction("2^-70"), InputError);
  CHECK_THROWS_AS(parse_fraction("1/"), InputError);
  CHECK_THROWS_AS(parse_fraction("--2"), InputError);
}

TEST_CASE("decimal_string renders terminating expansions exactly") {
  CHECK(decimal_string(1, 4) == "0.25");
  CHECK(decimal_string(-3, 2) == "-1.5");
  CHECK(decimal_string(5, 1) == "5");
  CHECK(decimal_string(0, 9) == "0");
  CHECK(decimal_string(1, 3) == "1/3");
  CHECK(decimal_string(1, i64{1} << 24) == "0.000000059604644775390625");
  // denominators too large for the digit loop fall back to the literal
  CHECK(decimal_string(1, (i64{1} << 62) - 1) == "1/4611686018427387903");
}

TEST_CASE("rng streams are deterministic and in range") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    u64 v = r.below(10);
    CHECK(v < 10);
    double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // below() must hit every residue eventually
  bool seen[5] = {};
  Rng s(3);
  for (int i = 0; i < 200; ++i) seen[s.below(5)] = true;
  for (bool hit : seen) CHECK(hit);
}
