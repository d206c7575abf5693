#include "doctest.h"

#include "oracle.hpp"
#include "perimin/minimize.hpp"

using namespace perimin;

namespace {

const i64 S = i64{1} << 16;

Space random_space(Rng& rng, u32 max_side) {
  GridSpec spec;
  spec.cols = 2 + static_cast<u32>(rng.below(max_side - 1));
  spec.rows = 2 + static_cast<u32>(rng.below(max_side - 1));
  std::vector<i64> density(static_cast<size_t>(spec.cols) * spec.rows);
  for (i64& d : density) d = static_cast<i64>(rng.below(4)) * (S / 4);
  const u32 cols = spec.cols;
  spec.density = [density = std::move(density), cols](u32 c, u32 r) {
    return density[static_cast<size_t>(r) * cols + c];
  };
  return build_grid(spec, S);
}

VertexSet random_subset(const VertexSet& within, Rng& rng) {
  VertexSet out(within.universe_size());
  within.for_each([&](u32 v) {
    if (rng.next() & 1) out.insert(v);
  });
  return out;
}

}  // namespace

TEST_CASE("variant names round-trip") {
  CHECK(variant_name(Variant::kInsideOnly) == "inside");
  CHECK(variant_name(Variant::kSymmetricDifference) == "symdiff");
  CHECK(variant_from_name("inside") == Variant::kInsideOnly);
  CHECK(variant_from_name("symdiff") == Variant::kSymmetricDifference);
  CHECK_THROWS_AS(variant_from_name("both"), InputError);
}

TEST_CASE("the energy splits into perimeter plus weighted deficit") {
  GridSpec spec;
  spec.cols = 3;
  spec.rows = 1;
  Space s = build_grid(spec, S);  // measures S, caps S
  VertexSet omega = VertexSet::of(3, {0, 1});
  Fraction lambda{3, 2};

  // inside variant: candidate {0}: perimeter S, uncovered mass S
  ExactValue inside = evaluate(s, omega, Variant::kInsideOnly, VertexSet::of(3, {0}), lambda);
  CHECK(inside.num == S * 2 + 3 * S);  // (1 + 3/2) * 2  at den = 2 S
  CHECK(inside.den == 2 * S);

  // symdiff variant: candidate {0, 2}: perimeter 2 S, symmetric difference {1, 2}
  ExactValue sym =
      evaluate(s, omega, Variant::kSymmetricDifference, VertexSet::of(3, {0, 2}), lambda);
  CHECK(sym.num == 2 * S * 2 + 3 * 2 * S);
  CHECK(sym.den == 2 * S);

  CHECK_THROWS_AS(evaluate(s, omega, Variant::kInsideOnly, VertexSet::of(3, {2}), lambda),
                  InputError);
  CHECK_THROWS_AS(evaluate(s, omega, Variant::kInsideOnly, omega, Fraction{-1, 1}), InputError);
}

TEST_CASE("minimization matches exhaustive search on both variants") {
  Rng rng(101);
  const Fraction lambdas[] = {{1, 4}, {1, 1}, {5, 2}, {8, 1}};
  for (int round = 0; round < 60; ++round) {
    Space s = random_space(rng, 4);
    if (s.n > 12) continue;
    VertexSet omega = random_subset(VertexSet::full(s.n), rng);
    Fraction lambda = lambdas[rng.below(4)];
    for (Variant variant : {Variant::kInsideOnly, Variant::kSymmetricDifference}) {
      oracle::BruteMinimum expected = oracle::brute_minimize(s, omega, variant, lambda);
      MinimizeResult got = minimize(s, omega, variant, lambda);
      CHECK(got.value.num == expected.value.num);
      CHECK(got.value.den == expected.value.den);
      CHECK(got.minimal == expected.minimal);
      CHECK(got.maximal == expected.maximal);
    }
  }
}

TEST_CASE("inside minimizers never leave the domain") {
  Rng rng(303);
  for (int round = 0; round < 20; ++round) {
    Space s = random_space(rng, 6);
    VertexSet omega = random_subset(VertexSet::full(s.n), rng);
    MinimizeResult res = minimize(s, omega, Variant::kInsideOnly, Fraction{2, 1});
    CHECK(res.minimal.is_subset_of(omega));
    CHECK(res.maximal.is_subset_of(omega));
    CHECK(res.minimal.is_subset_of(res.maximal));
  }
}

TEST_CASE("sweeps demand increasing lambdas and produce nested chains") {
  Rng seed_rng(7);
  Space s = random_space(seed_rng, 5);
  VertexSet omega = VertexSet::full(s.n);
  CHECK_THROWS_AS(sweep(s, omega, Variant::kInsideOnly, {Fraction{1, 1}, Fraction{1, 2}}),
                  InputError);
  CHECK_THROWS_AS(sweep(s, omega, Variant::kInsideOnly, {}), InputError);

  // Inside the domain a growing lambda only strengthens the pull toward
  // Omega, so the optimal sets form chains.
  Rng rng(47);
  for (int round = 0; round < 15; ++round) {
    Space r = random_space(rng, 5);
    VertexSet om = random_subset(VertexSet::full(r.n), rng);
    SweepResult sw = sweep(r, om, Variant::kInsideOnly,
                           {Fraction{1, 8}, Fraction{1, 2}, Fraction{2, 1}, Fraction{16, 1}});
    CHECK(sw.nested);
    CHECK(sweep_concave(sw));
    for (size_t i = 1; i < sw.entries.size(); ++i) {
      CHECK(sw.entries[i - 1].result.minimal.is_subset_of(sw.entries[i].result.minimal));
      CHECK(sw.entries[i - 1].result.maximal.is_subset_of(sw.entries[i].result.maximal));
    }
  }
}

TEST_CASE("symmetric difference sweeps stay concave and report nesting honestly") {
  // Outside the domain a growing lambda pushes vertices out of the optimum,
  // so chains can break; the sweep must report that instead of assuming it.
  Rng rng(48);
  for (int round = 0; round < 15; ++round) {
    Space r = random_space(rng, 5);
    VertexSet om = random_subset(VertexSet::full(r.n), rng);
    SweepResult sw = sweep(r, om, Variant::kSymmetricDifference,
                           {Fraction{1, 8}, Fraction{1, 2}, Fraction{2, 1}, Fraction{16, 1}});
    CHECK(sweep_concave(sw));
    bool chains = true;
    for (size_t i = 1; i < sw.entries.size(); ++i) {
      chains = chains && sw.entries[i - 1].result.minimal.is_subset_of(sw.entries[i].result.minimal);
      chains = chains && sw.entries[i - 1].result.maximal.is_subset_of(sw.entries[i].result.maximal);
    }
    CHECK(sw.nested == chains);
  }
}

TEST_CASE("lambda estimation on a padded strip finds the documented layers") {
  GridSpec spec;
  spec.cols = 18;
  spec.rows = 34;
  Space s = build_grid(spec, S);
  VertexSet omega(s.n);
  for (u32 r = 1; r <= 32; ++r) {
    for (u32 c = 1; c <= 16; ++c) omega.insert(r * 18 + c);
  }
  REQUIRE(omega.count() == 512);

  LambdaEstimate est = estimate_lambda(s, omega, 506 * S);
  CHECK(est.radius == 4 * S);
  CHECK(est.ball_measure == 252 * S);
  CHECK(est.lambda == Fraction{(i64{1} << 14) + 1, i64{1} << 16});
  CHECK(est.bound == Fraction{63, 1});
  CHECK(est.certificate == 0);  // the empty first layer cuts nothing
  REQUIRE(est.layers.size() == 4);
  CHECK(est.layers[0].layer_measure == 0);
  CHECK(est.layers[1].layer_measure == 92 * S);
  CHECK(est.layers[2].layer_measure == 176 * S);
  CHECK(est.layers[3].layer_measure == 252 * S);
  CHECK(est.layers[0].cut == 0);
  CHECK(est.layers[1].cut == 88 * S);
  CHECK(est.layers[2].cut == 80 * S);
  CHECK(est.layers[3].cut == 72 * S);

  // One step deeper and the doubled layer mass crosses the target.
  LambdaEstimate tighter = estimate_lambda(s, omega, 504 * S);
  CHECK(tighter.radius == 3 * S);

  CHECK_THROWS_AS(estimate_lambda(s, omega, 0), InputError);
  CHECK_THROWS_AS(estimate_lambda(s, VertexSet(s.n), S), ScaleError);
  CHECK_THROWS_AS(estimate_lambda(s, VertexSet::full(s.n), S), ScaleError);
}

TEST_CASE("the best extension matches exhaustive search") {
  Rng rng(505);
  for (int round = 0; round < 40; ++round) {
    Space s = random_space(rng, 4);
    if (s.n > 14) continue;
    VertexSet omega = random_subset(VertexSet::full(s.n), rng);
    VertexSet a = random_subset(omega, rng);
    ExtensionResult got = best_extension(s, omega, a);
    CHECK(got.value.num == oracle::brute_best_extension(s, omega, a));
    CHECK(got.value.den == s.scale);
    // the reported set must attain the reported value and restrict to a
    CHECK(s.measure_of(got.extension) + perimeter(s, got.extension) == got.value.num);
    CHECK((got.extension & omega) == a);
  }

  Space s = random_space(rng, 3);
  VertexSet omega = VertexSet::of(s.n, {0});
  CHECK_THROWS_AS(best_extension(s, omega, VertexSet::of(s.n, {1})), InputError);
}
