#pragma once

// Probing machinery around minimizers.
//
// For a global minimizer G at penalty lambda, two facts hold for every
// subset A of G and are checked here by randomized probing with exact
// integer arithmetic:
//
//   perimeter bound:   Per(A) <= 2 * Per_G(A) + lambda * measure(A)
//   norm ratio bound:  (measure(A) + Per(A)) / (measure(A) + Per_G(A))
//                        <= max(2, lambda + 1)
//
// where Per_G is the perimeter relative to G.  Violations on sets that came
// from the exact minimizer indicate a broken solver, not an unlucky sample.

#include <vector>

#include "perimin/minimize.hpp"
#include "perimin/space.hpp"
#include "perimin/vertex_set.hpp"

namespace perimin {

/// A random nonempty connected subset of `within`, grown by breadth-first
/// exploration from a random seed vertex with random frontier pruning.
VertexSet sample_connected_subset(const Space& s, const VertexSet& within, Rng& rng,
                                  u32 max_size);

/// A random Bernoulli(p) subset of `within` with p itself drawn uniformly.
/// May be empty.
VertexSet sample_bernoulli_subset(const Space& s, const VertexSet& within, Rng& rng);

struct ProbeReport {
  u64 probes = 0;
  u64 violations = 0;        ///< probes violating either bound
  double worst_perimeter_ratio = 0.0;  ///< max Per(A) / (2 Per_G(A) + lambda m(A))
  double worst_norm_ratio = 0.0;       ///< max (m+Per) / (m+Per_G)
  u32 worst_size = 0;        ///< size of the probe attaining the worst ratio
};

/// Samples `probes` subsets of g (alternating connected and Bernoulli draws)
/// and checks both bounds exactly.  Degenerate probes (empty, or with zero
/// mass and zero relative perimeter) are redrawn.
ProbeReport check_extension_inequality(const Space& s, const VertexSet& g, Fraction lambda,
                                       u64 probes, u64 seed);

struct NormRatio {
  i64 num = 0;  ///< measure(A) + Per(A), scaled
  i64 den = 0;  ///< measure(A) + Per_G(A), scaled
  double ratio() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// The zero-extension ratio of one set: total mass-plus-perimeter against its
/// in-domain counterpart.  Throws InputError when the denominator vanishes.
NormRatio zero_extension_norm_ratio(const Space& s, const VertexSet& g, const VertexSet& a);

struct WitnessRatio {
  ExactValue extension_value;  ///< best achievable measure + perimeter over traces
  i64 base_num = 0;            ///< measure(A) + Per_Omega(A), same scale as the numerator
  double ratio() const { return static_cast<double>(extension_value.num) / static_cast<double>(base_num); }
};

/// For each set of the family (all inside omega), compares the best extension
/// value against the in-domain mass-plus-relative-perimeter.  Ratios that grow
/// along the family witness that no bounded extension operator exists.
std::vector<WitnessRatio> non_extension_witness(const Space& s, const VertexSet& omega,
                                                const std::vector<VertexSet>& family);

}  // namespace perimin
