#pragma once

// Minimization of the penalized perimeter energies over subsets of a space.
//
// Two variants of the energy at parameter lambda >= 0, for a domain Omega:
//   inside only:          Per(A) + lambda * measure(Omega \ A),  A inside Omega
//   symmetric difference: Per(A) + lambda * measure(Omega xor A), A anywhere
//
// Both are submodular cut energies, so exact global minimizers come from one
// max-flow computation; minimize() returns the minimal and the maximal
// optimal set (the optimal sets form a lattice).  Values are exact rationals:
// with lambda = p/q and capacity scale S, every energy is num / (S * q).

#include <string>
#include <vector>

#include "perimin/space.hpp"
#include "perimin/vertex_set.hpp"

namespace perimin {

enum class Variant { kInsideOnly, kSymmetricDifference };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct ExactValue {
  i64 num = 0;
  i64 den = 1;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  Fraction reduced() const { return Fraction::make(num, den); }
};

/// Energy of one candidate set, computed by direct summation.
ExactValue evaluate(const Space& s, const VertexSet& omega, Variant variant,
                    const VertexSet& a, Fraction lambda);

struct MinimizeResult {
  ExactValue value;
  VertexSet minimal;  ///< intersection of all optimal sets
  VertexSet maximal;  ///< union of all optimal sets
};

/// Exact global minimum.  Self-checks that both returned sets evaluate to the
/// reported value (InternalError otherwise).
MinimizeResult minimize(const Space& s, const VertexSet& omega, Variant variant,
                        Fraction lambda);

struct SweepEntry {
  Fraction lambda;
  MinimizeResult result;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  bool nested = true;  ///< minimal and maximal chains both nondecreasing
};

/// Minimizes at each lambda of a strictly increasing list and reports whether
/// the optimal sets are nested along the sweep.
SweepResult sweep(const Space& s, const VertexSet& omega, Variant variant,
                  const std::vector<Fraction>& lambdas);

/// Exact concavity test of the optimal value as a function of lambda:
/// difference quotients must be nonincreasing.  (The optimum is a pointwise
/// minimum of affine functions of lambda, so this must always hold.)
bool sweep_concave(const SweepResult& sweep);

struct LayerCut {
  i64 radius = 0;         ///< level s, scaled length units
  i64 layer_measure = 0;  ///< measure of {v in Omega : dist(v) < s}
  i64 cut = 0;            ///< relative perimeter of Omega minus that layer
};

struct LambdaEstimate {
  Fraction lambda;        ///< a fraction just above 1 / radius
  i64 radius = 0;         ///< r*: largest level with thin boundary layer, scaled
  i64 ball_measure = 0;   ///< measure of the boundary layer below r*
  i64 certificate = 0;    ///< smallest level-cut capacity among the layers
  Fraction bound;         ///< ball_measure / radius, the certified ceiling
  std::vector<LayerCut> layers;
};

/// Picks the penalty strength for a target mass deficit: finds the largest
/// boundary-distance level r whose strict layer {dist < r} has measure below
/// epsilon / 2, returns a lambda just above 1 / r, and certifies that some
/// level cut below r separates a near-full subset at relative perimeter at
/// most ball_measure / radius.  Throws ScaleError when the domain or its
/// boundary is empty (nothing to estimate at this resolution).
LambdaEstimate estimate_lambda(const Space& s, const VertexSet& omega, i64 epsilon_scaled);

struct ExtensionResult {
  ExactValue value;    ///< measure(E) + Per(E) of the best extension, den = scale
  VertexSet extension;
};

/// Over all sets E whose trace on Omega equals a (free outside Omega),
/// minimizes measure(E) + Per(E).  Requires a inside Omega.
ExtensionResult best_extension(const Space& s, const VertexSet& omega, const VertexSet& a);

}  // namespace perimin
