#pragma once

// The perimeter-type functionals.  Everything here is an exact integer sum
// in scaled units; the parallel kernels and their serial reference twins are
// required to agree bit for bit (integer reductions are associative), which
// the test suite checks.

#include <utility>
#include <vector>

#include "perimin/space.hpp"
#include "perimin/vertex_set.hpp"

namespace perimin {

/// Sum of capacities of edges with exactly one endpoint in `a`.
i64 perimeter(const Space& s, const VertexSet& a);

/// Perimeter of `a` relative to `ambient`: only edges with both endpoints in
/// `ambient` count.  Requires a to be a subset of ambient.
i64 relative_perimeter(const Space& s, const VertexSet& ambient, const VertexSet& a);

/// Sum over edges of capacity * |f(u) - f(v)|.  f is an arbitrary integer
/// vertex function in caller units; the result is scaled * caller units.
i64 total_variation(const Space& s, const std::vector<i64>& f);

/// Sorted distinct values t of f paired with the perimeter of the strict
/// superlevel set {f > t}, for every distinct value except the largest
/// (whose superlevel set is empty).  Constant functions give an empty
/// profile.  Summing (t_{i+1} - t_i) * perimeter entries reproduces
/// total_variation exactly.
std::vector<std::pair<i64, i64>> coarea_profile(const Space& s, const std::vector<i64>& f);

/// Integral norm plus variation of f restricted to `ambient`:
/// sum of measure(v) * |f(v)| over v in ambient, plus capacity * |f(u) - f(v)|
/// over edges with both endpoints in ambient.
i64 bv_norm(const Space& s, const VertexSet& ambient, const std::vector<i64>& f);

struct EssentialCut {
  i64 value = 0;
  VertexSet representative;  ///< a set attaining the value; differs from the
                             ///< input only on measure-zero vertices
};

/// Minimum perimeter over all sets that agree with `a` on every vertex of
/// positive measure (vertices of measure zero may flip freely).  Computed as
/// an exact min-cut with positive-measure vertices clamped to their side.
EssentialCut essential_perimeter(const Space& s, const VertexSet& a);

namespace reference {

/// Plain serial implementations, kept as the comparison baseline for the
/// parallel kernels above.
i64 perimeter(const Space& s, const VertexSet& a);
i64 total_variation(const Space& s, const std::vector<i64>& f);

}  // namespace reference

}  // namespace perimin
