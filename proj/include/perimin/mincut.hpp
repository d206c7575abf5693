#pragma once

// Exact integer min-cut / max-flow on a vertex set augmented with implicit
// source and sink terminals.  Callers attach a source capacity and/or a sink
// capacity to individual vertices plus pairwise directed capacities, then
// solve() returns the minimum total capacity separating source attachments
// from sink attachments together with BOTH extreme minimizers of the cut
// lattice (the minimal and the maximal source side).  An "infinite" capacity
// is a sentinel replaced internally by 1 + (sum of all finite capacities), so
// it is never part of any optimal cut unless the instance is infeasible.
//
// The solver is Dinic's algorithm with an iterative blocking-flow phase; all
// arithmetic is int64 with overflow checks, and solve() re-derives the value
// of both returned cuts from the original capacities, throwing InternalError
// on any mismatch.

#include <limits>
#include <vector>

#include "perimin/scaled.hpp"
#include "perimin/vertex_set.hpp"

namespace perimin {

constexpr i64 kInfiniteCap = std::numeric_limits<i64>::max();

struct CutResult {
  i64 value = 0;
  bool feasible = true;        ///< false when only infinite cuts exist
  VertexSet min_source_side;   ///< intersection of all minimum cuts' source sides
  VertexSet max_source_side;   ///< union of all minimum cuts' source sides
};

class FlowNetwork {
 public:
  explicit FlowNetwork(u32 n) : n_(n), src_(n, 0), snk_(n, 0) {}

  u32 size() const { return n_; }

  /// Directed capacities between two vertices (both at once so undirected
  /// edges cost one call).  Capacities accumulate across calls.
  void add_pairwise(u32 u, u32 v, i64 cap_uv, i64 cap_vu);

  /// Attach source capacity to v (kInfiniteCap clamps v to the source side).
  void add_source(u32 v, i64 cap);

  /// Attach sink capacity to v (kInfiniteCap clamps v to the sink side).
  void add_sink(u32 v, i64 cap);

  /// Solves and invalidates the network (one-shot).
  CutResult solve();

 private:
  struct Pairwise {
    u32 u, v;
    i64 cap_uv, cap_vu;
  };

  void check_vertex(u32 v) const {
    if (v >= n_) throw InputError("flow network vertex out of range");
  }
  static i64 sat_add(i64 a, i64 b);

  u32 n_;
  std::vector<i64> src_, snk_;
  std::vector<Pairwise> pairs_;
  bool solved_ = false;
};

}  // namespace perimin
