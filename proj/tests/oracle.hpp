#pragma once

// Brute-force oracles the unit tests compare the real algorithms against.
// Everything here is exponential in the number of free vertices and only
// meant for tiny spaces.

#include <functional>
#include <stdexcept>
#include <vector>

#include "perimin/functional.hpp"
#include "perimin/mincut.hpp"
#include "perimin/minimize.hpp"

namespace perimin::oracle {

inline void for_each_subset(const VertexSet& universe,
                            const std::function<void(const VertexSet&)>& fn) {
  std::vector<u32> members = universe.to_vector();
  if (members.size() > 24) throw std::logic_error("oracle universe too large");
  const u64 total = u64{1} << members.size();
  for (u64 mask = 0; mask < total; ++mask) {
    VertexSet set(universe.universe_size());
    for (size_t i = 0; i < members.size(); ++i) {
      if (mask >> i & 1) set.insert(members[i]);
    }
    fn(set);
  }
}

struct BruteMinimum {
  ExactValue value;
  VertexSet minimal, maximal;
};

inline BruteMinimum brute_minimize(const Space& s, const VertexSet& omega, Variant variant,
                                   Fraction lambda) {
  const VertexSet pool = variant == Variant::kInsideOnly ? omega : VertexSet::full(s.n);
  BruteMinimum best{ExactValue{0, 1}, VertexSet(s.n), VertexSet(s.n)};
  bool first = true;
  for_each_subset(pool, [&](const VertexSet& a) {
    ExactValue e = evaluate(s, omega, variant, a, lambda);
    if (first || e.num < best.value.num) {
      best.value = e;
      best.minimal = a;
      best.maximal = a;
      first = false;
    } else if (e.num == best.value.num) {
      best.minimal &= a;
      best.maximal |= a;
    }
  });
  return best;
}

struct PairArc {
  u32 u = 0, v = 0;
  i64 cap_uv = 0, cap_vu = 0;
};

struct BruteCut {
  i64 value = 0;
  bool feasible = false;
  VertexSet minimal, maximal;
};

/// Minimum cut by enumerating every source-side set.  Terminal capacities of
/// kInfiniteCap make candidate sides that cut them infeasible.
inline BruteCut brute_min_cut(u32 n, const std::vector<PairArc>& arcs,
                              const std::vector<i64>& source_cap,
                              const std::vector<i64>& sink_cap) {
  BruteCut best;
  best.minimal = VertexSet(n);
  best.maximal = VertexSet(n);
  bool first = true;
  for_each_subset(VertexSet::full(n), [&](const VertexSet& side) {
    i128 cost = 0;
    bool finite = true;
    for (u32 v = 0; v < n && finite; ++v) {
      i64 c = side.contains(v) ? sink_cap[v] : source_cap[v];
      if (c == kInfiniteCap) {
        finite = false;
      } else {
        cost += c;
      }
    }
    for (const PairArc& a : arcs) {
      if (!finite) break;
      if (side.contains(a.u) && !side.contains(a.v)) cost += a.cap_uv;
      if (side.contains(a.v) && !side.contains(a.u)) cost += a.cap_vu;
    }
    if (!finite) return;
    i64 value = static_cast<i64>(cost);
    if (first || value < best.value) {
      best.value = value;
      best.minimal = side;
      best.maximal = side;
      first = false;
    } else if (value == best.value) {
      best.minimal &= side;
      best.maximal |= side;
    }
  });
  best.feasible = !first;
  return best;
}

/// Minimum of measure(E) + Per(E) over all E agreeing with `a` on omega.
inline i64 brute_best_extension(const Space& s, const VertexSet& omega, const VertexSet& a) {
  i64 best = 0;
  bool first = true;
  for_each_subset(omega.complement(), [&](const VertexSet& outside) {
    VertexSet e = a | outside;
    i64 value = s.measure_of(e) + perimeter(s, e);
    if (first || value < best) {
      best = value;
      first = false;
    }
  });
  return best;
}

/// Minimum perimeter over flips of measure-zero vertices.
inline i64 brute_essential_perimeter(const Space& s, const VertexSet& a) {
  VertexSet nulls(s.n);
  for (u32 v = 0; v < s.n; ++v) {
    if (s.measure[v] == 0) nulls.insert(v);
  }
  i64 best = 0;
  bool first = true;
  for_each_subset(nulls, [&](const VertexSet& flip) {
    i64 value = perimeter(s, a ^ flip);
    if (first || value < best) {
      best = value;
      first = false;
    }
  });
  return best;
}

}  // namespace perimin::oracle
