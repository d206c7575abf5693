#include "perimin/functional.hpp"

#include <algorithm>

#include "perimin/mincut.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perimin {

namespace {

constexpr size_t kParallelEdgeThreshold = size_t{1} << 20;

// Chunked parallel sum over the edge array.  Each thread owns an __int128
// partial, so the reduction is exact and order-independent.
template <typename PerEdge>
i64 edge_sum(const Space& s, const char* what, PerEdge&& term) {
  const size_t m = s.edge_count();
  i128 total = 0;
#ifdef _OPENMP
  if (m >= kParallelEdgeThreshold) {
    const int threads = omp_get_max_threads();
    std::vector<i128> partial(threads, 0);
#pragma omp parallel
    {
      const int tid = omp_get_thread_num();
      i128 local = 0;
#pragma omp for schedule(static)
      for (std::int64_t e = 0; e < static_cast<std::int64_t>(m); ++e) {
        local += term(static_cast<size_t>(e));
      }
      partial[tid] = local;
    }
    for (i128 p : partial) total += p;
    return checked_narrow(total, what);
  }
#endif
  for (size_t e = 0; e < m; ++e) total += term(e);
  return checked_narrow(total, what);
}

void check_set(const Space& s, const VertexSet& a, const char* what) {
  if (a.universe_size() != s.n) {
    throw InputError(std::string(what) + ": set does not belong to this space");
  }
}

// Perimeter by scanning only edges incident to `a`; cheaper when a is small.
i64 perimeter_incident(const Space& s, const VertexSet& a) {
  i128 total = 0;
  a.for_each([&](u32 u) {
    for (u32 k = s.adj_off[u]; k < s.adj_off[u + 1]; ++k) {
      if (!a.contains(s.adj_nbr[k])) total += s.edge_cap[s.adj_eid[k]];
    }
  });
  return checked_narrow(total, "perimeter");
}

}  // namespace

i64 perimeter(const Space& s, const VertexSet& a) {
  check_set(s, a, "perimeter");
  const u32 cnt = a.count();
  if (cnt == 0) return 0;
  if (static_cast<size_t>(cnt) * 16 < s.edge_count()) return perimeter_incident(s, a);
  return edge_sum(s, "perimeter", [&](size_t e) -> i128 {
    return a.contains(s.edge_u[e]) != a.contains(s.edge_v[e]) ? s.edge_cap[e] : 0;
  });
}

i64 relative_perimeter(const Space& s, const VertexSet& ambient, const VertexSet& a) {
  check_set(s, ambient, "relative perimeter");
  check_set(s, a, "relative perimeter");
  if (!a.is_subset_of(ambient)) {
    throw InputError("relative perimeter: set is not contained in the ambient set");
  }
  const u32 cnt = a.count();
  if (cnt == 0) return 0;
  if (static_cast<size_t>(cnt) * 16 < s.edge_count()) {
    i128 total = 0;
    a.for_each([&](u32 u) {
      for (u32 k = s.adj_off[u]; k < s.adj_off[u + 1]; ++k) {
        u32 v = s.adj_nbr[k];
        if (!a.contains(v) && ambient.contains(v)) total += s.edge_cap[s.adj_eid[k]];
      }
    });
    return checked_narrow(total, "relative perimeter");
  }
  return edge_sum(s, "relative perimeter", [&](size_t e) -> i128 {
    u32 u = s.edge_u[e], v = s.edge_v[e];
    if (!ambient.contains(u) || !ambient.contains(v)) return 0;
    return a.contains(u) != a.contains(v) ? s.edge_cap[e] : 0;
  });
}

i64 total_variation(const Space& s, const std::vector<i64>& f) {
  if (f.size() != s.n) throw InputError("total variation: function size mismatch");
  return edge_sum(s, "total variation", [&](size_t e) -> i128 {
    i128 d = static_cast<i128>(f[s.edge_u[e]]) - f[s.edge_v[e]];
    if (d < 0) d = -d;
    return static_cast<i128>(s.edge_cap[e]) * d;
  });
}

std::vector<std::pair<i64, i64>> coarea_profile(const Space& s, const std::vector<i64>& f) {
  if (f.size() != s.n) throw InputError("coarea profile: function size mismatch");
  std::vector<i64> values(f);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::pair<i64, i64>> profile;
  if (values.size() < 2) return profile;
  profile.reserve(values.size() - 1);
  VertexSet super(s.n);
  // Walk thresholds downward so the superlevel set only ever grows.
  std::vector<u32> order(s.n);
  for (u32 v = 0; v < s.n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](u32 x, u32 y) { return f[x] > f[y]; });
  size_t next = 0;
  for (size_t i = values.size() - 1; i > 0; --i) {
    i64 t = values[i - 1];
    while (next < order.size() && f[order[next]] > t) super.insert(order[next++]);
    profile.push_back({t, perimeter(s, super)});
  }
  std::reverse(profile.begin(), profile.end());
  return profile;
}

i64 bv_norm(const Space& s, const VertexSet& ambient, const std::vector<i64>& f) {
  check_set(s, ambient, "bv norm");
  if (f.size() != s.n) throw InputError("bv norm: function size mismatch");
  i128 mass = 0;
  ambient.for_each([&](u32 v) {
    i128 av = f[v] < 0 ? -static_cast<i128>(f[v]) : static_cast<i128>(f[v]);
    mass += static_cast<i128>(s.measure[v]) * av;
  });
  i64 variation = edge_sum(s, "bv norm", [&](size_t e) -> i128 {
    u32 u = s.edge_u[e], v = s.edge_v[e];
    if (!ambient.contains(u) || !ambient.contains(v)) return 0;
    i128 d = static_cast<i128>(f[u]) - f[v];
    if (d < 0) d = -d;
    return static_cast<i128>(s.edge_cap[e]) * d;
  });
  return checked_narrow(mass + variation, "bv norm");
}

EssentialCut essential_perimeter(const Space& s, const VertexSet& a) {
  check_set(s, a, "essential perimeter");
  FlowNetwork net(s.n);
  for (size_t e = 0; e < s.edge_count(); ++e) {
    net.add_pairwise(s.edge_u[e], s.edge_v[e], s.edge_cap[e], s.edge_cap[e]);
  }
  for (u32 v = 0; v < s.n; ++v) {
    if (s.measure[v] == 0) continue;  // null vertices may flip freely
    if (a.contains(v)) {
      net.add_source(v, kInfiniteCap);
    } else {
      net.add_sink(v, kInfiniteCap);
    }
  }
  CutResult cut = net.solve();
  if (!cut.feasible) throw InternalError("essential perimeter cut is infinite");
  EssentialCut out;
  out.value = cut.value;
  out.representative = std::move(cut.min_source_side);
  return out;
}

namespace reference {

i64 perimeter(const Space& s, const VertexSet& a) {
  if (a.universe_size() != s.n) throw InputError("perimeter: set does not belong to this space");
  i128 total = 0;
  for (size_t e = 0; e < s.edge_count(); ++e) {
    if (a.contains(s.edge_u[e]) != a.contains(s.edge_v[e])) total += s.edge_cap[e];
  }
  return checked_narrow(total, "perimeter");
}

i64 total_variation(const Space& s, const std::vector<i64>& f) {
  if (f.size() != s.n) throw InputError("total variation: function size mismatch");
  i128 total = 0;
  for (size_t e = 0; e < s.edge_count(); ++e) {
    i64 fu = f[s.edge_u[e]], fv = f[s.edge_v[e]];
    i128 d = static_cast<i128>(fu) - fv;
    if (d < 0) d = -d;
    total += static_cast<i128>(s.edge_cap[e]) * d;
  }
  return checked_narrow(total, "total variation");
}

}  // namespace reference

}  // namespace perimin
