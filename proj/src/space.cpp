#include "perimin/space.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace perimin {

i64 Space::measure_of(const VertexSet& a) const {
  if (a.universe_size() != n) throw InputError("set does not belong to this space");
  i128 total = 0;
  a.for_each([&](u32 v) { total += measure[v]; });
  return checked_narrow(total, "measure sum");
}

SpaceBuilder::SpaceBuilder(i64 scale) : scale_(scale) {
  if (scale <= 0) throw InputError("capacity scale must be positive");
}

u32 SpaceBuilder::add_vertex(i64 measure) {
  if (measure < 0) throw InputError("negative vertex measure");
  measure_.push_back(measure);
  if (has_coords_) {
    chart_.push_back(0);
    col_.push_back(0);
    row_.push_back(0);
  }
  return static_cast<u32>(measure_.size() - 1);
}

void SpaceBuilder::reserve(u32 vertices, size_t edges) {
  measure_.reserve(vertices);
  edge_u_.reserve(edges);
  edge_v_.reserve(edges);
  edge_cap_.reserve(edges);
}

void SpaceBuilder::set_measure(u32 v, i64 measure) {
  if (v >= measure_.size()) throw InputError("vertex id out of range");
  if (measure < 0) throw InputError("negative vertex measure");
  measure_[v] = measure;
}

void SpaceBuilder::bump_measure(u32 v, i64 delta) {
  if (v >= measure_.size()) throw InputError("vertex id out of range");
  i64 next = checked_add(measure_[v], delta, "vertex measure");
  if (next < 0) throw InputError("negative vertex measure");
  measure_[v] = next;
}

void SpaceBuilder::add_edge(u32 u, u32 v, i64 cap, i64 len) {
  if (u >= measure_.size() || v >= measure_.size()) throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self loop");
  if (cap < 0) throw InputError("negative edge capacity");
  if (len <= 0) throw InputError("edge length must be positive");
  if (u > v) std::swap(u, v);
  edge_u_.push_back(u);
  edge_v_.push_back(v);
  edge_cap_.push_back(cap);
  edge_len_.push_back(len);
}

void SpaceBuilder::set_coords(u32 v, std::uint16_t chart, u32 col, u32 row) {
  if (v >= measure_.size()) throw InputError("vertex id out of range");
  if (!has_coords_) {
    has_coords_ = true;
    chart_.assign(measure_.size(), 0);
    col_.assign(measure_.size(), 0);
    row_.assign(measure_.size(), 0);
  }
  chart_[v] = chart;
  col_[v] = col;
  row_[v] = row;
}

Space SpaceBuilder::finalize(bool check_duplicates) {
  Space s;
  s.scale = scale_;
  s.n = static_cast<u32>(measure_.size());
  s.measure = std::move(measure_);
  s.edge_u = std::move(edge_u_);
  s.edge_v = std::move(edge_v_);
  s.edge_cap = std::move(edge_cap_);

  const size_t m = s.edge_u.size();

  bool uniform = true;
  for (size_t e = 1; e < m; ++e) {
    if (edge_len_[e] != edge_len_[0]) {
      uniform = false;
      break;
    }
  }
  if (uniform) {
    s.uniform_len = m > 0 ? edge_len_[0] : 0;
    s.edge_len.clear();
    edge_len_.clear();
  } else {
    s.edge_len = std::move(edge_len_);
  }

  if (check_duplicates && m > 0) {
    std::vector<size_t> order(m);
    for (size_t e = 0; e < m; ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (s.edge_u[a] != s.edge_u[b]) return s.edge_u[a] < s.edge_u[b];
      return s.edge_v[a] < s.edge_v[b];
    });
    for (size_t i = 1; i < m; ++i) {
      if (s.edge_u[order[i]] == s.edge_u[order[i - 1]] &&
          s.edge_v[order[i]] == s.edge_v[order[i - 1]]) {
        throw InputError("duplicate edge between vertices " + std::to_string(s.edge_u[order[i]]) +
                         " and " + std::to_string(s.edge_v[order[i]]));
      }
    }
  }

  // CSR adjacency.
  s.adj_off.assign(static_cast<size_t>(s.n) + 1, 0);
  for (size_t e = 0; e < m; ++e) {
    ++s.adj_off[s.edge_u[e] + 1];
    ++s.adj_off[s.edge_v[e] + 1];
  }
  for (u32 v = 0; v < s.n; ++v) s.adj_off[v + 1] += s.adj_off[v];
  s.adj_nbr.resize(2 * m);
  s.adj_eid.resize(2 * m);
  std::vector<u32> cursor(s.adj_off.begin(), s.adj_off.end() - 1);
  for (size_t e = 0; e < m; ++e) {
    u32 u = s.edge_u[e], v = s.edge_v[e];
    s.adj_nbr[cursor[u]] = v;
    s.adj_eid[cursor[u]++] = static_cast<u32>(e);
    s.adj_nbr[cursor[v]] = u;
    s.adj_eid[cursor[v]++] = static_cast<u32>(e);
  }

  if (has_coords_) {
    s.has_coords = true;
    s.chart = std::move(chart_);
    s.col = std::move(col_);
    s.row = std::move(row_);
  }

  i128 total = 0;
  for (i64 mv : s.measure) total += mv;
  s.total_measure = checked_narrow(total, "total measure");
  return s;
}

Space build_grid(const GridSpec& spec, i64 scale) {
  if (spec.cols == 0 || spec.rows == 0) throw InputError("grid must have positive extent");
  if (spec.h_num <= 0 || spec.h_den <= 0) throw InputError("grid cell size must be positive");

  const u64 n64 = static_cast<u64>(spec.cols) * spec.rows;
  if (n64 > (u32{1} << 31)) throw InputError("grid too large");

  SpaceBuilder b(scale);
  const u32 cols = spec.cols, rows = spec.rows;
  b.reserve(static_cast<u32>(n64), 2 * n64);

  // h and h^2 in scaled units; densities are scaled, so measure = d * h^2 / scale
  // and capacity = (d_u + d_v)/2 * h / scale, both checked for exactness.
  const i64 h_scaled = exact_mul_div(scale, spec.h_num, spec.h_den, "grid cell size");

  auto density = [&](u32 c, u32 r) -> i64 {
    i64 d = spec.density ? spec.density(c, r) : scale;
    if (d < 0) throw InputError("negative density");
    return d;
  };

  for (u32 r = 0; r < rows; ++r) {
    for (u32 c = 0; c < cols; ++c) {
      i64 d = density(c, r);
      i64 m1 = exact_mul_div(d, h_scaled, scale, "cell measure");        // d * h
      i64 m2 = exact_mul_div(m1, h_scaled, scale, "cell measure");       // d * h^2
      u32 id = b.add_vertex(m2);
      if (spec.with_coords) b.set_coords(id, spec.chart_id, c, r);
    }
  }
  for (u32 r = 0; r < rows; ++r) {
    for (u32 c = 0; c < cols; ++c) {
      u32 id = r * cols + c;
      if (c + 1 < cols) {
        i64 mean2 = checked_add(density(c, r), density(c + 1, r), "edge capacity");
        i64 cap = exact_mul_div(mean2, h_scaled, 2 * scale, "edge capacity");
        b.add_edge(id, id + 1, cap, h_scaled);
      }
      if (r + 1 < rows) {
        i64 mean2 = checked_add(density(c, r), density(c, r + 1), "edge capacity");
        i64 cap = exact_mul_div(mean2, h_scaled, 2 * scale, "edge capacity");
        b.add_edge(id, id + cols, cap, h_scaled);
      }
    }
  }
  return b.finalize(/*check_duplicates=*/false);
}

GlueResult glue(const std::vector<const Space*>& spaces, const std::vector<GlueGroup>& groups) {
  if (spaces.empty()) throw InputError("glue of zero spaces");
  const i64 scale = spaces[0]->scale;
  for (const Space* s : spaces) {
    if (s->scale != scale) throw InputError("glued spaces must share one capacity scale");
  }

  // Assign glued ids: union-find-free because groups are required disjoint.
  GlueResult out;
  out.remap.resize(spaces.size());
  std::vector<std::vector<i64>> group_of(spaces.size());
  for (size_t i = 0; i < spaces.size(); ++i) {
    group_of[i].assign(spaces[i]->n, -1);
    out.remap[i].assign(spaces[i]->n, 0);
  }
  for (size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].members.size() < 2) throw InputError("glue group needs at least two members");
    for (auto [si, v] : groups[g].members) {
      if (si >= spaces.size() || v >= spaces[si]->n) throw InputError("glue member out of range");
      if (group_of[si][v] != -1) throw InputError("vertex appears in two glue groups");
      group_of[si][v] = static_cast<i64>(g);
    }
  }

  u32 next_id = 0;
  std::vector<u32> group_id(groups.size(), 0);
  std::vector<bool> group_seen(groups.size(), false);
  for (size_t i = 0; i < spaces.size(); ++i) {
    for (u32 v = 0; v < spaces[i]->n; ++v) {
      i64 g = group_of[i][v];
      if (g < 0) {
        out.remap[i][v] = next_id++;
      } else if (!group_seen[g]) {
        group_seen[g] = true;
        group_id[g] = next_id;
        out.remap[i][v] = next_id++;
      } else {
        out.remap[i][v] = group_id[g];
      }
    }
  }

  SpaceBuilder b(scale);
  size_t total_edges = 0;
  for (const Space* s : spaces) total_edges += s->edge_count();
  b.reserve(next_id, total_edges);
  for (u32 v = 0; v < next_id; ++v) b.add_vertex(0);

  bool coords = true;
  for (const Space* s : spaces) coords = coords && s->has_coords;

  for (size_t i = 0; i < spaces.size(); ++i) {
    const Space& s = *spaces[i];
    for (u32 v = 0; v < s.n; ++v) {
      u32 id = out.remap[i][v];
      b.bump_measure(id, s.measure[v]);
      if (coords) b.set_coords(id, s.chart[v], s.col[v], s.row[v]);
    }
  }

  // Collect remapped edges, then merge parallels.
  struct E {
    u32 u, v;
    i64 cap, len;
  };
  std::vector<E> edges;
  edges.reserve(total_edges);
  for (size_t i = 0; i < spaces.size(); ++i) {
    const Space& s = *spaces[i];
    for (size_t e = 0; e < s.edge_count(); ++e) {
      u32 u = out.remap[i][s.edge_u[e]];
      u32 v = out.remap[i][s.edge_v[e]];
      if (u == v) throw InputError("gluing creates a self loop");
      if (u > v) std::swap(u, v);
      edges.push_back(E{u, v, s.edge_cap[e], s.length(e)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const E& a, const E& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  for (size_t e = 0; e < edges.size();) {
    size_t f = e;
    i64 cap = 0, len = edges[e].len;
    while (f < edges.size() && edges[f].u == edges[e].u && edges[f].v == edges[e].v) {
      cap = checked_add(cap, edges[f].cap, "merged edge capacity");
      len = std::min(len, edges[f].len);
      ++f;
    }
    b.add_edge(edges[e].u, edges[e].v, cap, len);
    e = f;
  }
  out.space = b.finalize(/*check_duplicates=*/false);
  return out;
}

void add_atom(Space& s, u32 v, i64 mass) {
  if (v >= s.n) throw InputError("atom vertex out of range");
  if (mass < 0) throw InputError("negative atom mass");
  s.measure[v] = checked_add(s.measure[v], mass, "vertex measure");
  s.total_measure = checked_add(s.total_measure, mass, "total measure");
}

namespace {

std::vector<i64> bfs_distance(const Space& s, const VertexSet& sources, const VertexSet* within) {
  std::vector<i64> dist(s.n, kUnreachable);
  std::vector<u32> queue;
  queue.reserve(s.n);
  sources.for_each([&](u32 v) {
    dist[v] = 0;
    queue.push_back(v);
  });
  const i64 step = s.uniform_len;
  size_t head = 0;
  while (head < queue.size()) {
    u32 u = queue[head++];
    i64 du = dist[u];
    for (u32 k = s.adj_off[u]; k < s.adj_off[u + 1]; ++k) {
      u32 v = s.adj_nbr[k];
      if (dist[v] != kUnreachable) continue;
      if (within && !within->contains(v)) continue;
      dist[v] = du + step;
      queue.push_back(v);
    }
  }
  return dist;
}

std::vector<i64> dijkstra_distance(const Space& s, const VertexSet& sources,
                                   const VertexSet* within) {
  std::vector<i64> dist(s.n, kUnreachable);
  using Item = std::pair<i64, u32>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  sources.for_each([&](u32 v) {
    dist[v] = 0;
    heap.emplace(0, v);
  });
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du != dist[u]) continue;
    for (u32 k = s.adj_off[u]; k < s.adj_off[u + 1]; ++k) {
      u32 v = s.adj_nbr[k];
      if (within && !within->contains(v)) continue;
      i64 dv = checked_add(du, s.length(s.adj_eid[k]), "path length");
      if (dist[v] == kUnreachable || dv < dist[v]) {
        dist[v] = dv;
        heap.emplace(dv, v);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<i64> graph_distance(const Space& space, const VertexSet& sources,
                                const VertexSet* within) {
  if (sources.universe_size() != space.n) throw InputError("source set does not match space");
  if (within && within->universe_size() != space.n) throw InputError("restriction set does not match space");
  if (space.edge_len.empty()) return bfs_distance(space, sources, within);
  return dijkstra_distance(space, sources, within);
}

VertexSet exterior_boundary(const Space& space, const VertexSet& inside) {
  if (inside.universe_size() != space.n) throw InputError("set does not belong to this space");
  VertexSet out(space.n);
  inside.for_each([&](u32 u) {
    for (u32 k = space.adj_off[u]; k < space.adj_off[u + 1]; ++k) {
      u32 v = space.adj_nbr[k];
      if (!inside.contains(v)) out.insert(v);
    }
  });
  return out;
}

}  // namespace perimin
