#include "perimin/scenarios.hpp"

#include <algorithm>

#include "perimin/mincut.hpp"

namespace perimin {

namespace {

bool is_pow2(i64 v) { return v > 0 && (v & (v - 1)) == 0; }

u32 log2_exact(i64 v) {
  u32 e = 0;
  while ((i64{1} << e) < v) ++e;
  return e;
}

// Cell size 1/2^e, validated.
u32 pow2_cell_exponent(Fraction h, u32 max_e, const char* who) {
  if (h.num != 1 || !is_pow2(h.den)) {
    throw InputError(std::string(who) + ": cell size must be 1/2^e");
  }
  u32 e = log2_exact(h.den);
  if (e > max_e) {
    throw ScaleError(std::string(who) + ": cell size finer than 1/2^" + std::to_string(max_e));
  }
  return e;
}

}  // namespace

Scenario make_interval() {
  const i64 S = i64{1} << 16;
  const i64 h = S / 2;
  SpaceBuilder b(S);
  for (u32 i = 0; i < 7; ++i) {
    u32 v = b.add_vertex(i == 3 ? 0 : h);  // middle vertex carries no mass
    b.set_coords(v, 0, i, 0);
  }
  for (u32 i = 0; i < 6; ++i) b.add_edge(i, i + 1, S, h);

  Scenario sc;
  sc.name = "interval";
  sc.space = b.finalize();
  sc.omega = VertexSet::of(7, {1, 2, 3, 4, 5});
  sc.charts.push_back(ChartLayout{0, 7, 1});
  sc.family.push_back({"a", VertexSet::of(7, {1, 2})});
  sc.family.push_back({"b-open", VertexSet::of(7, {1, 2, 4, 5})});
  sc.family.push_back({"b-closed", VertexSet::of(7, {1, 2, 3, 4, 5})});
  return sc;
}

Scenario make_fat_cantor(u32 level) {
  if (level < 1 || level > 12) throw InputError("fat_cantor: level must be 1..12");
  const i64 cells = i64{1} << (2 * level + 2);  // 4^(level+1)
  const i64 S = std::max<i64>(i64{1} << 16, cells);
  const i64 h = S / cells;
  const u32 n = static_cast<u32>(cells) + 2;

  SpaceBuilder b(S);
  b.reserve(n, n - 1);
  for (u32 i = 0; i < n; ++i) {
    u32 v = b.add_vertex(h);
    b.set_coords(v, 0, i, 0);
  }
  for (u32 i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1, S, h);

  // Kept intervals as closed cell-id ranges; cells 1..cells cover [0,1].
  std::vector<std::pair<u32, u32>> intervals{{1, static_cast<u32>(cells)}};
  for (u32 j = 0; j < level; ++j) {
    const i64 gap = i64{1} << (2 * (level - j));  // 4^(level-j) cells
    std::vector<std::pair<u32, u32>> next;
    next.reserve(intervals.size() * 2);
    for (auto [a, bb] : intervals) {
      i64 len = static_cast<i64>(bb) - a + 1;
      i64 keep = (len - gap) / 2;
      if (keep < 1 || (len - gap) % 2 != 0) {
        throw InternalError("fat_cantor: construction does not divide evenly");
      }
      next.push_back({a, static_cast<u32>(a + keep - 1)});
      next.push_back({static_cast<u32>(bb - keep + 1), bb});
    }
    intervals = std::move(next);
  }

  Scenario sc;
  sc.name = "fat_cantor";
  sc.space = b.finalize(/*check_duplicates=*/false);
  sc.omega = VertexSet(n);
  for (auto [a, bb] : intervals) {
    for (u32 v = a; v <= bb; ++v) sc.omega.insert(v);
  }
  sc.segments = std::move(intervals);
  sc.charts.push_back(ChartLayout{0, n, 1});
  return sc;
}

Scenario make_triangles_atoms(u32 n_max, Fraction h) {
  if (n_max < 1 || n_max > 4) throw InputError("triangles_atoms: n_max must be 1..4");
  const u32 e = pow2_cell_exponent(h, 10, "triangles_atoms");
  if (e < 2 * n_max + 2) {
    throw ScaleError("triangles_atoms: cell size too coarse for the smallest triangle");
  }
  const i64 N = i64{1} << e;
  const i64 S = i64{1} << std::max<u32>(24, 3 * e);
  const i64 hS = S >> e;

  // Grid covers x in [-2h, 1+2h], y in [-1-2h, 1/4+2h].
  const u32 cols = static_cast<u32>(N) + 5;
  const u32 rows = static_cast<u32>(N + N / 8) + 5;
  const u32 c0 = 2;                          // column of x = 0
  const u32 r0 = static_cast<u32>(N) + 2;    // row of y = 0

  GridSpec spec;
  spec.cols = cols;
  spec.rows = rows;
  spec.h_num = h.num;
  spec.h_den = h.den;
  spec.with_coords = true;
  spec.density = [&](u32, u32 r) -> i64 {
    i64 j = static_cast<i64>(r) - r0;  // y = j * h
    if (j >= -N && j <= 0) return std::min(-j, j + N) * hS;
    return S;
  };
  Space space = build_grid(spec, S);

  auto vid = [&](u32 col, u32 row) { return row * cols + col; };

  Scenario sc;
  sc.name = "triangles_atoms";
  sc.omega = VertexSet(space.n);

  // Open strip Q: 0 < x < 1, -1 < y < 0.
  for (i64 j = -N + 1; j <= -1; ++j) {
    for (i64 a = 1; a <= N - 1; ++a) {
      sc.omega.insert(vid(c0 + static_cast<u32>(a), r0 + static_cast<u32>(j)));
    }
  }

  // Triangles T_n over base (c_n, 2c_n), sides of slope 1, open except for
  // the base line y = 0 (which carries no mass).
  for (u32 nn = 1; nn <= n_max; ++nn) {
    const i64 m = N >> (2 * nn);
    VertexSet tri(space.n);
    for (i64 j = 0; 2 * j <= m - 2; ++j) {
      for (i64 a = m + j + 1; a <= 2 * m - j - 1; ++a) {
        u32 v = vid(c0 + static_cast<u32>(a), r0 + static_cast<u32>(j));
        tri.insert(v);
        sc.omega.insert(v);
      }
    }
    sc.family.push_back({"triangle-" + std::to_string(nn), std::move(tri)});

    u32 atom = vid(c0 + static_cast<u32>(3 * m / 2), r0);
    add_atom(space, atom, S >> nn);
    sc.atoms.push_back(atom);
  }

  sc.space = std::move(space);
  sc.charts.push_back(ChartLayout{0, cols, rows});
  return sc;
}

Scenario make_tripod(u32 k_max, Fraction h, Fraction height) {
  if (k_max > 5) throw InputError("tripod: k_max must be 0..5");
  const u32 e = pow2_cell_exponent(h, 12, "tripod");
  if (e < 2 * k_max + 2) {
    throw ScaleError("tripod: cell size too coarse for the smallest fan");
  }
  if (!height.is_positive() || frac_cmp(height.num, height.den, 1, 1) > 0) {
    throw InputError("tripod: height must be in (0, 1]");
  }
  const i64 N = i64{1} << e;
  if ((N * height.num) % height.den != 0) {
    throw ScaleError("tripod: height is not a whole number of rows");
  }
  const i64 R64 = N * height.num / height.den;
  if (R64 < N / 4) {
    throw InputError("tripod: height must be at least 1/4 to contain the largest fan");
  }
  const u32 R = static_cast<u32>(R64);
  const i64 S = kDefaultScale;
  const i64 hS = S >> e;
  const i64 h2S = S >> (2 * e);

  const u32 ncols = static_cast<u32>(N) + 1;
  const u32 n = ncols * (1 + 3 * R);
  auto glue_id = [&](i64 i) { return static_cast<u32>(i); };
  auto sheet_id = [&](u32 s, u32 j, i64 i) {
    return ncols * (1 + s * R + (j - 1)) + static_cast<u32>(i);
  };

  // Slit layout along the glue line.  Full-cell slits are column ranges; a
  // slit narrower than one cell is one column with reduced crossing width.
  std::vector<i64> cross_width(ncols, hS);  // per-column glue-crossing width
  std::vector<std::pair<i64, i64>> slit_ranges;
  std::vector<i64> scols_of(k_max + 1, 0);
  for (u32 k = 0; k <= k_max; ++k) {
    const i64 m = N >> (2 * k + 1);
    const i64 width_scaled = S >> (4 * k + 3);
    i64 scols = (e >= 4 * k + 3) ? (N >> (4 * k + 3)) : 0;
    scols_of[k] = scols;
    if (scols >= 1) {
      slit_ranges.push_back({m + 1, m + scols});
      slit_ranges.push_back({2 * m - scols, 2 * m - 1});
    } else {
      slit_ranges.push_back({m + 1, m + 1});
      slit_ranges.push_back({2 * m - 1, 2 * m - 1});
      cross_width[static_cast<u32>(m + 1)] = width_scaled;
      cross_width[static_cast<u32>(2 * m - 1)] = width_scaled;
    }
  }

  SpaceBuilder b(S);
  b.reserve(n, static_cast<size_t>(N) + 3 * (static_cast<size_t>(R) * (2 * N + 1)));

  for (i64 i = 0; i <= N; ++i) {
    u32 v = b.add_vertex(4 * h2S);  // glue line: all three sheets overlap
    b.set_coords(v, 0, static_cast<u32>(i), 0);
  }
  for (u32 s = 0; s < 3; ++s) {
    const i64 w = (s == 0) ? 2 : 1;
    for (u32 j = 1; j <= R; ++j) {
      for (i64 i = 0; i <= N; ++i) {
        u32 v = b.add_vertex(w * h2S);
        b.set_coords(v, static_cast<std::uint16_t>(s), static_cast<u32>(i), j);
      }
    }
  }

  for (i64 i = 0; i < N; ++i) {
    b.add_edge(glue_id(i), glue_id(i + 1), 4 * hS, hS);  // merged glue-line edge
  }
  for (u32 s = 0; s < 3; ++s) {
    const i64 w = (s == 0) ? 2 : 1;
    for (i64 i = 0; i <= N; ++i) {
      b.add_edge(glue_id(i), sheet_id(s, 1, i), w * cross_width[static_cast<u32>(i)], hS);
    }
    for (u32 j = 1; j <= R; ++j) {
      for (i64 i = 0; i < N; ++i) {
        b.add_edge(sheet_id(s, j, i), sheet_id(s, j, i + 1), w * hS, hS);
      }
      if (j < R) {
        for (i64 i = 0; i <= N; ++i) {
          b.add_edge(sheet_id(s, j, i), sheet_id(s, j + 1, i), w * hS, hS);
        }
      }
    }
  }

  Scenario sc;
  sc.name = "tripod";
  sc.space = b.finalize(/*check_duplicates=*/false);
  sc.omega = VertexSet(n);

  // Sheet 0 in full.
  for (u32 j = 1; j <= R; ++j) {
    for (i64 i = 0; i <= N; ++i) sc.omega.insert(sheet_id(0, j, i));
  }
  // Slit columns of the glue line.
  for (auto [a, bb] : slit_ranges) {
    for (i64 i = a; i <= bb; ++i) sc.omega.insert(glue_id(i));
  }
  // Fans on sheet 1 and their miniatures on sheet 2.
  for (u32 k = 0; k <= k_max; ++k) {
    const i64 m = N >> (2 * k + 1);
    VertexSet fan(n);
    for (i64 j = 1; 2 * j <= m; ++j) {
      for (i64 i = m + j; i <= 2 * m - j; ++i) {
        u32 v = sheet_id(1, static_cast<u32>(j), i);
        fan.insert(v);
        sc.omega.insert(v);
      }
    }
    sc.family.push_back({"fan-" + std::to_string(k), std::move(fan)});

    const i64 m2 = scols_of[k];
    for (i64 j = 1; 2 * j <= m2; ++j) {
      for (i64 i = m + j; i <= m + m2 - j; ++i) {
        sc.omega.insert(sheet_id(2, static_cast<u32>(j), i));
      }
    }

    if (m % 4 == 0 && m >= 4) {
      JohnCase jc;
      jc.name = "fan-" + std::to_string(k);
      jc.base = sheet_id(1, static_cast<u32>(m / 4), 3 * m / 2);
      jc.escape_radius = m * hS;  // = c_k in scaled length units
      sc.john.push_back(jc);
    }
  }

  for (u32 s = 0; s < 3; ++s) {
    sc.charts.push_back(ChartLayout{static_cast<std::uint16_t>(s), ncols, R + 1});
  }
  return sc;
}

Scenario make_square(u32 cells, Fraction h, u32 pad, bool with_family) {
  if (cells < 1) throw InputError("square: needs at least one cell");
  if (pad < 1) throw InputError("square: needs at least one ring of exterior padding");
  if (!h.is_positive()) throw InputError("square: cell size must be positive");

  i64 S = checked_mul(h.den, h.den, "capacity scale");
  while (S < (i64{1} << 16)) S *= 2;
  if (S > (i64{1} << 40)) throw ScaleError("square: cell size too fine");

  const u32 total = cells + 2 * pad;
  GridSpec spec;
  spec.cols = total;
  spec.rows = total;
  spec.h_num = h.num;
  spec.h_den = h.den;
  spec.with_coords = true;
  Space space = build_grid(spec, S);
  const i64 hS = exact_mul_div(S, h.num, h.den, "square cell size");

  Scenario sc;
  sc.name = "square";
  sc.omega = VertexSet(space.n);
  auto vid = [&](u32 col, u32 row) { return row * total + col; };
  for (u32 r = pad; r < pad + cells; ++r) {
    for (u32 c = pad; c < pad + cells; ++c) sc.omega.insert(vid(c, r));
  }

  if (with_family) {
    for (u32 k = 0; k <= 2; ++k) {
      const i64 m = static_cast<i64>(cells) >> (2 * k + 1);
      if (m < 2) break;
      VertexSet fan(space.n);
      for (i64 j = 1; 2 * j <= m; ++j) {
        for (i64 i = m + j; i <= 2 * m - j; ++i) {
          fan.insert(vid(pad + static_cast<u32>(i), pad + static_cast<u32>(j)));
        }
      }
      sc.family.push_back({"fan-" + std::to_string(k), std::move(fan)});
    }
  }

  if (cells >= 4) {
    JohnCase jc;
    jc.name = "center";
    jc.base = vid(pad + cells / 2, pad + cells / 2);
    jc.escape_radius = checked_mul(cells / 4, hS, "escape radius");
    sc.john.push_back(jc);
  }

  sc.space = std::move(space);
  sc.charts.push_back(ChartLayout{0, total, total});
  return sc;
}

JohnResult john_probe(const Space& s, const VertexSet& omega, u32 base, i64 escape_radius) {
  if (omega.universe_size() != s.n) throw InputError("domain does not belong to this space");
  if (base >= s.n || !omega.contains(base)) throw InputError("probe base must lie in the domain");
  if (escape_radius <= 0) throw InputError("escape radius must be positive");

  VertexSet boundary = exterior_boundary(s, omega);
  if (boundary.empty()) throw InputError("domain has no exterior boundary");
  std::vector<i64> dist_bd = graph_distance(s, boundary);
  VertexSet source(s.n);
  source.insert(base);
  std::vector<i64> dist_base = graph_distance(s, source, &omega);

  std::vector<u32> order;
  order.reserve(omega.count());
  omega.for_each([&](u32 v) {
    if (dist_base[v] != kUnreachable) order.push_back(v);
  });
  std::sort(order.begin(), order.end(), [&](u32 a, u32 b) {
    if (dist_base[a] != dist_base[b]) return dist_base[a] < dist_base[b];
    return a < b;
  });

  // best[v]: the largest achievable min-over-path clearance ratio among
  // in-domain geodesics base -> v, as an exact fraction.  The base itself is
  // unconstrained (sentinel numerator).
  std::vector<i64> best_num(s.n, -1), best_den(s.n, 1);
  std::vector<u32> parent(s.n, kNoVertex);
  best_num[base] = kInfiniteCap;

  for (u32 v : order) {
    if (v == base) continue;
    const i64 score_num = dist_bd[v];
    const i64 score_den = dist_base[v];
    if (score_num == kUnreachable) {
      throw InputError("domain has vertices the exterior boundary cannot reach");
    }
    for (u32 k = s.adj_off[v]; k < s.adj_off[v + 1]; ++k) {
      u32 u = s.adj_nbr[k];
      if (dist_base[u] == kUnreachable) continue;
      if (dist_base[u] + s.length(s.adj_eid[k]) != dist_base[v]) continue;
      if (best_num[u] < 0) continue;
      // candidate = min(best[u], score(v))
      i64 cnum, cden;
      if (frac_cmp(best_num[u], best_den[u], score_num, score_den) <= 0) {
        cnum = best_num[u];
        cden = best_den[u];
      } else {
        cnum = score_num;
        cden = score_den;
      }
      if (frac_cmp(cnum, cden, best_num[v], best_den[v]) > 0) {
        best_num[v] = cnum;
        best_den[v] = cden;
        parent[v] = u;
      }
    }
  }

  u32 witness = kNoVertex;
  for (u32 v : order) {
    if (v == base || dist_base[v] < escape_radius || best_num[v] < 0) continue;
    if (witness == kNoVertex ||
        frac_cmp(best_num[v], best_den[v], best_num[witness], best_den[witness]) > 0) {
      witness = v;
    }
  }
  if (witness == kNoVertex) {
    throw InputError("no domain vertex lies beyond the escape radius");
  }

  JohnResult out;
  out.ratio = Fraction::make(best_num[witness], best_den[witness]);
  out.witness = witness;
  for (u32 v = witness; v != kNoVertex; v = parent[v]) {
    out.path.push_back(v);
    if (v == base) break;
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

u32 CellIndex::at(std::uint16_t chart, u32 col, u32 row) const {
  for (size_t i = 0; i < charts.size(); ++i) {
    if (charts[i].chart != chart) continue;
    if (col >= charts[i].cols || row >= charts[i].rows) {
      throw InputError("cell outside the chart layout");
    }
    return cells[i][static_cast<size_t>(row) * charts[i].cols + col];
  }
  throw InputError("unknown chart");
}

CellIndex build_cell_index(const Scenario& scenario) {
  const Space& s = scenario.space;
  if (!s.has_coords) throw InputError("scenario carries no raster layout");
  CellIndex index;
  index.charts = scenario.charts;
  index.cells.resize(scenario.charts.size());
  for (size_t i = 0; i < scenario.charts.size(); ++i) {
    index.cells[i].assign(
        static_cast<size_t>(scenario.charts[i].cols) * scenario.charts[i].rows, kNoVertex);
  }
  for (u32 v = 0; v < s.n; ++v) {
    for (size_t i = 0; i < index.charts.size(); ++i) {
      if (index.charts[i].chart != s.chart[v]) continue;
      if (s.col[v] >= index.charts[i].cols || s.row[v] >= index.charts[i].rows) {
        throw InternalError("vertex lies outside its chart layout");
      }
      index.cells[i][static_cast<size_t>(s.row[v]) * index.charts[i].cols + s.col[v]] = v;
      break;
    }
  }
  return index;
}

}  // namespace perimin
