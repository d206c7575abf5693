#pragma once

// The discrete spaces everything else works on: finite weighted graphs where
// vertices carry nonnegative measures (atoms allowed, zero allowed) and
// undirected edges carry a capacity (the perimeter contribution when cut) and
// a positive length (for geodesic distances).  All quantities are int64
// multiples of 1/scale.
//
// Storage is struct-of-arrays with a CSR adjacency built once at finalize;
// the finest scenarios reach ~13M vertices / ~25M edges, so per-entry bytes
// matter more than niceties here.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perimin/scaled.hpp"
#include "perimin/vertex_set.hpp"

namespace perimin {

struct Space {
  i64 scale = kDefaultScale;
  u32 n = 0;

  std::vector<i64> measure;  // per vertex, scaled

  std::vector<u32> edge_u, edge_v;  // endpoints, u < v
  std::vector<i64> edge_cap;        // scaled, >= 0
  std::vector<i64> edge_len;        // scaled, > 0; empty when uniform
  i64 uniform_len = 0;              // the shared length when edge_len is empty

  // CSR over half-edges: neighbors of v are adj_nbr[adj_off[v]..adj_off[v+1])
  // with adj_eid giving the owning edge index.
  std::vector<u32> adj_off, adj_nbr, adj_eid;

  // Optional planar layout for mask output: per-vertex chart id + cell coords.
  bool has_coords = false;
  std::vector<std::uint16_t> chart;
  std::vector<u32> col, row;

  i64 total_measure = 0;

  size_t edge_count() const { return edge_u.size(); }
  i64 length(size_t e) const { return edge_len.empty() ? uniform_len : edge_len[e]; }

  /// Sum of measures over a set, with overflow checking.
  i64 measure_of(const VertexSet& a) const;

  double to_units(i64 scaled) const { return static_cast<double>(scaled) / static_cast<double>(scale); }
};

/// Accumulates vertices and edges, then finalizes into a Space.  Validation
/// (self loops, duplicate edges, negative data) happens at finalize; the
/// duplicate check can be skipped by builders that guarantee it structurally.
class SpaceBuilder {
 public:
  explicit SpaceBuilder(i64 scale = kDefaultScale);

  u32 add_vertex(i64 measure);
  void reserve(u32 vertices, size_t edges);
  void set_measure(u32 v, i64 measure);
  void bump_measure(u32 v, i64 delta);  ///< atoms: adds point mass at v
  void add_edge(u32 u, u32 v, i64 cap, i64 len);
  void set_coords(u32 v, std::uint16_t chart, u32 col, u32 row);

  u32 vertex_count() const { return static_cast<u32>(measure_.size()); }
  i64 scale() const { return scale_; }

  Space finalize(bool check_duplicates = true);

 private:
  i64 scale_;
  std::vector<i64> measure_;
  std::vector<u32> edge_u_, edge_v_;
  std::vector<i64> edge_cap_, edge_len_;
  bool has_coords_ = false;
  std::vector<std::uint16_t> chart_;
  std::vector<u32> col_, row_;
};

/// Rectangular 4-connected grid of square cells of side h = h_num/h_den
/// (space units).  Cell (col, row) has vertex id row * cols + col, measure
/// density(col, row) * h^2 and edge capacity h * (density(u) + density(v)) / 2,
/// edge length h.  density returns the scaled density (space units * scale).
struct GridSpec {
  u32 cols = 0, rows = 0;
  i64 h_num = 1, h_den = 1;
  std::function<i64(u32 c, u32 r)> density;  // nullptr means constant 1 * scale
  std::uint16_t chart_id = 0;
  bool with_coords = false;
};

Space build_grid(const GridSpec& spec, i64 scale = kDefaultScale);

/// Identifies vertices across (or within) spaces.  Each group lists
/// (space index, vertex) pairs that become a single vertex; measures add,
/// parallel edges merge by adding capacities and keeping the shorter length.
struct GlueGroup {
  std::vector<std::pair<size_t, u32>> members;
};

struct GlueResult {
  Space space;
  // remap[i][v] = vertex id in the glued space of vertex v of input space i.
  std::vector<std::vector<u32>> remap;
};

GlueResult glue(const std::vector<const Space*>& spaces, const std::vector<GlueGroup>& groups);

/// Adds a point mass (scaled) on top of a vertex's cell measure.
void add_atom(Space& s, u32 v, i64 mass);

constexpr i64 kUnreachable = -1;

/// Shortest-path distances (sum of edge lengths, scaled) from a source set.
/// When `within` is given, paths may only traverse vertices of that set
/// (sources are seeded regardless; an edge u-v is usable only if v is in the
/// set).  Uniform-length spaces take a BFS fast path.
std::vector<i64> graph_distance(const Space& space, const VertexSet& sources,
                                const VertexSet* within = nullptr);

/// Vertices outside `inside` adjacent to at least one vertex of `inside`.
VertexSet exterior_boundary(const Space& space, const VertexSet& inside);

}  // namespace perimin
