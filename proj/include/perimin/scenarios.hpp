#pragma once

// Built-in benchmark geometries.  Each builder returns a Scenario: the space,
// the variational domain, named probe sets, distinguished atoms, raster chart
// layouts for mask output, and ready-made distance-probe cases.
//
// Conventions shared by the 2-D builders: square cells of side h, vertex
// measure = density * h^2, 4-neighbor edges with capacity
// h * (density(u) + density(v)) / 2 and length h.  The 1-D builders use
// vertex measure density * h and unit edge capacities, so an interval's
// perimeter is 2 regardless of resolution.

#include <string>
#include <utility>
#include <vector>

#include "perimin/scaled.hpp"
#include "perimin/space.hpp"
#include "perimin/vertex_set.hpp"

namespace perimin {

constexpr u32 kNoVertex = ~u32{0};

struct ChartLayout {
  std::uint16_t chart = 0;
  u32 cols = 0, rows = 0;
};

struct NamedSet {
  std::string name;
  VertexSet set;
};

struct JohnCase {
  std::string name;
  u32 base = 0;             ///< probe center
  i64 escape_radius = 0;    ///< scaled geodesic distance a probe must reach
};

struct Scenario {
  std::string name;
  Space space;
  VertexSet omega;
  std::vector<ChartLayout> charts;
  std::vector<NamedSet> family;   ///< distinguished subsets of omega
  std::vector<u32> atoms;         ///< vertices carrying extra point mass
  std::vector<JohnCase> john;
  std::vector<std::pair<u32, u32>> segments;  ///< 1-D scenarios: kept cell ranges
};

/// Seven-vertex path with cell size 1/2 and a measure-zero middle vertex.
/// Domain = the five interior vertices.  Family: "a" = {1,2},
/// "b-open" = {1,2,4,5}, "b-closed" = {1,2,3,4,5}.
Scenario make_interval();

/// Positive-measure Cantor-type subset of [0,1] at construction depth
/// `level` (1..12): step j removes a centered open gap of length 4^-(j+1)
/// from each interval.  Cell size 4^-(level+1) resolves the construction
/// exactly; the kept cell ranges are exposed as `segments`.
Scenario make_fat_cantor(u32 level);

/// Strip Q = (0,1) x (-1,0) whose density min(|y|, |y+1|) vanishes on both
/// horizontal boundary lines, with triangles T_n (n = 1..n_max) of base
/// (c_n, 2c_n) x {0}, c_n = 4^-n, standing on the null line y = 0, and one
/// atom of mass 2^-n at the midpoint of each base.  h must be 1/2^e with
/// e >= 2 n_max + 2.  Family: "triangle-n".
Scenario make_triangles_atoms(u32 n_max, Fraction h);

/// Three unit-square sheets (densities 2, 1, 1) glued along the segment
/// [0,1] of their common bottom line.  The domain is: all of sheet 0, plus
/// right-triangle fans E_k (k = 0..k_max) on sheet 1 with base
/// [c_k, 2c_k] x {0}, c_k = 2^-(2k+1), plus matching miniature fans on
/// sheet 2, all connected to sheet 0 only through slit groups of width
/// 2^-(4k+3) in the glue line placed at the inner ends of each base.  Slits
/// narrower than one cell are represented by a single column whose
/// glue-crossing capacities are scaled down to the true width.  `height`
/// trims the sheets to a fraction of their full extent (the fans and slits
/// are unaffected as long as height >= 1/4).  Family: "fan-k".  John cases
/// "fan-k" probe from the fan centers with escape radius c_k.
Scenario make_tripod(u32 k_max, Fraction h, Fraction height = Fraction{1, 1});

/// Square of `cells` x `cells` cells of side h and density 1, surrounded by
/// `pad` rings of exterior cells.  With `with_family`, the same fan family
/// as the tripod is placed just inside the bottom edge (where every fan is
/// surrounded by domain on all sides).  A center probe with escape radius
/// cells/4 * h is added when the square is at least 4 cells wide.
Scenario make_square(u32 cells, Fraction h, u32 pad, bool with_family);

struct JohnResult {
  Fraction ratio;          ///< the max-min boundary-clearance ratio
  u32 witness = 0;         ///< far vertex attaining it
  std::vector<u32> path;   ///< a geodesic base -> witness achieving the ratio
};

/// Geodesic boundary-clearance probe.  Over all vertices z of the domain at
/// in-domain geodesic distance at least escape_radius from `base`, and over
/// all in-domain geodesics from base to z, maximizes the minimum over the
/// path (base excluded) of dist(w, exterior boundary) / dist(w, base).
/// Narrow necks force this ratio down for any z beyond them.
JohnResult john_probe(const Space& s, const VertexSet& omega, u32 base, i64 escape_radius);

/// Raster lookup: vertex ids arranged per chart, kNoVertex on empty cells.
struct CellIndex {
  std::vector<ChartLayout> charts;
  std::vector<std::vector<u32>> cells;  ///< per chart, row-major col + row * cols

  u32 at(std::uint16_t chart, u32 col, u32 row) const;
};

CellIndex build_cell_index(const Scenario& scenario);

}  // namespace perimin
