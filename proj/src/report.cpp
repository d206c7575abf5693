#include "perimin/report.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <set>

namespace perimin {

Json json_exact(i64 num, i64 den) {
  return Json{{"num", num}, {"den", den}, {"decimal", decimal_string(num, den)}};
}

Json json_exact(const ExactValue& v) { return json_exact(v.num, v.den); }

Json json_fraction(Fraction f) { return json_exact(f.num, f.den); }

Fraction fraction_from_json(const Json& v, const char* what) {
  if (v.is_number_integer()) return Fraction::from_int(v.get<i64>());
  if (v.is_string()) return parse_fraction(v.get<std::string>());
  throw InputError(std::string(what) + ": expected an integer or a fraction string");
}

namespace {

void require_keys(const Json& obj, const char* what, std::set<std::string> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw InputError(std::string(what) + ": unknown key \"" + it.key() + "\"");
    }
  }
}

u32 get_u32(const Json& obj, const char* key, i64 fallback) {
  i64 v = fallback;
  if (obj.contains(key)) {
    if (!obj[key].is_number_integer()) {
      throw InputError(std::string(key) + " must be an integer");
    }
    v = obj[key].get<i64>();
  } else if (fallback < 0) {
    throw InputError(std::string(key) + " is required");
  }
  if (v < 0 || v > std::numeric_limits<u32>::max()) {
    throw InputError(std::string(key) + " out of range");
  }
  return static_cast<u32>(v);
}

Scenario builtin_from_json(const Json& spec) {
  if (!spec.contains("name") || !spec["name"].is_string()) {
    throw InputError("builtin scenario needs a \"name\"");
  }
  const std::string name = spec["name"].get<std::string>();
  if (name == "interval") {
    require_keys(spec, "interval", {"name"});
    return make_interval();
  }
  if (name == "fat_cantor") {
    require_keys(spec, "fat_cantor", {"name", "level"});
    return make_fat_cantor(get_u32(spec, "level", 4));
  }
  if (name == "triangles_atoms") {
    require_keys(spec, "triangles_atoms", {"name", "n_max", "h"});
    Fraction h = spec.contains("h") ? fraction_from_json(spec["h"], "h") : Fraction{1, 64};
    return make_triangles_atoms(get_u32(spec, "n_max", 2), h);
  }
  if (name == "tripod") {
    require_keys(spec, "tripod", {"name", "k_max", "h", "height"});
    Fraction h = spec.contains("h") ? fraction_from_json(spec["h"], "h") : Fraction{1, 512};
    Fraction height =
        spec.contains("height") ? fraction_from_json(spec["height"], "height") : Fraction{1, 1};
    return make_tripod(get_u32(spec, "k_max", 2), h, height);
  }
  if (name == "square") {
    require_keys(spec, "square", {"name", "cells", "h", "pad", "family"});
    Fraction h = spec.contains("h") ? fraction_from_json(spec["h"], "h") : Fraction{1, 1};
    bool family = spec.contains("family") && spec["family"].get<bool>();
    return make_square(get_u32(spec, "cells", 64), h, get_u32(spec, "pad", 1), family);
  }
  throw InputError("unknown builtin scenario \"" + name + "\"");
}

struct CellRef {
  size_t grid = 0;
  u32 vertex = 0;
};

CellRef cell_ref(const Json& v, const std::vector<GridSpec>& grids, const char* what) {
  if (!v.is_array() || v.size() != 3) {
    throw InputError(std::string(what) + ": cells are [grid, col, row] triples");
  }
  i64 g = v[0].get<i64>(), c = v[1].get<i64>(), r = v[2].get<i64>();
  if (g < 0 || static_cast<size_t>(g) >= grids.size()) {
    throw InputError(std::string(what) + ": grid index out of range");
  }
  const GridSpec& spec = grids[static_cast<size_t>(g)];
  if (c < 0 || c >= spec.cols || r < 0 || r >= spec.rows) {
    throw InputError(std::string(what) + ": cell outside its grid");
  }
  return CellRef{static_cast<size_t>(g),
                 static_cast<u32>(r) * spec.cols + static_cast<u32>(c)};
}

Scenario custom_from_json(const Json& spec, i64 scale) {
  require_keys(spec, "custom scenario", {"name", "grids", "glue", "atoms", "omega"});
  if (!spec.contains("grids") || !spec["grids"].is_array() || spec["grids"].empty()) {
    throw InputError("custom scenario needs a non-empty \"grids\" array");
  }

  std::vector<GridSpec> grids;
  std::vector<std::vector<i64>> densities;
  for (const Json& g : spec["grids"]) {
    require_keys(g, "grid", {"cols", "rows", "h", "density"});
    GridSpec gs;
    gs.cols = get_u32(g, "cols", -1);
    gs.rows = get_u32(g, "rows", -1);
    if (gs.cols == 0 || gs.rows == 0) throw InputError("grid must have positive extent");
    Fraction h = g.contains("h") ? fraction_from_json(g["h"], "h") : Fraction{1, 1};
    if (!h.is_positive()) throw InputError("grid cell size must be positive");
    gs.h_num = h.num;
    gs.h_den = h.den;
    gs.chart_id = static_cast<std::uint16_t>(grids.size());
    gs.with_coords = true;
    std::vector<i64> dens;
    if (g.contains("density")) {
      const Json& d = g["density"];
      if (!d.is_array() || d.size() != static_cast<size_t>(gs.cols) * gs.rows) {
        throw InputError("density must list cols * rows values in row-major order");
      }
      dens.reserve(d.size());
      for (const Json& v : d) {
        Fraction f = fraction_from_json(v, "density");
        if (f.num < 0) throw InputError("density must be nonnegative");
        dens.push_back(exact_mul_div(scale, f.num, f.den, "density"));
      }
    }
    densities.push_back(std::move(dens));
    grids.push_back(std::move(gs));
  }
  for (size_t i = 0; i < grids.size(); ++i) {
    if (!densities[i].empty()) {
      const std::vector<i64>& d = densities[i];
      const u32 cols = grids[i].cols;
      grids[i].density = [&d, cols](u32 c, u32 r) { return d[static_cast<size_t>(r) * cols + c]; };
    }
  }

  std::vector<Space> built;
  built.reserve(grids.size());
  for (const GridSpec& gs : grids) built.push_back(build_grid(gs, scale));

  std::vector<GlueGroup> groups;
  if (spec.contains("glue")) {
    for (const Json& grp : spec["glue"]) {
      if (!grp.is_array() || grp.size() < 2) {
        throw InputError("glue groups need at least two cells");
      }
      GlueGroup group;
      for (const Json& member : grp) {
        CellRef ref = cell_ref(member, grids, "glue");
        group.members.push_back({ref.grid, ref.vertex});
      }
      groups.push_back(std::move(group));
    }
  }

  std::vector<const Space*> ptrs;
  for (const Space& s : built) ptrs.push_back(&s);
  GlueResult glued = glue(ptrs, groups);

  Scenario sc;
  sc.name = spec.contains("name") ? spec["name"].get<std::string>() : std::string("custom");
  if (spec.contains("atoms")) {
    for (const Json& a : spec["atoms"]) {
      require_keys(a, "atom", {"at", "mass"});
      if (!a.contains("at") || !a.contains("mass")) {
        throw InputError("atoms need \"at\" and \"mass\"");
      }
      CellRef ref = cell_ref(a["at"], grids, "atom");
      Fraction mass = fraction_from_json(a["mass"], "mass");
      if (!mass.is_positive()) throw InputError("atom mass must be positive");
      u32 v = glued.remap[ref.grid][ref.vertex];
      add_atom(glued.space, v, exact_mul_div(scale, mass.num, mass.den, "atom mass"));
      sc.atoms.push_back(v);
    }
  }

  sc.omega = VertexSet(glued.space.n);
  if (!spec.contains("omega") || !spec["omega"].is_array() || spec["omega"].empty()) {
    throw InputError("custom scenario needs a non-empty \"omega\" array");
  }
  for (const Json& cell : spec["omega"]) {
    CellRef ref = cell_ref(cell, grids, "omega");
    sc.omega.insert(glued.remap[ref.grid][ref.vertex]);
  }

  for (const GridSpec& gs : grids) {
    sc.charts.push_back(ChartLayout{gs.chart_id, gs.cols, gs.rows});
  }
  sc.space = std::move(glued.space);
  return sc;
}

}  // namespace

Scenario scenario_from_json(const Json& doc, i64 default_scale) {
  try {
    require_keys(doc, "scenario", {"builtin", "custom", "capacity_scale"});
    const bool has_builtin = doc.contains("builtin");
    const bool has_custom = doc.contains("custom");
    if (has_builtin == has_custom) {
      throw InputError("scenario needs exactly one of \"builtin\" or \"custom\"");
    }
    if (has_builtin) {
      if (doc.contains("capacity_scale")) {
        throw InputError("builtin scenarios choose their own capacity scale");
      }
      return builtin_from_json(doc["builtin"]);
    }
    i64 scale = default_scale;
    if (doc.contains("capacity_scale")) {
      if (!doc["capacity_scale"].is_number_integer()) {
        throw InputError("capacity_scale must be an integer");
      }
      scale = doc["capacity_scale"].get<i64>();
      if (scale < 2) throw InputError("capacity_scale must be at least 2");
    }
    return custom_from_json(doc["custom"], scale);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("scenario description: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path, i64 default_scale) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("scenario file " + path + ": " + e.what());
  }
  return scenario_from_json(doc, default_scale);
}

std::vector<std::string> write_masks(const std::string& base, const Scenario& scenario,
                                     const VertexSet& set) {
  if (set.universe_size() != scenario.space.n) {
    throw InputError("mask set does not belong to this scenario's space");
  }
  CellIndex index = build_cell_index(scenario);
  std::vector<std::string> names;
  for (size_t i = 0; i < index.charts.size(); ++i) {
    const ChartLayout& chart = index.charts[i];
    std::string name = base + "-chart" + std::to_string(chart.chart) + ".pgm";
    std::ofstream out(name);
    if (!out) throw InputError("cannot write mask file " + name);
    out << "P2\n" << chart.cols << " " << chart.rows << "\n255\n";
    for (u32 r = 0; r < chart.rows; ++r) {
      for (u32 c = 0; c < chart.cols; ++c) {
        u32 v = index.cells[i][static_cast<size_t>(r) * chart.cols + c];
        out << ((v != kNoVertex && set.contains(v)) ? 255 : 0)
            << (c + 1 == chart.cols ? '\n' : ' ');
      }
    }
    if (!out) throw InputError("failed while writing mask file " + name);
    names.push_back(std::move(name));
  }
  return names;
}

namespace {

// Reads the next PGM token, skipping whitespace and # comments.
std::string pgm_token(std::istream& in, const std::string& name) {
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      while (in.get(ch) && ch != '\n') {
      }
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      std::string tok(1, ch);
      while (in.get(ch) && !std::isspace(static_cast<unsigned char>(ch))) tok.push_back(ch);
      return tok;
    }
  }
  throw InputError("mask file " + name + " ended early");
}

i64 pgm_number(std::istream& in, const std::string& name) {
  std::string tok = pgm_token(in, name);
  try {
    size_t used = 0;
    i64 v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw InputError("mask file " + name + ": bad number \"" + tok + "\"");
  }
}

}  // namespace

VertexSet read_masks(const std::string& base, const Scenario& scenario) {
  CellIndex index = build_cell_index(scenario);
  VertexSet set(scenario.space.n);
  for (size_t i = 0; i < index.charts.size(); ++i) {
    const ChartLayout& chart = index.charts[i];
    std::string name = base + "-chart" + std::to_string(chart.chart) + ".pgm";
    std::ifstream in(name);
    if (!in) throw InputError("cannot open mask file " + name);
    if (pgm_token(in, name) != "P2") {
      throw InputError("mask file " + name + " is not a plain PGM");
    }
    i64 cols = pgm_number(in, name), rows = pgm_number(in, name), maxval = pgm_number(in, name);
    if (cols != chart.cols || rows != chart.rows) {
      throw InputError("mask file " + name + " does not match the chart layout");
    }
    if (maxval != 255) throw InputError("mask file " + name + " must use maxval 255");
    for (u32 r = 0; r < chart.rows; ++r) {
      for (u32 c = 0; c < chart.cols; ++c) {
        i64 value = pgm_number(in, name);
        if (value != 0 && value != 255) {
          throw InputError("mask file " + name + " holds a value other than 0 and 255");
        }
        if (value == 0) continue;
        u32 v = index.cells[i][static_cast<size_t>(r) * chart.cols + c];
        if (v == kNoVertex) {
          throw InputError("mask file " + name + " marks a cell with no vertex");
        }
        set.insert(v);
      }
    }
  }
  return set;
}

}  // namespace perimin
