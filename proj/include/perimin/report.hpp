#pragma once

// JSON assembly and raster mask I/O shared by the command line tools.

#include <string>
#include <vector>

#include "json.hpp"

#include "perimin/minimize.hpp"
#include "perimin/scenarios.hpp"

namespace perimin {

/// Ordered so that reports serialize with stable key order.
using Json = nlohmann::ordered_json;

/// {"num", "den", "decimal"}: the exact value plus a readable rendering.
Json json_exact(i64 num, i64 den);
Json json_exact(const ExactValue& v);
Json json_fraction(Fraction f);

/// Accepts an integer or a string understood by parse_fraction.
Fraction fraction_from_json(const Json& v, const char* what);

/// Builds a scenario from a JSON description.  Either
///   {"builtin": {"name": ..., <parameters>}}
/// or
///   {"custom": {"grids": [...], "glue": [...], "omega": [...], ...}}
/// Custom descriptions may set "capacity_scale" at the top level;
/// `default_scale` applies when they do not.
Scenario scenario_from_json(const Json& doc, i64 default_scale = kDefaultScale);

/// scenario_from_json on the parsed contents of `path`.
Scenario load_scenario(const std::string& path, i64 default_scale = kDefaultScale);

/// Writes one PGM per chart ("<base>-chart<N>.pgm", 255 = member, 0 =
/// non-member or empty cell).  Returns the file names written.
std::vector<std::string> write_masks(const std::string& base, const Scenario& scenario,
                                     const VertexSet& set);

/// Reads a set written by write_masks back over the same scenario.
VertexSet read_masks(const std::string& base, const Scenario& scenario);

}  // namespace perimin
