#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "perimin/functional.hpp"
#include "perimin/report.hpp"

using namespace perimin;

namespace {

const i64 S = i64{1} << 16;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string temp_base(const std::string& tag) {
  return (std::filesystem::temp_directory_path() / ("perimin_test_" + tag)).string();
}

i64 cap_between(const Space& s, u32 u, u32 v) {
  for (u32 k = s.adj_off[u]; k < s.adj_off[u + 1]; ++k) {
    if (s.adj_nbr[k] == v) return s.edge_cap[s.adj_eid[k]];
  }
  return -1;
}

Json pair_doc() {
  return Json::parse(R"({
    "custom": {
      "name": "pair",
      "grids": [
        {"cols": 3, "rows": 1},
        {"cols": 3, "rows": 1, "h": "1/2", "density": [1, "1/2", 0]}
      ],
      "glue": [[[0, 2, 0], [1, 0, 0]]],
      "atoms": [{"at": [1, 1, 0], "mass": "3/4"}],
      "omega": [[0, 1, 0], [0, 2, 0], [1, 1, 0]]
    }
  })");
}

}  // namespace

TEST_CASE("exact values serialize with their decimal rendering") {
  CHECK(json_exact(1, 4).dump() == R"({"num":1,"den":4,"decimal":"0.25"})");
  CHECK(json_exact(ExactValue{5, 1})["decimal"] == "5");
  CHECK(json_exact(1, 3)["decimal"] == "1/3");
  CHECK(json_fraction(Fraction{-3, 2})["decimal"] == "-1.5");
}

TEST_CASE("fractions parse from integers and strings") {
  CHECK(fraction_from_json(Json(7), "x") == Fraction{7, 1});
  CHECK(fraction_from_json(Json("3/8"), "x") == Fraction{3, 8});
  CHECK(fraction_from_json(Json("2^-4"), "x") == Fraction{1, 16});
  CHECK_THROWS_AS(fraction_from_json(Json(true), "x"), InputError);
  CHECK_THROWS_AS(fraction_from_json(Json::array(), "x"), InputError);
  CHECK_THROWS_AS(fraction_from_json(Json("banana"), "x"), InputError);
}

TEST_CASE("builtin scenarios dispatch by name with defaults") {
  Scenario interval = scenario_from_json(Json::parse(R"({"builtin": {"name": "interval"}})"));
  CHECK(interval.name == "interval");
  CHECK(interval.space.n == 7);

  Scenario cantor = scenario_from_json(Json::parse(R"({"builtin": {"name": "fat_cantor"}})"));
  CHECK(cantor.segments.size() == 16);  // level defaults to 4

  Scenario square = scenario_from_json(
      Json::parse(R"({"builtin": {"name": "square", "cells": 16, "family": true}})"));
  CHECK(square.omega.count() == 256);
  CHECK(square.family.size() == 2);

  Scenario tripod = scenario_from_json(
      Json::parse(R"({"builtin": {"name": "tripod", "k_max": 0, "h": "1/16"}})"));
  CHECK(tripod.john.size() == 1);

  Scenario triangles =
      scenario_from_json(Json::parse(R"({"builtin": {"name": "triangles_atoms"}})"));
  CHECK(triangles.atoms.size() == 2);  // n_max defaults to 2

  CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"builtin": {"name": "donut"}})")),
                  InputError);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"builtin": {}})")), InputError);
  CHECK_THROWS_AS(
      scenario_from_json(Json::parse(R"({"builtin": {"name": "interval", "level": 3}})")),
      InputError);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({})")), InputError);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(
                      R"({"builtin": {"name": "interval"}, "custom": {}})")),
                  InputError);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(
                      R"({"builtin": {"name": "interval"}, "capacity_scale": 64})")),
                  InputError);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"builtin": 5})")), InputError);
  CHECK_THROWS_AS(scenario_from_json(Json::parse(R"({"custom": 5})")), InputError);
}

TEST_CASE("custom scenarios glue grids, add atoms, and keep chart layouts") {
  Scenario sc = scenario_from_json(pair_doc(), S);
  const Space& s = sc.space;
  REQUIRE(s.n == 5);
  CHECK(sc.name == "pair");
  REQUIRE(sc.charts.size() == 2);

  CellIndex idx = build_cell_index(sc);
  // the glued vertex keeps the coordinates of the last grid that owns it
  CHECK(idx.at(0, 2, 0) == kNoVertex);
  const u32 joint = idx.at(1, 0, 0);
  REQUIRE(joint != kNoVertex);

  CHECK(s.measure[idx.at(0, 0, 0)] == S);
  CHECK(s.measure[joint] == S + S / 4);          // two cells stacked
  CHECK(s.measure[idx.at(1, 1, 0)] == S / 8 + 3 * S / 4);  // cell plus atom
  CHECK(s.measure[idx.at(1, 2, 0)] == 0);
  REQUIRE(sc.atoms.size() == 1);
  CHECK(sc.atoms[0] == idx.at(1, 1, 0));

  CHECK(cap_between(s, idx.at(0, 0, 0), idx.at(0, 1, 0)) == S);
  CHECK(cap_between(s, joint, idx.at(1, 1, 0)) == 3 * S / 8);
  CHECK(cap_between(s, idx.at(1, 1, 0), idx.at(1, 2, 0)) == S / 8);

  CHECK(sc.omega.count() == 3);
  CHECK(sc.omega.contains(idx.at(0, 1, 0)));
  CHECK(sc.omega.contains(joint));
  CHECK(sc.omega.contains(idx.at(1, 1, 0)));

  Json scaled = pair_doc();
  scaled["capacity_scale"] = 1024;
  Scenario small = scenario_from_json(scaled, S);
  CHECK(small.space.scale == 1024);
  CHECK(small.space.measure[0] == 1024);
}

TEST_CASE("custom scenarios reject malformed descriptions") {
  auto reject = [](const char* text) {
    CHECK_THROWS_AS(scenario_from_json(Json::parse(text), S), InputError);
  };
  reject(R"({"custom": {"omega": [[0,0,0]]}})");
  reject(R"({"custom": {"grids": [], "omega": [[0,0,0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2}], "omega": [[0,0,0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 0, "rows": 2}], "omega": [[0,0,0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1, "h": 0}], "omega": [[0,0,0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1, "sides": 3}], "omega": [[0,0,0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1, "density": [1]}], "omega": [[0,0,0]]}})");
  reject(
      R"({"custom": {"grids": [{"cols": 2, "rows": 1, "density": [1, "-1/2"]}], "omega": [[0,0,0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1}]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1}], "omega": []}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1}], "omega": [[0, 5, 0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1}], "omega": [[1, 0, 0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1}], "omega": [[0, 0]]}})");
  reject(R"({"custom": {"grids": [{"cols": 2, "rows": 1}], "glue": [[[0,0,0]]], "omega": [[0,1,0]]}})");
  reject(
      R"({"custom": {"grids": [{"cols": 2, "rows": 1}], "atoms": [{"at": [0,0,0]}], "omega": [[0,1,0]]}})");
  reject(
      R"({"custom": {"grids": [{"cols": 2, "rows": 1}], "atoms": [{"at": [0,0,0], "mass": 0}], "omega": [[0,1,0]]}})");

  Json bad_scale = pair_doc();
  bad_scale["capacity_scale"] = 1;
  CHECK_THROWS_AS(scenario_from_json(bad_scale, S), InputError);
  bad_scale["capacity_scale"] = "many";
  CHECK_THROWS_AS(scenario_from_json(bad_scale, S), InputError);
}

TEST_CASE("scenario files load through the same path") {
  std::string path = temp_base("scenario") + ".json";
  spit(path, R"({"builtin": {"name": "interval"}})");
  Scenario sc = load_scenario(path);
  CHECK(sc.space.n == 7);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_scenario(path), InputError);
  spit(path, "{nope");
  CHECK_THROWS_AS(load_scenario(path), InputError);
  std::filesystem::remove(path);
}

TEST_CASE("masks write deterministic text and read back exactly") {
  Scenario sc = make_interval();
  std::string base = temp_base("interval");
  std::vector<std::string> files = write_masks(base, sc, sc.omega);
  REQUIRE(files.size() == 1);
  CHECK(files[0] == base + "-chart0.pgm");
  CHECK(slurp(files[0]) == "P2\n7 1\n255\n0 255 255 255 255 255 0\n");
  CHECK(read_masks(base, sc) == sc.omega);
  for (const std::string& f : files) std::filesystem::remove(f);

  CHECK_THROWS_AS(write_masks(base, sc, VertexSet(3)), InputError);
}

TEST_CASE("masks round-trip across several charts") {
  Scenario sc = make_tripod(0, Fraction{1, 16});
  std::string base = temp_base("tripod");

  Rng rng(77);
  VertexSet set(sc.space.n);
  sc.omega.for_each([&](u32 v) {
    if (rng.next() & 1) set.insert(v);
  });

  std::vector<std::string> files = write_masks(base, sc, set);
  REQUIRE(files.size() == 3);
  CHECK(read_masks(base, sc) == set);
  for (const std::string& f : files) std::filesystem::remove(f);
}

TEST_CASE("mask reading tolerates comments and rejects damage") {
  Scenario sc = make_interval();
  std::string base = temp_base("damage");
  std::string file = base + "-chart0.pgm";

  spit(file, "P2 # plain text\n# seven cells, one row\n7 1\n255\n0 255 255 255 255 255 0\n");
  CHECK(read_masks(base, sc) == sc.omega);

  spit(file, "P5\n7 1\n255\n0 0 0 0 0 0 0\n");
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
  spit(file, "P2\n5 1\n255\n0 0 0 0 0\n");
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
  spit(file, "P2\n7 1\n300\n0 0 0 0 0 0 0\n");
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
  spit(file, "P2\n7 1\n255\n0 7 0 0 0 0 0\n");
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
  spit(file, "P2\n7 1\n255\n0 255\n");
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
  spit(file, "P2\n7 1\n255\n0 ink 0 0 0 0 0\n");
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
  std::filesystem::remove(file);
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
}

TEST_CASE("masks refuse to mark cells that hold no vertex") {
  Scenario sc = scenario_from_json(pair_doc(), S);
  std::string base = temp_base("holes");
  std::vector<std::string> files = write_masks(base, sc, sc.omega);
  REQUIRE(files.size() == 2);

  // the glued vertex lives on chart 1; chart 0 shows a hole at its old cell
  CHECK(slurp(files[0]) == "P2\n3 1\n255\n0 255 0\n");
  CHECK(slurp(files[1]) == "P2\n3 1\n255\n255 255 0\n");
  CHECK(read_masks(base, sc) == sc.omega);

  spit(files[0], "P2\n3 1\n255\n0 0 255\n");
  CHECK_THROWS_AS(read_masks(base, sc), InputError);
  for (const std::string& f : files) std::filesystem::remove(f);
}
