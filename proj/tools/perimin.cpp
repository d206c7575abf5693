// Command line front end: minimize / sweep / probe / check.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "perimin/extension.hpp"
#include "perimin/functional.hpp"
#include "perimin/minimize.hpp"
#include "perimin/report.hpp"
#include "perimin/scenarios.hpp"

namespace {

using namespace perimin;

i64 env_default_scale() {
  const char* v = std::getenv("PERIMIN_SCALE");
  if (!v) return kDefaultScale;
  Fraction f = parse_fraction(v);
  if (f.den != 1 || f.num < 2) {
    throw InputError("PERIMIN_SCALE must be an integer of at least 2");
  }
  return f.num;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

struct CommonOptions {
  std::string scenario;
  std::string variant = "inside";
  std::string out;
  bool no_timing = false;
};

Json set_summary(const Space& s, const VertexSet& set) {
  return Json{{"size", set.count()},
              {"measure", json_exact(s.measure_of(set), s.scale)},
              {"perimeter", json_exact(perimeter(s, set), s.scale)}};
}

void emit(Json& report, const CommonOptions& opt, const Timer& timer) {
  if (!opt.no_timing) report["elapsed_seconds"] = timer.seconds();
  std::string text = report.dump(2);
  std::cout << text << "\n";
  if (!opt.out.empty()) {
    std::filesystem::path path = std::filesystem::path(opt.out) / "report.json";
    std::ofstream file(path);
    if (!file) throw InputError("cannot write " + path.string());
    file << text << "\n";
  }
}

std::vector<Fraction> parse_lambda_list(const std::string& text) {
  std::vector<Fraction> lambdas;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) lambdas.push_back(parse_fraction(item));
  }
  if (lambdas.empty()) throw InputError("no lambda values given");
  return lambdas;
}

int run_minimize(const CommonOptions& opt, const std::string& lambda_text,
                 const std::string& epsilon_text) {
  Timer timer;
  Scenario sc = load_scenario(opt.scenario, env_default_scale());
  Variant variant = variant_from_name(opt.variant);
  const Space& s = sc.space;

  Json report;
  report["command"] = "minimize";
  report["scenario"] = sc.name;
  report["variant"] = variant_name(variant);
  report["vertices"] = s.n;
  report["edges"] = s.edge_count();
  report["domain"] = set_summary(s, sc.omega);

  Fraction lambda;
  if (!lambda_text.empty()) {
    lambda = parse_fraction(lambda_text);
  } else if (!epsilon_text.empty()) {
    if (variant != Variant::kInsideOnly) {
      throw InputError("epsilon calibration applies to the inside variant");
    }
    Fraction eps = parse_fraction(epsilon_text);
    if (!eps.is_positive()) throw InputError("epsilon must be positive");
    // Rounded up: "below epsilon" means the same for integer scaled measures.
    i128 scaled = (static_cast<i128>(s.scale) * eps.num + eps.den - 1) / eps.den;
    i64 eps_scaled = checked_narrow(scaled, "epsilon");
    LambdaEstimate est = estimate_lambda(s, sc.omega, eps_scaled);
    lambda = est.lambda;
    Json cal;
    cal["epsilon"] = json_exact(eps_scaled, s.scale);
    cal["radius"] = json_exact(est.radius, s.scale);
    cal["boundary_layer_measure"] = json_exact(est.ball_measure, s.scale);
    cal["certificate"] = json_exact(est.certificate, s.scale);
    cal["bound"] = json_fraction(est.bound);
    Json layers = Json::array();
    for (const LayerCut& layer : est.layers) {
      layers.push_back(Json{{"radius", json_exact(layer.radius, s.scale)},
                            {"layer_measure", json_exact(layer.layer_measure, s.scale)},
                            {"cut", json_exact(layer.cut, s.scale)}});
    }
    cal["layers"] = std::move(layers);
    report["calibration"] = std::move(cal);
  } else {
    throw InputError("minimize needs --lambda or --epsilon");
  }
  report["lambda"] = json_fraction(lambda);

  MinimizeResult res = minimize(s, sc.omega, variant, lambda);
  report["value"] = json_exact(res.value);
  report["minimal"] = set_summary(s, res.minimal);
  report["maximal"] = set_summary(s, res.maximal);
  report["unique"] = res.minimal == res.maximal;
  VertexSet penalized = variant == Variant::kInsideOnly ? sc.omega - res.minimal
                                                        : sc.omega ^ res.minimal;
  report["penalized_measure"] = json_exact(s.measure_of(penalized), s.scale);

  if (!opt.out.empty()) {
    std::filesystem::create_directories(opt.out);
    std::filesystem::path base(opt.out);
    Json masks = Json::array();
    for (const std::string& name : write_masks((base / "minimal").string(), sc, res.minimal)) {
      masks.push_back(name);
    }
    for (const std::string& name : write_masks((base / "maximal").string(), sc, res.maximal)) {
      masks.push_back(name);
    }
    report["masks"] = std::move(masks);
  }
  emit(report, opt, timer);
  return 0;
}

int run_sweep(const CommonOptions& opt, const std::string& lambdas_text) {
  Timer timer;
  Scenario sc = load_scenario(opt.scenario, env_default_scale());
  Variant variant = variant_from_name(opt.variant);
  const Space& s = sc.space;
  std::vector<Fraction> lambdas = parse_lambda_list(lambdas_text);

  SweepResult result = sweep(s, sc.omega, variant, lambdas);
  bool concave = sweep_concave(result);

  Json report;
  report["command"] = "sweep";
  report["scenario"] = sc.name;
  report["variant"] = variant_name(variant);
  report["vertices"] = s.n;
  report["domain"] = set_summary(s, sc.omega);
  Json entries = Json::array();
  for (const SweepEntry& e : result.entries) {
    entries.push_back(Json{{"lambda", json_fraction(e.lambda)},
                           {"value", json_exact(e.result.value)},
                           {"minimal", set_summary(s, e.result.minimal)},
                           {"maximal", set_summary(s, e.result.maximal)}});
  }
  report["entries"] = std::move(entries);
  report["nested"] = result.nested;
  report["concave"] = concave;
  emit(report, opt, timer);
  return (result.nested && concave) ? 0 : 1;
}

int run_probe(const CommonOptions& opt, const std::string& lambda_text,
              const std::string& set_base, u64 probes, u64 seed) {
  Timer timer;
  Scenario sc = load_scenario(opt.scenario, env_default_scale());
  Variant variant = variant_from_name(opt.variant);
  const Space& s = sc.space;
  Fraction lambda = parse_fraction(lambda_text);

  VertexSet g(s.n);
  std::string source;
  if (!set_base.empty()) {
    g = read_masks(set_base, sc);
    source = "mask";
  } else {
    g = minimize(s, sc.omega, variant, lambda).minimal;
    source = "minimizer";
  }
  if (g.empty()) throw InputError("the probed set is empty");

  ProbeReport pr = check_extension_inequality(s, g, lambda, probes, seed);

  Json report;
  report["command"] = "probe";
  report["scenario"] = sc.name;
  report["lambda"] = json_fraction(lambda);
  report["source"] = source;
  report["set"] = set_summary(s, g);
  report["probes"] = pr.probes;
  report["violations"] = pr.violations;
  report["worst_perimeter_ratio"] = pr.worst_perimeter_ratio;
  report["worst_norm_ratio"] = pr.worst_norm_ratio;
  report["worst_size"] = pr.worst_size;
  emit(report, opt, timer);
  return (pr.violations > 0 && source == "minimizer") ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Self-test battery.

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

Space random_grid(Rng& rng, u32 max_side, bool allow_null) {
  const i64 scale = i64{1} << 16;
  GridSpec spec;
  spec.cols = 2 + static_cast<u32>(rng.below(max_side - 1));
  spec.rows = 2 + static_cast<u32>(rng.below(max_side - 1));
  spec.h_num = 1;
  spec.h_den = i64{1} << rng.below(3);
  std::vector<i64> density(static_cast<size_t>(spec.cols) * spec.rows);
  for (i64& d : density) {
    u64 pick = rng.below(4);
    if (!allow_null && pick == 0) pick = 1;
    d = static_cast<i64>(pick) * (scale / 4);
  }
  const u32 cols = spec.cols;
  spec.density = [density = std::move(density), cols](u32 c, u32 r) {
    return density[static_cast<size_t>(r) * cols + c];
  };
  return build_grid(spec, scale);
}

VertexSet random_subset(const VertexSet& within, Rng& rng) {
  VertexSet out(within.universe_size());
  within.for_each([&](u32 v) {
    if (rng.next() & 1) out.insert(v);
  });
  return out;
}

void check_identities(u64 seed) {
  Rng rng(seed);
  for (int round = 0; round < 40; ++round) {
    Space s = random_grid(rng, 6, true);
    VertexSet all = VertexSet::full(s.n);
    VertexSet b = random_subset(all, rng);
    VertexSet a = random_subset(b, rng);
    i64 lhs = perimeter(s, a) + perimeter(s, b - a);
    i64 rhs = perimeter(s, b) + 2 * relative_perimeter(s, b, a);
    check(lhs == rhs, "perimeter splitting identity failed");
  }
  std::cout << "[ok] perimeter splitting identity (40 random spaces)\n";

  Rng rng2(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int round = 0; round < 40; ++round) {
    Space s = random_grid(rng2, 6, true);
    std::vector<i64> f(s.n);
    i64 top = std::numeric_limits<i64>::min();
    for (i64& v : f) {
      v = static_cast<i64>(rng2.below(9)) - 4;
      top = std::max(top, v);
    }
    auto profile = coarea_profile(s, f);
    i128 layered = 0;
    for (size_t i = 0; i < profile.size(); ++i) {
      i64 next = i + 1 < profile.size() ? profile[i + 1].first : top;
      layered += static_cast<i128>(next - profile[i].first) * profile[i].second;
    }
    check(layered == static_cast<i128>(total_variation(s, f)),
          "layer-cake reconstruction of the total variation failed");
  }
  std::cout << "[ok] layer-cake reconstruction of total variation (40 random functions)\n";

  Rng rng3(seed ^ 0x2545f4914f6cdd1dULL);
  Space s = random_grid(rng3, 40, true);
  VertexSet a = random_subset(VertexSet::full(s.n), rng3);
  std::vector<i64> f(s.n);
  for (i64& v : f) v = static_cast<i64>(rng3.below(1000)) - 500;
  check(perimeter(s, a) == reference::perimeter(s, a),
        "parallel and reference perimeter disagree");
  check(total_variation(s, f) == reference::total_variation(s, f),
        "parallel and reference total variation disagree");
  std::cout << "[ok] parallel kernels match the serial reference\n";
}

void check_oracle(u64 seed) {
  Rng rng(seed + 1);
  const std::vector<Fraction> lambdas = {Fraction{1, 4}, Fraction{1, 1}, Fraction{4, 1}};
  for (int round = 0; round < 20; ++round) {
    Space s = random_grid(rng, 5, true);
    VertexSet omega = random_subset(VertexSet::full(s.n), rng);
    if (omega.empty()) continue;
    for (Variant variant : {Variant::kInsideOnly, Variant::kSymmetricDifference}) {
      Fraction lambda = lambdas[rng.below(lambdas.size())];
      MinimizeResult res = minimize(s, omega, variant, lambda);
      const VertexSet& pool =
          variant == Variant::kInsideOnly ? omega : VertexSet::full(s.n);
      for (int probe = 0; probe < 60; ++probe) {
        VertexSet candidate = random_subset(pool, rng);
        ExactValue e = evaluate(s, omega, variant, candidate, lambda);
        check(e.den == res.value.den && e.num >= res.value.num,
              "a random candidate beat the reported minimum");
      }
    }
  }
  std::cout << "[ok] minimizer dominates random candidates (20 spaces x 2 variants x 60)\n";

  Rng rng2(seed + 2);
  for (int round = 0; round < 10; ++round) {
    Space s = random_grid(rng2, 5, true);
    VertexSet omega = random_subset(VertexSet::full(s.n), rng2);
    if (omega.empty()) continue;
    SweepResult sw = sweep(s, omega, Variant::kInsideOnly, lambdas);
    check(sw.nested, "sweep produced non-nested optimal sets");
    check(sweep_concave(sw), "optimal value is not concave along the sweep");
  }
  std::cout << "[ok] sweeps are nested with concave values (10 random spaces)\n";

  Rng rng3(seed + 3);
  int calibrated = 0;
  for (int round = 0; round < 20 && calibrated < 8; ++round) {
    Space s = random_grid(rng3, 7, false);
    VertexSet omega = random_subset(VertexSet::full(s.n), rng3);
    if (omega.empty() || omega == VertexSet::full(s.n)) continue;
    i64 eps = s.measure_of(omega) / 2;
    if (eps <= 0) continue;
    LambdaEstimate est;
    try {
      est = estimate_lambda(s, omega, eps);
    } catch (const ScaleError&) {
      continue;  // boundary layers too fat at this resolution; skip
    }
    check(frac_cmp(est.lambda.num, est.lambda.den, s.scale, est.radius) > 0,
          "estimated lambda is not above 1 / radius");
    check(2 * est.ball_measure < eps, "boundary layer exceeds half of epsilon");
    check(!est.layers.empty(), "calibration reported no level cuts");
    for (const LayerCut& layer : est.layers) {
      check(layer.cut >= est.certificate, "certificate exceeds one of its level cuts");
    }
    minimize(s, omega, Variant::kInsideOnly, est.lambda);  // exercises the self-checks
    ++calibrated;
  }
  check(calibrated >= 4, "too few random spaces admitted a lambda calibration");
  std::cout << "[ok] lambda calibration postconditions (" << calibrated << " spaces)\n";
}

void check_scenarios() {
  {
    Scenario sc = make_interval();
    const Space& s = sc.space;
    const i64 S = s.scale;
    VertexSet b_open = VertexSet::of(s.n, {1, 2, 4, 5});
    VertexSet b_closed = VertexSet::of(s.n, {1, 2, 3, 4, 5});
    VertexSet a = VertexSet::of(s.n, {1, 2});
    check(perimeter(s, a) + perimeter(s, b_open - a) ==
              perimeter(s, b_open) + 2 * relative_perimeter(s, b_open, a),
          "interval: splitting identity failed on the open pair");
    check(perimeter(s, a) + perimeter(s, b_closed - a) ==
              perimeter(s, b_closed) + 2 * relative_perimeter(s, b_closed, a),
          "interval: splitting identity failed on the closed pair");
    EssentialCut cut = essential_perimeter(s, b_open);
    check(cut.value == 2 * S, "interval: essential perimeter is not 2");
    check(cut.representative == b_closed,
          "interval: essential representative should fill the null vertex");
    std::cout << "[ok] interval fixture\n";
  }
  {
    Scenario sc = make_fat_cantor(3);
    const Space& s = sc.space;
    const i64 S = s.scale;
    check(sc.segments.size() == 8, "fat cantor: expected 8 kept intervals at level 3");
    check(s.measure_of(sc.omega) == S / 2 + S / 16, "fat cantor: kept measure is off");
    check(perimeter(s, sc.omega) == 16 * S, "fat cantor: perimeter is off");
    std::cout << "[ok] fat cantor fixture (level 3)\n";
  }
  {
    Scenario sc = make_square(16, Fraction{1, 1}, 1, false);
    MinimizeResult res = minimize(sc.space, sc.omega, Variant::kInsideOnly, Fraction{2, 1});
    check(res.minimal == sc.omega && res.maximal == sc.omega,
          "square: the full square should be the unique minimizer at lambda 2");
    std::cout << "[ok] square minimization fixture (16 x 16, lambda 2)\n";
  }
  {
    Scenario sc = make_tripod(0, Fraction{1, 16});
    const Space& s = sc.space;
    const i64 S = s.scale;
    check(sc.family.size() == 1 && sc.family[0].name == "fan-0", "tripod: missing fan-0");
    check(s.measure_of(sc.family[0].set) == S / 16, "tripod: fan-0 measure is off");
    check(relative_perimeter(s, sc.omega, sc.family[0].set) == S / 4,
          "tripod: fan-0 relative perimeter is off");
    check(sc.john.size() == 1, "tripod: expected one probe case");
    JohnResult jr = john_probe(s, sc.omega, sc.john[0].base, sc.john[0].escape_radius);
    check(jr.ratio.is_positive(), "tripod: probe ratio should be positive");
    std::cout << "[ok] tripod fixture (k = 0, h = 1/16)\n";
  }
  {
    Scenario sc = make_triangles_atoms(1, Fraction{1, 16});
    const Space& s = sc.space;
    check(sc.atoms.size() == 1, "triangles: expected one atom");
    check(s.measure[sc.atoms[0]] == s.scale / 2, "triangles: atom mass is off");
    check(sc.family.size() == 1 && !sc.family[0].set.empty(), "triangles: missing triangle-1");
    check(sc.family[0].set.is_subset_of(sc.omega), "triangles: triangle outside the domain");
    check(relative_perimeter(s, sc.omega, sc.family[0].set) > 0,
          "triangles: triangle should have positive relative perimeter");
    std::cout << "[ok] triangles-with-atoms fixture (n = 1, h = 1/16)\n";
  }
}

int run_check(const std::string& suite, u64 seed) {
  try {
    if (suite == "identities" || suite == "all") check_identities(seed);
    if (suite == "oracle" || suite == "all") check_oracle(seed);
    if (suite == "scenarios" || suite == "all") check_scenarios();
  } catch (const CheckFailure& e) {
    std::cout << "[FAIL] " << e.what() << "\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact perimeter minimization on weighted graph spaces"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string lambda_text, epsilon_text, lambdas_text, set_base;
  u64 probes = 1000, seed = 0;
  std::string suite = "all";

  auto add_common = [&](CLI::App* cmd, bool with_variant) {
    cmd->add_option("--scenario", opt.scenario, "scenario description file (JSON)")
        ->required();
    if (with_variant) {
      cmd->add_option("--variant", opt.variant,
                      "which mass the penalty charges: inside (uncovered domain mass) or "
                      "symdiff (symmetric difference with the domain)")
          ->check(CLI::IsMember({"inside", "symdiff"}));
    }
    cmd->add_option("--out", opt.out, "directory for report.json and PGM masks");
    cmd->add_flag("--no-timing", opt.no_timing, "omit timings so output is reproducible");
  };

  CLI::App* cmd_min = app.add_subcommand("minimize", "minimize perimeter plus mass penalty");
  add_common(cmd_min, true);
  cmd_min->add_option("--lambda", lambda_text, "penalty strength (fraction)");
  cmd_min->add_option("--epsilon", epsilon_text,
                      "pick lambda automatically for this mass deficit target (fraction)");

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "minimize along an increasing lambda list");
  add_common(cmd_sweep, true);
  cmd_sweep->add_option("--lambdas", lambdas_text, "comma separated increasing fractions")
      ->required();

  CLI::App* cmd_probe =
      app.add_subcommand("probe", "random subsets test the extension inequalities");
  add_common(cmd_probe, true);
  cmd_probe->add_option("--lambda", lambda_text, "penalty strength (fraction)")->required();
  cmd_probe->add_option("--set", set_base, "probe this mask (base path) instead of minimizing");
  cmd_probe->add_option("--probes", probes, "number of random subsets");
  cmd_probe->add_option("--seed", seed, "random seed");

  CLI::App* cmd_check = app.add_subcommand("check", "run the self-test battery");
  cmd_check->add_option("--suite", suite, "identities, oracle, scenarios, or all")
      ->check(CLI::IsMember({"identities", "oracle", "scenarios", "all"}));
  cmd_check->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_min)) return run_minimize(opt, lambda_text, epsilon_text);
    if (app.got_subcommand(cmd_sweep)) return run_sweep(opt, lambdas_text);
    if (app.got_subcommand(cmd_probe)) return run_probe(opt, lambda_text, set_base, probes, seed);
    if (app.got_subcommand(cmd_check)) return run_check(suite, seed);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ScaleError& e) {
    std::cerr << "scale error: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
