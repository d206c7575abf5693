#include "perimin/minimize.hpp"

#include <algorithm>

#include "perimin/functional.hpp"
#include "perimin/mincut.hpp"

namespace perimin {

std::string variant_name(Variant v) {
  return v == Variant::kInsideOnly ? "inside" : "symdiff";
}

Variant variant_from_name(const std::string& name) {
  if (name == "inside") return Variant::kInsideOnly;
  if (name == "symdiff") return Variant::kSymmetricDifference;
  throw InputError("unknown variant '" + name + "' (expected inside or symdiff)");
}

namespace {

void check_lambda(Fraction lambda) {
  if (lambda.num < 0) throw InputError("lambda must be nonnegative");
}

void check_inputs(const Space& s, const VertexSet& omega, Fraction lambda) {
  check_lambda(lambda);
  if (omega.universe_size() != s.n) throw InputError("domain does not belong to this space");
}

}  // namespace

ExactValue evaluate(const Space& s, const VertexSet& omega, Variant variant,
                    const VertexSet& a, Fraction lambda) {
  check_inputs(s, omega, lambda);
  if (a.universe_size() != s.n) throw InputError("candidate set does not belong to this space");
  if (variant == Variant::kInsideOnly && !a.is_subset_of(omega)) {
    throw InputError("inside-only energy needs the candidate inside the domain");
  }
  const VertexSet penalized = variant == Variant::kInsideOnly ? omega - a : omega ^ a;
  i128 num = static_cast<i128>(perimeter(s, a)) * lambda.den +
             static_cast<i128>(s.measure_of(penalized)) * lambda.num;
  ExactValue val;
  val.num = checked_narrow(num, "energy value");
  val.den = checked_mul(s.scale, lambda.den, "energy denominator");
  return val;
}

MinimizeResult minimize(const Space& s, const VertexSet& omega, Variant variant,
                        Fraction lambda) {
  check_inputs(s, omega, lambda);

  FlowNetwork net(s.n);
  for (size_t e = 0; e < s.edge_count(); ++e) {
    i64 c = checked_mul(s.edge_cap[e], lambda.den, "cut capacity");
    net.add_pairwise(s.edge_u[e], s.edge_v[e], c, c);
  }
  for (u32 v = 0; v < s.n; ++v) {
    if (omega.contains(v)) {
      // Excluding a domain vertex costs lambda * measure.
      net.add_source(v, checked_mul(lambda.num, s.measure[v], "penalty capacity"));
    } else if (variant == Variant::kInsideOnly) {
      net.add_sink(v, kInfiniteCap);  // candidates may not leave the domain
    } else {
      // Including an outside vertex costs lambda * measure.
      net.add_sink(v, checked_mul(lambda.num, s.measure[v], "penalty capacity"));
    }
  }

  CutResult cut = net.solve();
  if (!cut.feasible) throw InternalError("energy cut is infinite");

  MinimizeResult out;
  out.value.num = cut.value;
  out.value.den = checked_mul(s.scale, lambda.den, "energy denominator");
  out.minimal = std::move(cut.min_source_side);
  out.maximal = std::move(cut.max_source_side);

  ExactValue lo = evaluate(s, omega, variant, out.minimal, lambda);
  ExactValue hi = evaluate(s, omega, variant, out.maximal, lambda);
  if (lo.num != out.value.num || hi.num != out.value.num || !out.minimal.is_subset_of(out.maximal)) {
    throw InternalError("minimizer does not certify the optimal value");
  }
  return out;
}

SweepResult sweep(const Space& s, const VertexSet& omega, Variant variant,
                  const std::vector<Fraction>& lambdas) {
  if (lambdas.empty()) throw InputError("sweep needs at least one lambda");
  for (size_t i = 1; i < lambdas.size(); ++i) {
    if (frac_cmp(lambdas[i - 1].num, lambdas[i - 1].den, lambdas[i].num, lambdas[i].den) >= 0) {
      throw InputError("sweep lambdas must be strictly increasing");
    }
  }
  SweepResult out;
  out.entries.reserve(lambdas.size());
  for (Fraction l : lambdas) {
    out.entries.push_back(SweepEntry{l, minimize(s, omega, variant, l)});
  }
  for (size_t i = 1; i < out.entries.size(); ++i) {
    const auto& prev = out.entries[i - 1].result;
    const auto& cur = out.entries[i].result;
    if (!prev.minimal.is_subset_of(cur.minimal) || !prev.maximal.is_subset_of(cur.maximal)) {
      out.nested = false;
    }
  }
  return out;
}

bool sweep_concave(const SweepResult& sweep) {
  const auto& e = sweep.entries;
  for (size_t i = 2; i < e.size(); ++i) {
    Fraction g1 = e[i - 2].result.value.reduced();
    Fraction g2 = e[i - 1].result.value.reduced();
    Fraction g3 = e[i].result.value.reduced();
    Fraction l1 = e[i - 2].lambda, l2 = e[i - 1].lambda, l3 = e[i].lambda;
    Fraction dg12 = frac_add(g2, Fraction{-g1.num, g1.den});
    Fraction dg23 = frac_add(g3, Fraction{-g2.num, g2.den});
    Fraction dl12 = frac_add(l2, Fraction{-l1.num, l1.den});
    Fraction dl23 = frac_add(l3, Fraction{-l2.num, l2.den});
    // concave iff dg12 / dl12 >= dg23 / dl23
    Fraction lhs = frac_mul(dg12, dl23);
    Fraction rhs = frac_mul(dg23, dl12);
    if (frac_cmp(lhs.num, lhs.den, rhs.num, rhs.den) < 0) return false;
  }
  return true;
}

LambdaEstimate estimate_lambda(const Space& s, const VertexSet& omega, i64 epsilon_scaled) {
  if (omega.universe_size() != s.n) throw InputError("domain does not belong to this space");
  if (epsilon_scaled <= 0) throw InputError("epsilon must be positive");
  if (omega.empty()) throw ScaleError("domain is empty at this resolution");
  VertexSet boundary = exterior_boundary(s, omega);
  if (boundary.empty()) throw ScaleError("domain has no exterior boundary at this resolution");

  std::vector<i64> dist = graph_distance(s, boundary);

  // Distinct distance levels realized inside the domain, ascending.
  std::vector<i64> levels;
  omega.for_each([&](u32 v) {
    if (dist[v] == kUnreachable) {
      throw ScaleError("domain has vertices unreachable from its boundary");
    }
    levels.push_back(dist[v]);
  });
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // One extra level past the deepest vertex: the layer below it is all of
  // Omega, the honest candidate when the whole domain is thin.
  i64 step = s.edge_len.empty() ? s.uniform_len : *std::min_element(s.edge_len.begin(), s.edge_len.end());
  if (step <= 0) throw ScaleError("domain has no edges to measure depth with");
  levels.push_back(checked_add(levels.back(), step, "distance level"));

  // r* = the largest level whose strict layer stays below epsilon / 2.
  i64 radius = -1, ball_measure = 0;
  i64 running = 0;  // measure of {dist < level} accumulated level by level
  std::vector<std::pair<i64, i64>> layer_measures;  // (level, measure below it)
  {
    // Sort domain vertices by distance so layer measures accumulate in one pass.
    std::vector<u32> order;
    order.reserve(omega.count());
    omega.for_each([&](u32 v) { order.push_back(v); });
    std::sort(order.begin(), order.end(), [&](u32 a, u32 b) { return dist[a] < dist[b]; });
    size_t next = 0;
    for (i64 level : levels) {
      while (next < order.size() && dist[order[next]] < level) {
        running = checked_add(running, s.measure[order[next]], "layer measure");
        ++next;
      }
      layer_measures.push_back({level, running});
      if (static_cast<i128>(2) * running < epsilon_scaled) {
        radius = level;
        ball_measure = running;
      }
    }
  }
  if (radius < 0) {
    throw ScaleError("no boundary layer below epsilon/2 exists at this resolution");
  }

  LambdaEstimate out;
  out.radius = radius;
  out.ball_measure = ball_measure;

  // lambda: the next fraction above scale / radius (space units 1 / r) whose
  // denominator stays within the capacity scale.
  Fraction inv = Fraction::make(s.scale, radius);
  i64 mult = std::max<i64>(1, s.scale / inv.den);
  out.lambda = Fraction::make(checked_add(checked_mul(inv.num, mult, "lambda"), 1, "lambda"),
                              checked_mul(inv.den, mult, "lambda"));

  // Candidate level cuts at every level up to r*.
  out.certificate = kInfiniteCap;
  VertexSet layer(s.n);
  size_t consumed = 0;
  std::vector<u32> order;
  order.reserve(omega.count());
  omega.for_each([&](u32 v) { order.push_back(v); });
  std::sort(order.begin(), order.end(), [&](u32 a, u32 b) { return dist[a] < dist[b]; });
  for (auto [level, mass] : layer_measures) {
    if (level > radius) break;
    while (consumed < order.size() && dist[order[consumed]] < level) {
      layer.insert(order[consumed]);
      ++consumed;
    }
    LayerCut lc;
    lc.radius = level;
    lc.layer_measure = mass;
    lc.cut = relative_perimeter(s, omega, omega - layer);
    out.certificate = std::min(out.certificate, lc.cut);
    out.layers.push_back(lc);
  }

  out.bound = Fraction::make(ball_measure, radius);
  // certificate / scale <= ball_measure / radius must hold by the averaging
  // argument over the layers; a failure means the layer accounting is broken.
  if (static_cast<i128>(out.certificate) * radius >
      static_cast<i128>(ball_measure) * s.scale) {
    throw InternalError("level-cut certificate exceeds its ceiling");
  }
  return out;
}

ExtensionResult best_extension(const Space& s, const VertexSet& omega, const VertexSet& a) {
  if (omega.universe_size() != s.n || a.universe_size() != s.n) {
    throw InputError("sets do not belong to this space");
  }
  if (!a.is_subset_of(omega)) throw InputError("extension base must lie inside the domain");

  FlowNetwork net(s.n);
  for (size_t e = 0; e < s.edge_count(); ++e) {
    net.add_pairwise(s.edge_u[e], s.edge_v[e], s.edge_cap[e], s.edge_cap[e]);
  }
  for (u32 v = 0; v < s.n; ++v) {
    if (a.contains(v)) {
      net.add_source(v, kInfiniteCap);
    } else if (omega.contains(v)) {
      net.add_sink(v, kInfiniteCap);
    } else {
      net.add_sink(v, s.measure[v]);  // including a free vertex costs its mass
    }
  }
  CutResult cut = net.solve();
  if (!cut.feasible) throw InternalError("extension cut is infinite");

  ExtensionResult out;
  out.extension = std::move(cut.min_source_side);
  out.value.num = checked_add(cut.value, s.measure_of(a), "extension value");
  out.value.den = s.scale;

  // Self-check: the returned set's mass + perimeter equals the reported value.
  i64 direct = checked_add(s.measure_of(out.extension), perimeter(s, out.extension),
                           "extension value");
  if (direct != out.value.num) throw InternalError("extension does not certify its value");
  return out;
}

}  // namespace perimin
