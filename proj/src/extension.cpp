#include "perimin/extension.hpp"

#include <algorithm>

#include "perimin/functional.hpp"

namespace perimin {

VertexSet sample_connected_subset(const Space& s, const VertexSet& within, Rng& rng,
                                  u32 max_size) {
  std::vector<u32> members = within.to_vector();
  if (members.empty()) throw InputError("cannot sample from an empty set");
  if (max_size == 0) max_size = 1;

  u32 seed_vertex = members[rng.below(members.size())];
  u32 target = 1 + static_cast<u32>(rng.below(max_size));

  VertexSet picked(s.n);
  picked.insert(seed_vertex);
  std::vector<u32> frontier{seed_vertex};
  u32 count = 1;
  while (count < target && !frontier.empty()) {
    size_t at = rng.below(frontier.size());
    u32 u = frontier[at];
    frontier[at] = frontier.back();
    frontier.pop_back();
    for (u32 k = s.adj_off[u]; k < s.adj_off[u + 1] && count < target; ++k) {
      u32 v = s.adj_nbr[k];
      if (!within.contains(v) || picked.contains(v)) continue;
      if (rng.below(4) == 0) continue;  // prune a quarter of expansions
      picked.insert(v);
      frontier.push_back(v);
      ++count;
    }
  }
  return picked;
}

VertexSet sample_bernoulli_subset(const Space& s, const VertexSet& within, Rng& rng) {
  VertexSet picked(s.n);
  u64 threshold = rng.next();  // acceptance bar: p = threshold / 2^64
  within.for_each([&](u32 v) {
    if (rng.next() < threshold) picked.insert(v);
  });
  return picked;
}

ProbeReport check_extension_inequality(const Space& s, const VertexSet& g, Fraction lambda,
                                       u64 probes, u64 seed) {
  if (g.universe_size() != s.n) throw InputError("set does not belong to this space");
  if (lambda.num < 0) throw InputError("lambda must be nonnegative");
  if (g.empty()) throw InputError("cannot probe an empty minimizer");

  Rng rng(seed);
  ProbeReport report;
  const u32 g_size = g.count();

  for (u64 i = 0; i < probes; ++i) {
    VertexSet a;
    for (int attempt = 0; attempt < 64; ++attempt) {
      a = (i % 2 == 0) ? sample_connected_subset(s, g, rng, g_size)
                       : sample_bernoulli_subset(s, g, rng);
      if (!a.empty()) break;
    }
    if (a.empty()) throw InternalError("probe sampling kept returning empty sets");

    const i64 per = perimeter(s, a);
    const i64 rel = relative_perimeter(s, g, a);
    const i64 mass = s.measure_of(a);
    ++report.probes;

    // Per(A) <= 2 Per_G(A) + lambda * mass(A), exact in scaled integers.
    i128 lhs = static_cast<i128>(per) * lambda.den;
    i128 rhs = static_cast<i128>(2) * rel * lambda.den + static_cast<i128>(lambda.num) * mass;
    bool violated = lhs > rhs;
    if (rhs > 0) {
      double r = static_cast<double>(lhs) / static_cast<double>(rhs);
      if (r > report.worst_perimeter_ratio) {
        report.worst_perimeter_ratio = r;
        report.worst_size = a.count();
      }
    }

    // (mass + Per) / (mass + Per_G) <= max(2, lambda + 1), exact.
    i64 num = checked_add(mass, per, "norm ratio");
    i64 den = checked_add(mass, rel, "norm ratio");
    if (den > 0) {
      // bound = max(2, lambda + 1) = max(2*den, num+den) / den in lambda parts
      i64 bnum = std::max<i64>(2 * lambda.den, checked_add(lambda.num, lambda.den, "bound"));
      if (static_cast<i128>(num) * lambda.den > static_cast<i128>(den) * bnum) violated = true;
      double r = static_cast<double>(num) / static_cast<double>(den);
      report.worst_norm_ratio = std::max(report.worst_norm_ratio, r);
    } else if (num > 0) {
      violated = true;  // positive content with no in-domain counterpart
    }

    if (violated) ++report.violations;
  }
  return report;
}

NormRatio zero_extension_norm_ratio(const Space& s, const VertexSet& g, const VertexSet& a) {
  if (!a.is_subset_of(g)) throw InputError("norm ratio needs the set inside the ambient set");
  NormRatio out;
  out.num = checked_add(s.measure_of(a), perimeter(s, a), "norm ratio");
  out.den = checked_add(s.measure_of(a), relative_perimeter(s, g, a), "norm ratio");
  if (out.den == 0) throw InputError("degenerate set: no mass and no relative perimeter");
  return out;
}

std::vector<WitnessRatio> non_extension_witness(const Space& s, const VertexSet& omega,
                                                const std::vector<VertexSet>& family) {
  std::vector<WitnessRatio> out;
  out.reserve(family.size());
  for (const VertexSet& a : family) {
    WitnessRatio w;
    w.extension_value = best_extension(s, omega, a).value;
    w.base_num = checked_add(s.measure_of(a), relative_perimeter(s, omega, a), "witness ratio");
    if (w.base_num == 0) throw InputError("degenerate family member: no mass and no relative perimeter");
    out.push_back(w);
  }
  return out;
}

}  // namespace perimin
