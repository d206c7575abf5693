#include "perimin/mincut.hpp"

#include <algorithm>

namespace perimin {

i64 FlowNetwork::sat_add(i64 a, i64 b) {
  if (a == kInfiniteCap || b == kInfiniteCap) return kInfiniteCap;
  return checked_add(a, b, "terminal capacity");
}

void FlowNetwork::add_pairwise(u32 u, u32 v, i64 cap_uv, i64 cap_vu) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InputError("pairwise capacity on a single vertex");
  if (cap_uv < 0 || cap_vu < 0) throw InputError("negative capacity");
  pairs_.push_back(Pairwise{u, v, cap_uv, cap_vu});
}

void FlowNetwork::add_source(u32 v, i64 cap) {
  check_vertex(v);
  if (cap < 0) throw InputError("negative capacity");
  src_[v] = sat_add(src_[v], cap);
}

void FlowNetwork::add_sink(u32 v, i64 cap) {
  check_vertex(v);
  if (cap < 0) throw InputError("negative capacity");
  snk_[v] = sat_add(snk_[v], cap);
}

CutResult FlowNetwork::solve() {
  if (solved_) throw InternalError("FlowNetwork::solve called twice");
  solved_ = true;

  // Finite stand-in for the infinite capacity: strictly larger than any cut
  // made of finite capacities.
  i128 finite_sum = 0;
  for (const Pairwise& p : pairs_) {
    if (p.cap_uv != kInfiniteCap) finite_sum += p.cap_uv;
    if (p.cap_vu != kInfiniteCap) finite_sum += p.cap_vu;
  }
  for (u32 v = 0; v < n_; ++v) {
    if (src_[v] != kInfiniteCap) finite_sum += src_[v];
    if (snk_[v] != kInfiniteCap) finite_sum += snk_[v];
  }
  if (finite_sum > (static_cast<i128>(1) << 61)) {
    throw ScaleError("flow network capacities too large");
  }
  const i64 inf = static_cast<i64>(finite_sum) + 1;
  auto definite = [&](i64 c) { return c == kInfiniteCap ? inf : c; };

  // Flow pushed directly source -> v -> sink, before any network search.
  i128 base_flow = 0;
  for (u32 v = 0; v < n_; ++v) {
    if (src_[v] == kInfiniteCap && snk_[v] == kInfiniteCap) {
      throw InputError("vertex clamped to both terminals");
    }
    i64 s = definite(src_[v]), t = definite(snk_[v]);
    i64 d = std::min(s, t);
    if (d > 0) {
      base_flow += d;
      if (src_[v] != kInfiniteCap) src_[v] = s - d;
      if (snk_[v] != kInfiniteCap) snk_[v] = t - d;
    }
  }

  // Arc arrays, paired so that arc a's reverse is a ^ 1.  Node ids: the n
  // vertices, then source = n_, sink = n_ + 1.
  const u32 s_node = n_, t_node = n_ + 1, num_nodes = n_ + 2;
  std::vector<u32> arc_to;
  std::vector<i64> cap;
  std::vector<u32> deg(num_nodes + 1, 0);

  auto count_arc = [&](u32 a, u32 b) {
    ++deg[a + 1];
    ++deg[b + 1];
  };
  for (const Pairwise& p : pairs_) count_arc(p.u, p.v);
  std::vector<u32> src_vertices, snk_vertices;
  for (u32 v = 0; v < n_; ++v) {
    if (src_[v] > 0) {
      count_arc(s_node, v);
      src_vertices.push_back(v);
    }
    if (snk_[v] > 0) {
      count_arc(v, t_node);
      snk_vertices.push_back(v);
    }
  }

  const size_t num_arcs = 2 * (pairs_.size() + src_vertices.size() + snk_vertices.size());
  arc_to.resize(num_arcs);
  cap.resize(num_arcs);
  std::vector<u32> off(num_nodes + 1, 0);
  for (u32 v = 0; v < num_nodes; ++v) off[v + 1] = off[v] + deg[v + 1];
  std::vector<u32> arc_of(num_arcs);  // CSR payload: arc ids per node
  std::vector<u32> cursor(off.begin(), off.end() - 1);

  u32 next_arc = 0;
  auto put_arc = [&](u32 a, u32 b, i64 cab, i64 cba) {
    arc_to[next_arc] = b;
    cap[next_arc] = cab;
    arc_of[cursor[a]++] = next_arc++;
    arc_to[next_arc] = a;
    cap[next_arc] = cba;
    arc_of[cursor[b]++] = next_arc++;
  };
  for (const Pairwise& p : pairs_) put_arc(p.u, p.v, definite(p.cap_uv), definite(p.cap_vu));
  for (u32 v : src_vertices) put_arc(s_node, v, definite(src_[v]), 0);
  for (u32 v : snk_vertices) put_arc(v, t_node, definite(snk_[v]), 0);

  // Dinic phases.
  constexpr u32 kNoLevel = ~u32{0};
  std::vector<u32> level(num_nodes), iter(num_nodes), bfs_queue;
  bfs_queue.reserve(num_nodes);
  i128 flow = base_flow;

  std::vector<u32> path;  // arc ids of the current partial path
  for (;;) {
    std::fill(level.begin(), level.end(), kNoLevel);
    bfs_queue.clear();
    bfs_queue.push_back(s_node);
    level[s_node] = 0;
    size_t head = 0;
    while (head < bfs_queue.size()) {
      u32 u = bfs_queue[head++];
      for (u32 k = off[u]; k < off[u + 1]; ++k) {
        u32 a = arc_of[k];
        u32 to = arc_to[a];
        if (cap[a] > 0 && level[to] == kNoLevel) {
          level[to] = level[u] + 1;
          bfs_queue.push_back(to);
        }
      }
    }
    if (level[t_node] == kNoLevel) break;

    std::copy(off.begin(), off.end() - 1, iter.begin());
    path.clear();
    u32 v = s_node;
    for (;;) {
      if (v == t_node) {
        i64 push = kInfiniteCap;
        for (u32 a : path) push = std::min(push, cap[a]);
        for (u32 a : path) {
          cap[a] -= push;
          cap[a ^ 1] += push;
        }
        flow += push;
        // Retreat to the tail of the first saturated arc.
        size_t cutpos = 0;
        while (cutpos < path.size() && cap[path[cutpos]] > 0) ++cutpos;
        path.resize(cutpos);
        v = path.empty() ? s_node : arc_to[path.back()];
        continue;
      }
      bool advanced = false;
      for (u32& k = iter[v]; k < off[v + 1]; ++k) {
        u32 a = arc_of[k];
        u32 to = arc_to[a];
        if (cap[a] > 0 && level[to] == level[v] + 1) {
          path.push_back(a);
          v = to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      level[v] = kNoLevel;  // dead end in this phase
      if (v == s_node) break;
      path.pop_back();
      v = path.empty() ? s_node : arc_to[path.back()];
    }
  }

  // Minimal source side: forward residual reachability from the source.
  auto reach = [&](u32 start, bool forward) {
    std::vector<char> seen(num_nodes, 0);
    bfs_queue.clear();
    bfs_queue.push_back(start);
    seen[start] = 1;
    size_t head = 0;
    while (head < bfs_queue.size()) {
      u32 u = bfs_queue[head++];
      for (u32 k = off[u]; k < off[u + 1]; ++k) {
        u32 a = arc_of[k];
        u32 to = arc_to[a];
        // forward: residual arc u -> to.  backward: residual arc to -> u,
        // whose capacity lives on the paired arc.
        i64 c = forward ? cap[a] : cap[a ^ 1];
        if (c > 0 && !seen[to]) {
          seen[to] = 1;
          bfs_queue.push_back(to);
        }
      }
    }
    return seen;
  };

  std::vector<char> from_s = reach(s_node, true);
  std::vector<char> to_t = reach(t_node, false);

  CutResult result;
  result.min_source_side = VertexSet(n_);
  result.max_source_side = VertexSet(n_);
  for (u32 v = 0; v < n_; ++v) {
    if (from_s[v]) result.min_source_side.insert(v);
    if (!to_t[v]) result.max_source_side.insert(v);
  }
  if (from_s[t_node] || to_t[s_node]) {
    throw InternalError("max-flow terminated with an augmenting path left");
  }
  result.value = checked_narrow(flow, "cut value");
  result.feasible = result.value < inf;

  // Self-check: both returned sides must cut to exactly the flow value,
  // evaluated from the original capacities.
  auto cut_of = [&](const VertexSet& side) {
    i128 total = 0;
    for (const Pairwise& p : pairs_) {
      bool iu = side.contains(p.u), iv = side.contains(p.v);
      if (iu && !iv) total += definite(p.cap_uv);
      if (iv && !iu) total += definite(p.cap_vu);
    }
    for (u32 v = 0; v < n_; ++v) {
      // src_/snk_ were reduced by the pre-push; the cut of the original
      // network differs from the reduced one by exactly base_flow on every
      // source/sink partition, so compare against the reduced caps + base.
      if (!side.contains(v) && src_[v] > 0) total += definite(src_[v]);
      if (side.contains(v) && snk_[v] > 0) total += definite(snk_[v]);
    }
    return total + base_flow;
  };
  if (cut_of(result.min_source_side) != flow || cut_of(result.max_source_side) != flow) {
    throw InternalError("cut sides do not certify the max-flow value");
  }
  return result;
}

}  // namespace perimin
