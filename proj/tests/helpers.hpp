#pragma once
// Shared test fixtures: hand-built reference graphs and relabeling utilities.

#include <random>

#include "feyn/reduce.hpp"
#include "feyn/stranded.hpp"

namespace feyn::testutil {

// Rooted elementary melon: two standard vertices joined by three edges, the
// two external legs closed through the root.  (v,g,ell) = (2,0,0).
inline Graph rooted_melon() {
  Graph g;
  int r = g.add_vertex(VKind::Root);
  int a = g.add_vertex(VKind::Std), b = g.add_vertex(VKind::Std);
  g.connect(a, 0, b, 1);
  g.connect(a, 2, b, 3);
  g.connect(b, 2, a, 3);
  g.connect(r, 0, a, 1);
  g.connect(b, 0, r, 1);
  g.check();
  return g;
}

// k-rung ladder of the given rung types closed crosswise through the root:
// root.0 -> (side A in), (side B out) -> root.1, and a direct edge
// (side A out) -> (side B in).  For an even number of straight rungs this is
// the minimal genus-one family; k = 2 gives the unique (4,1,0) graph.
inline Graph cross_closed_ladder(const std::vector<DipKind>& rungs) {
  Graph g;
  int r = g.add_vertex(VKind::Root);
  BuiltLadder bl = build_ladder(g, rungs);
  g.connect({r, 0}, bl.side_a.in_leg);
  g.connect(bl.side_b.out_leg, {r, 1});
  g.connect(bl.side_a.out_leg, bl.side_b.in_leg);
  g.check();
  return g;
}

inline Graph s1_minimal() {
  return cross_closed_ladder({DipKind::N, DipKind::N});
}

// Apply a vertex relabeling (permutation with perm[old]=new, root fixed-free)
// plus per-vertex slot rotations by rot[v] in {0,2} for 4-slot vertices.
inline Graph relabel(const Graph& g, const std::vector<int>& perm,
                     const std::vector<int>& rot) {
  Graph h;
  std::vector<VKind> kinds(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) kinds[perm[v]] = g.kinds[v];
  std::vector<int> inv(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) inv[perm[v]] = v;
  for (int v = 0; v < g.num_vertices(); ++v) h.add_vertex(kinds[v]);
  auto map_slot = [&](Slot s) -> Slot {
    int r = g.kinds[s.v] == VKind::Root ? 0 : rot[s.v];
    return {perm[s.v], g.kinds[s.v] == VKind::Root ? s.s : ((s.s + r) & 3)};
  };
  for (const Edge& e : g.edges()) h.connect(map_slot(e.tail), map_slot(e.head));
  h.check();
  return h;
}

inline Graph random_relabel(const Graph& g, std::mt19937& rng) {
  std::vector<int> perm(g.num_vertices());
  for (int i = 0; i < g.num_vertices(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> rot(g.num_vertices());
  for (auto& r : rot) r = (rng() & 1) ? 2 : 0;
  return relabel(g, perm, rot);
}

}  // namespace feyn::testutil
