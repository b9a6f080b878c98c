#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "feyn/io.hpp"
#include "feyn/oracle.hpp"
#include "feyn/stranded.hpp"
#include "helpers.hpp"

using namespace feyn;

TEST_CASE("cycle graph invariants") {
  Graph g = cycle_graph();
  Invariants inv = invariants(g);
  CHECK(inv.v == 0);
  CHECK(inv.e == 1);
  CHECK(inv.g == 0);
  CHECK(inv.ell == 0);
  CHECK(inv.f_l == 1);
  CHECK(inv.f_r == 1);
  CHECK(inv.phi == 1);
}

TEST_CASE("rooted melon invariants") {
  Graph g = testutil::rooted_melon();
  Invariants inv = invariants(g);
  CHECK(inv.v == 2);
  CHECK(inv.g == 0);
  CHECK(inv.ell == 0);
  CHECK(inv.f_l + inv.f_r == 4);  // 2 - 2g = -v + f
}

TEST_CASE("minimal genus-one graph") {
  Graph g = testutil::s1_minimal();
  Invariants inv = invariants(g);
  CHECK(inv.v == 4);
  CHECK(inv.g == 1);
  CHECK(inv.ell == 0);
}

TEST_CASE("cross-closed straight ladders: even length genus 1, odd grade 2") {
  for (int k = 2; k <= 5; ++k) {
    Graph g = testutil::cross_closed_ladder(
        std::vector<DipKind>(k, DipKind::N));
    Invariants inv = invariants(g);
    CHECK(inv.v == 2 * k);
    if (k % 2 == 0) {
      CHECK(inv.g == 1);
      CHECK(inv.ell == 0);
    } else {
      CHECK(inv.ell == 2);
    }
  }
}

TEST_CASE("canonical code is invariant under relabeling and rotation") {
  std::mt19937 rng(12345);
  int checked = 0;
  enumerate_rooted(4, [&](const Graph& g) {
    std::string ref = canonical_hex(g);
    for (int rep = 0; rep < 3; ++rep) {
      Graph h = testutil::random_relabel(g, rng);
      CHECK(canonical_hex(h) == ref);
      CHECK(invariants(h) == invariants(g));
    }
    ++checked;
  });
  CHECK(checked > 100);
}

TEST_CASE("canonical code separates non-isomorphic graphs") {
  // enumeration emits each isomorphism class once, so all codes are distinct
  std::set<std::string> codes;
  int total = 0;
  enumerate_rooted(5, [&](const Graph& g) {
    codes.insert(canonical_hex(g));
    ++total;
  });
  CHECK(static_cast<int>(codes.size()) == total);
}

TEST_CASE("root insertion and smoothing are mutually inverse") {
  enumerate_rooted(3, [&](const Graph& g) {
    // smooth the root, then re-root on the merged edge
    if (g.num_standard() == 0) return;  // cycle graph smooths to nothing
    Graph h = smooth_root(g);
    Slot tail = g.mate({g.root, 1});
    // translate: smooth_root keeps labels except the removed root
    Slot t2{tail.v > g.root ? tail.v - 1 : tail.v, tail.s};
    Graph back = add_root_on_edge(h, t2);
    CHECK(canonical_hex(back) == canonical_hex(g));
  });
}

TEST_CASE("two-particle irreducibility: basic instances") {
  CHECK(is_2pi(cycle_graph()));
  CHECK(is_2pi(testutil::rooted_melon()));
  CHECK(is_2pi(testutil::s1_minimal()));
  // A melon inserted inside another melon's edge is 2-particle reducible.
  Graph g = testutil::rooted_melon();
  Melon inner = find_melons(g).at(0);
  // build: take edge a.0 -> b.1 and splice a fresh melon into it
  Graph h = g;
  Slot tail{1, 0};
  Slot head = h.mate(tail);
  h.disconnect(tail);
  int a = h.add_vertex(VKind::Std), b = h.add_vertex(VKind::Std);
  h.connect(a, 0, b, 1);
  h.connect(a, 2, b, 3);
  h.connect(b, 2, a, 3);
  h.connect(tail, {a, 1});
  h.connect({b, 0}, head);
  h.check();
  Invariants inv = invariants(h);
  CHECK(inv.v == 4);
  CHECK(inv.g == 0);
  CHECK(inv.ell == 0);
  CHECK_FALSE(is_2pi(h));
  (void)inner;
}

TEST_CASE("json round trip") {
  std::mt19937 rng(7);
  enumerate_rooted(4, [&](const Graph& g) {
    if (rng() % 50 != 0) return;
    Graph h = graph_from_json(graph_to_json(g));
    CHECK(canonical_hex(h) == canonical_hex(g));
  });
  // with ladder vertices
  Graph s;
  int r = s.add_vertex(VKind::Root);
  int lv = s.add_vertex(VKind::Ne);
  s.connect(r, 0, lv, 1);
  s.connect(lv, 2, r, 1);
  s.connect(lv, 0, lv, 3);
  s.check();
  Graph back = graph_from_json(graph_to_json(s));
  CHECK(back.kinds == s.kinds);
  CHECK(canonical_hex(back) == canonical_hex(s));
}
