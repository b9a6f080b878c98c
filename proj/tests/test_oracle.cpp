#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "feyn/oracle.hpp"
#include "feyn/reduce.hpp"

using namespace feyn;

// Frozen census of connected rooted graphs up to 6 standard vertices,
// obtained from the independent exhaustive enumeration.
TEST_CASE("census up to six vertices") {
  Census c = census(6, is_melon_free);
  CHECK(c.total == 119365);
  CHECK(c.count(0, 0, 0) == 1);
  CHECK(c.count(2, 0, 0) == 1);
  CHECK(c.count(4, 0, 0) == 4);
  CHECK(c.count(4, 1, 0) == 1);
  CHECK(c.count(6, 0, 0) == 22);
  CHECK(c.count(6, 1, 0) == 12);
  CHECK(c.count(6, 2, 0) == 1);
  // genus zero is exactly the melonic sector: no melon-free graphs besides
  // the cycle graph
  CHECK(c.count(0, 0, 0, true) == 1);
  CHECK(c.count(2, 0, 0, true) == 0);
  CHECK(c.count(4, 0, 0, true) == 0);
  CHECK(c.count(6, 0, 0, true) == 0);
  // melon-free positive genus
  CHECK(c.count(4, 1, 0, true) == 1);
  CHECK(c.count(6, 1, 0, true) == 3);
  CHECK(c.count(6, 2, 0, true) == 1);
}

TEST_CASE("parallel census is bit-identical to sequential") {
  Census seq = census(5, is_melon_free);
  for (int threads : {2, 3, 8}) {
    Census par = census_parallel(5, threads, is_melon_free);
    CHECK(par.total == seq.total);
    CHECK(par.rows == seq.rows);
  }
}

TEST_CASE("enumeration emits canonical representatives exactly once") {
  std::set<std::string> codes;
  int64_t total = 0;
  enumerate_rooted(5, [&](const Graph& g) {
    CHECK(is_connected(g));
    ++total;
    codes.insert(canonical_hex(g));
  });
  CHECK(static_cast<int64_t>(codes.size()) == total);
}

TEST_CASE("two-particle-irreducible counts at genus one") {
  // frozen: at genus 1 and grade 0 the 2PI graphs number 1, 0 at v = 4, 6
  std::map<int, int> cnt;
  enumerate_rooted(6, [&](const Graph& g) {
    Invariants inv = invariants(g);
    if (inv.g == 1 && inv.ell == 0 && is_2pi(g)) ++cnt[inv.v];
  });
  CHECK(cnt[4] == 1);
  CHECK(cnt[6] == 0);
}
