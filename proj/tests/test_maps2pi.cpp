#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "feyn/maps2pi.hpp"
#include "helpers.hpp"

using namespace feyn;

TEST_CASE("cubic map enumeration matches the closed-form counts") {
  // frozen counts: 1, 1, 4, 24, 176
  std::vector<int> expect = {1, 1, 4, 24, 176};
  for (int n = 0; n <= 4; ++n) {
    auto maps = enumerate_cubic_maps(n);
    CHECK(static_cast<int>(maps.size()) == expect[n]);
    CHECK(cubic_map_count(n) == expect[n]);
    std::set<std::vector<int>> codes;
    for (const CubicMap& m : maps) {
      CHECK(m.n == n);
      CHECK(m.connected());
      CHECK(m.planar());
      CHECK(m.bridgeless());
      if (n > 0) {
        // alpha is a fixed-point-free involution
        for (int d = 0; d < m.darts(); ++d) {
          CHECK(m.alpha[m.alpha[d]] == d);
          CHECK(m.alpha[d] != d);
        }
      }
      codes.insert(m.alpha);
    }
    CHECK(codes.size() == maps.size());
  }
  // the closed form satisfies the map-count recurrence at larger n
  for (int n = 1; n <= 30; ++n) {
    BigInt lhs = cubic_map_count(n) * ((n + 1) * (2 * n + 1) * (2 * n));
    BigInt rhs =
        cubic_map_count(n - 1) * (2 * (3 * n) * (3 * n - 1) * (3 * n - 2));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("spin map counts give the 2PI-dominant census") {
  CHECK(count_2pi_dominant(1) == 2);
  CHECK(count_2pi_dominant(2) == 8);
  CHECK(count_2pi_dominant(3) == 128);
  for (int g = 1; g <= 3; ++g)
    CHECK(BigInt(all_spin_maps(g).size()) == count_2pi_dominant(g));
}

TEST_CASE("genus-one spin maps decode to the two irreducible schemes") {
  auto sms = all_spin_maps(1);
  REQUIRE(sms.size() == 2);
  std::set<std::string> got, want = {canonical_hex(scheme_s1()),
                                     canonical_hex(scheme_s2())};
  for (const auto& m : sms) {
    Graph s = map_to_scheme(m);
    CHECK(is_2pi_dominant(s));
    // the minus boundary threads the root through an opened melonic pair
    CHECK((signature_of(s).standard_vertices == 2) == m.minus_boundary);
    got.insert(canonical_hex(s));
  }
  CHECK(got == want);
}

TEST_CASE("map and scheme round-trips are identities") {
  for (int g = 1; g <= 3; ++g) {
    std::set<std::string> codes;
    for (const SpinCubicMap& m : all_spin_maps(g)) {
      Graph s = map_to_scheme(m);
      Invariants inv = invariants_any(s);
      CHECK(inv.g == g);
      CHECK(inv.ell == 0);
      CHECK(is_2pi_dominant(s));
      LVCounts lc = lv_counts(s);
      CHECK(lc.n_e + lc.n_o == 3 * g - 2);
      CHECK(lc.n_e == monochromatic_edges(m));
      codes.insert(canonical_hex(s));
      CHECK(scheme_to_map(s) == m);
    }
    CHECK(BigInt(codes.size()) == count_2pi_dominant(g));
  }
}

TEST_CASE("generator agrees with the decorated-map census at genus two") {
  SchemeGenOptions o;
  o.two_pi_only = true;
  o.threads = 4;
  auto set2 = generate_schemes(2, o);
  std::set<std::string> dom;
  for (const auto& [c, s] : set2.schemes) {
    CHECK(is_2pi(s));
    LVCounts lc = lv_counts(s);
    CHECK(lc.n_e + lc.n_o <= 3 * 2 - 2);  // the straight-ladder bound
    if (is_2pi_dominant(s)) dom.insert(c);
  }
  std::set<std::string> images;
  for (const SpinCubicMap& m : all_spin_maps(2))
    images.insert(canonical_hex(map_to_scheme(m)));
  CHECK(dom == images);
  CHECK(dom.size() == 8);
}

TEST_CASE("spin-sector generating functions reproduce the scheme sum") {
  IsingGF z = ising_gfs(2);
  // genus one: one edge; the plus sector has its single edge monochromatic
  CHECK(z.zpp.at({1, 1}) == 1);
  CHECK(z.zpm.at({1, 0}) == 1);
  // genus two: four edges, split by the number of monochromatic edges
  BigInt tot_pp = 0, tot_pm = 0;
  for (const auto& [k, c] : z.zpp)
    if (k.first == 4) tot_pp += c;
  for (const auto& [k, c] : z.zpm)
    if (k.first == 4) tot_pm += c;
  CHECK(tot_pp == 4);
  CHECK(tot_pm == 4);
  CHECK(verify_ising_identity(2, 16, 4));
}

TEST_CASE("triple-scaled 2PI series and its critical point") {
  PowerSeries d = D_tilde_series(12);
  CHECK(d[0] == Rational(1, 2));           // the empty map, weight M_0 / 2
  CHECK(d[1] == Rational(1, 32));          // M_1 / (2 * 16)
  CHECK(d[2] == Rational(4, 2 * 256));     // M_2 / (2 * 16^2)
  CriticalData cd = critical_data(200);
  CHECK(std::abs(cd.kappa_c - maps_kappa_c()) < 1e-3);
  CHECK(maps_kappa_c() == doctest::Approx(1.088662).epsilon(1e-5));
  // coefficient decay n^{-5/2}
  CHECK(std::abs(cd.exponent - 2.5) / 2.5 < 0.05);
}

TEST_CASE("genus stays finite at criticality but its variance diverges") {
  double kc = maps_kappa_c();
  // single-term distribution at kappa -> 0
  CHECK(mean_genus_2pi(0) == doctest::Approx(1.0));
  CHECK(variance_genus(0) == doctest::Approx(0.0));
  // the mean stays bounded arbitrarily close to the critical point
  CHECK(mean_genus_2pi(0.999 * kc) < 10.0);
  // the variance grows like (1 - kappa^2/kappa_c^2)^{-1/2}
  auto kappa_at = [&](double eps) { return kc * std::sqrt(1.0 - eps); };
  double v1 = variance_genus(kappa_at(1e-4));
  double v2 = variance_genus(kappa_at(1e-6));
  double slope = std::log(v2 / v1) / std::log(1e-4 / 1e-6);
  CHECK(std::abs(slope - 0.5) / 0.5 < 0.10);
  // monotone growth in kappa
  double prev = -1;
  for (double f : {0.2, 0.5, 0.8, 0.95, 0.999}) {
    double v = variance_genus(f * kc);
    CHECK(v > prev);
    prev = v;
  }
}
