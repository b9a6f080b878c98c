#pragma once
// 2PI-dominant schemes as spin states on rooted planar cubic maps.
//
// A 2PI scheme of genus g carries at most 3g-2 straight ladder-vertices;
// those that reach the bound are the 2PI-dominant schemes.  Viewing each
// straight ladder-vertex as an edge and each planar six-point junction as a
// 3-valent vertex, a 2PI-dominant scheme becomes a rooted bridgeless planar
// cubic map with 2(g-1) vertices, each carrying a spin: even ladders join
// equal spins, odd ladders join opposite spins.  The root edge of the map is
// cut by the scheme root (optionally through an opened melonic pair, the
// "minus boundary" state).  The module provides the map enumeration, the
// bijection both ways, the two-spin-sector generating functions and their
// identity with the scheme sum, and the triple-scaled series.

#include <cmath>
#include <mutex>
#include <unordered_map>

#include "feyn/generate.hpp"
#include "feyn/series.hpp"

namespace feyn {

// ---------------------------------------------------------------------------
// Rooted cubic maps on darts.  Vertex i owns darts 3i, 3i+1, 3i+2; sigma
// rotates within a vertex and alpha is the edge involution.  Dart 0 is the
// root.  Faces are the orbits of sigma∘alpha.

struct CubicMap {
  int n = 0;               // 2n trivalent vertices, 6n darts
  std::vector<int> alpha;  // fixed-point-free involution on the darts

  int vertices() const { return 2 * n; }
  int darts() const { return 6 * n; }
  static int sigma(int d) { return d - d % 3 + (d % 3 + 1) % 3; }
  static int sigma_inv(int d) { return d - d % 3 + (d % 3 + 2) % 3; }

  int faces() const {
    std::vector<char> seen(darts(), 0);
    int f = 0;
    for (int d = 0; d < darts(); ++d) {
      if (seen[d]) continue;
      ++f;
      for (int e = d; !seen[e]; e = sigma(alpha[e])) seen[e] = 1;
    }
    return f;
  }
  // Euler characteristic: V - E + F = 2 - 2*genus
  int surface_genus() const {
    if (n == 0) return 0;
    return (2 - vertices() + 3 * n - faces()) / 2;
  }
  bool planar() const { return surface_genus() == 0; }

  bool connected() const {
    if (n == 0) return true;
    std::vector<char> seen(vertices(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int k = 0; k < 3; ++k) {
        int w = alpha[3 * v + k] / 3;
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          stack.push_back(w);
        }
      }
    }
    return cnt == vertices();
  }

  // an edge is a bridge when removing it disconnects the vertex graph
  bool bridgeless() const {
    for (int d = 0; d < darts(); ++d) {
      if (alpha[d] < d) continue;
      std::vector<char> seen(vertices(), 0);
      std::vector<int> stack = {0};
      seen[0] = 1;
      int cnt = 1;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int k = 0; k < 3; ++k) {
          int e = 3 * v + k;
          if (e == d || e == alpha[d]) continue;
          int w = alpha[e] / 3;
          if (!seen[w]) {
            seen[w] = 1;
            ++cnt;
            stack.push_back(w);
          }
        }
      }
      if (cnt < vertices()) return false;
    }
    return true;
  }

  friend bool operator==(const CubicMap&, const CubicMap&) = default;
};

// Number of rooted bridgeless planar cubic maps with 2n vertices:
// 2^n (3n)! / ((n+1)! (2n+1)!), with the convention M_0 = 1.
inline BigInt cubic_map_count(int n) {
  if (n < 0) throw std::runtime_error("cubic_map_count: n must be >= 0");
  BigInt num = BigInt(1) << n, den = 1;
  for (int i = 1; i <= 3 * n; ++i) num *= i;
  for (int i = 1; i <= n + 1; ++i) den *= i;
  for (int i = 1; i <= 2 * n + 1; ++i) den *= i;
  return num / den;
}

// Exhaustive rooted enumeration by canonical construction: darts are matched
// smallest-first, and a new vertex is always entered through its first dart,
// which pins the labeling and rotation of every rooted isomorphism class.
inline std::vector<CubicMap> enumerate_cubic_maps(int n) {
  if (n < 0) throw std::runtime_error("enumerate_cubic_maps: n must be >= 0");
  std::vector<CubicMap> out;
  if (n == 0) {
    out.push_back(CubicMap{});
    return out;
  }
  int nd = 6 * n, nv = 2 * n;
  std::vector<int> alpha(nd, -1);
  std::function<void(int)> rec = [&](int used) {
    int d = 0;
    while (d < nd && alpha[d] >= 0) ++d;
    if (d == nd) {
      CubicMap m{n, alpha};
      if (m.planar() && m.bridgeless()) out.push_back(m);
      return;
    }
    // the smallest open dart must lie on an already-used vertex, otherwise
    // the used component closed up early and the map is disconnected
    if (d / 3 >= used) return;
    for (int e = d + 1; e < 3 * used; ++e) {
      if (alpha[e] >= 0) continue;
      alpha[d] = e;
      alpha[e] = d;
      rec(used);
      alpha[d] = alpha[e] = -1;
    }
    if (used < nv) {
      int e = 3 * used;
      alpha[d] = e;
      alpha[e] = d;
      rec(used + 1);
      alpha[d] = alpha[e] = -1;
    }
  };
  rec(1);
  return out;
}

// ---------------------------------------------------------------------------
// Spin decoration.  One spin per trivalent vertex; the boundary bit records
// the state of the second univalent vertex obtained when the root edge is
// cut (the minus state threads the scheme root through an opened melonic
// pair, which costs an extra vertex pair).

struct SpinCubicMap {
  CubicMap map;
  std::vector<int> spin;        // +1 / -1 per trivalent vertex
  bool minus_boundary = false;  // second root-end spin is -

  int genus() const { return map.n + 1; }
  friend bool operator==(const SpinCubicMap&, const SpinCubicMap&) = default;
};

inline std::vector<SpinCubicMap> all_spin_maps(int g) {
  if (g < 1) throw std::runtime_error("all_spin_maps: genus must be >= 1");
  std::vector<SpinCubicMap> out;
  for (const CubicMap& m : enumerate_cubic_maps(g - 1)) {
    int nv = m.vertices();
    for (int mask = 0; mask < (1 << nv); ++mask)
      for (int mb = 0; mb < 2; ++mb) {
        SpinCubicMap sm;
        sm.map = m;
        sm.spin.resize(nv);
        for (int v = 0; v < nv; ++v) sm.spin[v] = (mask >> v) & 1 ? -1 : 1;
        sm.minus_boundary = mb == 1;
        out.push_back(sm);
      }
  }
  return out;
}

inline BigInt count_2pi_dominant(int g) {
  if (g < 1)
    throw std::runtime_error("count_2pi_dominant: genus must be >= 1");
  return (BigInt(1) << (2 * g - 1)) * cubic_map_count(g - 1);
}

// ---------------------------------------------------------------------------
// 2PI-dominance.

inline bool is_2pi_dominant(const Graph& scheme) {
  Invariants inv = invariants_any(scheme);
  if (inv.ell != 0 || inv.g < 1) return false;
  if (!is_2pi(scheme)) return false;
  LVCounts lc = lv_counts(scheme);
  return lc.n_e + lc.n_o == 3 * inv.g - 2;
}

// ---------------------------------------------------------------------------
// Map -> scheme.  Each closed-map edge becomes a straight ladder-vertex
// (even for equal end spins, odd for opposite); each trivalent vertex wires
// its three ladder ends cyclically, with the cycle direction given by its
// spin; the root edge is cut in two and closed through the scheme root.

namespace maps_detail {

struct EndPorts {
  Slot out, in;
};

// root closure: u1/u2 are the root-side ends of the two cut halves
inline void attach_root(Graph& s, int root, const EndPorts& u1,
                        const EndPorts& u2, bool minus_boundary) {
  if (!minus_boundary) {
    s.connect(Slot{root, 0}, u1.in);
    s.connect(u2.out, Slot{root, 1});
    s.connect(u1.out, u2.in);
  } else {
    int a = s.add_vertex(VKind::Std), b = s.add_vertex(VKind::Std);
    s.connect(b, 2, a, 3);  // the kept edge of the opened melonic pair
    s.connect(root, 0, a, 1);
    s.connect(b, 0, root, 1);
    s.connect(Slot{a, 0}, u1.in);
    s.connect(u1.out, Slot{b, 1});
    s.connect(Slot{a, 2}, u2.in);
    s.connect(u2.out, Slot{b, 3});
  }
}

}  // namespace maps_detail

inline Graph map_to_scheme(const SpinCubicMap& m) {
  using maps_detail::EndPorts;
  const CubicMap& cm = m.map;
  if (static_cast<int>(m.spin.size()) != cm.vertices())
    throw std::runtime_error("map_to_scheme: one spin per vertex required");
  for (int v : m.spin)
    if (v != 1 && v != -1)
      throw std::runtime_error("map_to_scheme: spins must be +1 or -1");
  Graph s;
  int root = s.add_vertex(VKind::Root);
  int s_b = m.minus_boundary ? -1 : 1;
  auto lv_kind = [](bool mono) { return mono ? VKind::Ne : VKind::No; };
  if (cm.n == 0) {
    int lv = s.add_vertex(lv_kind(s_b == 1));
    maps_detail::attach_root(s, root, {Slot{lv, 0}, Slot{lv, 1}},
                             {Slot{lv, 2}, Slot{lv, 3}}, m.minus_boundary);
    s.check();
    return s;
  }
  if (!cm.connected() || !cm.planar() || !cm.bridgeless())
    throw std::runtime_error("map_to_scheme: map must be connected, planar "
                             "and bridgeless");
  // one ladder-vertex per closed-map edge; the root edge is cut in two
  std::vector<EndPorts> end(cm.darts());
  int r2 = cm.alpha[0];
  for (int d = 0; d < cm.darts(); ++d) {
    int e = cm.alpha[d];
    if (d == 0 || d == r2) {
      bool mono = m.spin[d / 3] == (d == 0 ? 1 : s_b);
      int lv = s.add_vertex(lv_kind(mono));
      end[d] = {Slot{lv, 0}, Slot{lv, 1}};  // root-side ports are 2/3
    } else if (e > d) {
      bool mono = m.spin[d / 3] == m.spin[e / 3];
      int lv = s.add_vertex(lv_kind(mono));
      end[d] = {Slot{lv, 0}, Slot{lv, 1}};
      end[e] = {Slot{lv, 2}, Slot{lv, 3}};
    }
  }
  // junctions: cyclic wiring in sigma order, reversed for a minus spin
  for (int v = 0; v < cm.vertices(); ++v)
    for (int k = 0; k < 3; ++k) {
      int d = 3 * v + k;
      int nxt = m.spin[v] == 1 ? CubicMap::sigma(d) : CubicMap::sigma_inv(d);
      s.connect(end[d].out, end[nxt].in);
    }
  // root closure through the far sides of the two cut halves
  EndPorts u1 = {Slot{end[0].out.v, 2}, Slot{end[0].out.v, 3}};
  EndPorts u2 = {Slot{end[r2].out.v, 2}, Slot{end[r2].out.v, 3}};
  maps_detail::attach_root(s, root, u1, u2, m.minus_boundary);
  s.check();
  return s;
}

// ---------------------------------------------------------------------------
// Scheme -> map.  The decorated maps at fixed genus are a desk-scale set, so
// the inverse is resolved through a cached index of the forward images.

inline SpinCubicMap scheme_to_map(const Graph& scheme) {
  if (!is_2pi_dominant(scheme))
    throw std::runtime_error("scheme_to_map: scheme is not 2PI-dominant");
  int g = invariants_any(scheme).g;
  static std::mutex mu;
  static std::map<int, std::unordered_map<std::string, SpinCubicMap>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g);
  if (it == cache.end()) {
    std::unordered_map<std::string, SpinCubicMap> index;
    for (const SpinCubicMap& m : all_spin_maps(g))
      index.emplace(canonical_hex(map_to_scheme(m)), m);
    it = cache.emplace(g, std::move(index)).first;
  }
  auto hit = it->second.find(canonical_hex(scheme));
  if (hit == it->second.end())
    throw std::runtime_error("scheme_to_map: no decorated map matches");
  return hit->second;
}

// ---------------------------------------------------------------------------
// Ising generating functions.  Coefficient at (edges, mono) counts decorated
// maps with that many edges and monochromatic edges, split by the boundary
// sector (plus-plus versus plus-minus).

struct IsingGF {
  std::map<std::pair<int, int>, BigInt> zpp, zpm;
};

inline int monochromatic_edges(const SpinCubicMap& m) {
  int s_b = m.minus_boundary ? -1 : 1;
  if (m.map.n == 0) return s_b == 1 ? 1 : 0;
  int mono = 0;
  int r2 = m.map.alpha[0];
  for (int d = 0; d < m.map.darts(); ++d) {
    int e = m.map.alpha[d];
    if (d == 0 || d == r2)
      mono += m.spin[d / 3] == (d == 0 ? 1 : s_b);
    else if (e > d)
      mono += m.spin[d / 3] == m.spin[e / 3];
  }
  return mono;
}

inline IsingGF ising_gfs(int max_genus) {
  IsingGF z;
  for (int g = 1; g <= max_genus; ++g)
    for (const SpinCubicMap& m : all_spin_maps(g)) {
      auto key = std::make_pair(3 * g - 2, monochromatic_edges(m));
      (m.minus_boundary ? z.zpm : z.zpp)[key] += 1;
    }
  return z;
}

// The 2PI-dominant scheme sum per genus equals the Ising sum with an even
// ladder series per monochromatic edge, an odd ladder series per
// bichromatic edge, and one extra propagator weight in the minus sector.
inline bool verify_ising_identity(int max_genus, int order, int threads = 1) {
  IsingGF z = ising_gfs(max_genus);
  PowerSeries cne = ladder_gf(LadderKind::Ne, order);
  PowerSeries cno = ladder_gf(LadderKind::No, order);
  PowerSeries u = PowerSeries::monomial(order, 1);
  for (int g = 1; g <= max_genus; ++g) {
    std::vector<SchemeSignature> sigs;
    if (g == 1) {
      for (const Graph& s : schemes_genus_one())
        if (is_2pi_dominant(s)) sigs.push_back(signature_of(s));
    } else {
      SchemeGenOptions o;
      o.two_pi_only = true;
      o.threads = threads;
      for (const auto& [c, s] : generate_schemes(g, o).schemes)
        if (is_2pi_dominant(s)) sigs.push_back(signature_of(s));
    }
    PowerSeries lhs = genus_gf_2pi(sigs, order);
    PowerSeries rhs(order);
    for (const auto& [key, cnt] : z.zpp) {
      if (key.first != 3 * g - 2) continue;
      rhs += cne.pow(key.second) * cno.pow(key.first - key.second) *
             Rational(cnt);
    }
    for (const auto& [key, cnt] : z.zpm) {
      if (key.first != 3 * g - 2) continue;
      rhs += u * cne.pow(key.second) * cno.pow(key.first - key.second) *
             Rational(cnt);
    }
    if (lhs != rhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Triple-scaled 2PI series: D~(kappa) = (1/2) sum_n (kappa^2/16)^n M_n,
// where M_n is the cubic map count.  Coefficient n below multiplies
// kappa^{2n}.

inline PowerSeries D_tilde_series(int order) {
  PowerSeries out(order);
  BigInt m = 1;  // M_n by the closed-form recurrence
  Rational scale(1, 2);
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      m = m * (2 * (3 * n) * (3 * n - 1) * (3 * n - 2)) /
          ((n + 1) * (2 * n + 1) * (2 * n));
      scale /= 16;
    }
    out.at(n) = Rational(m) * scale;
  }
  return out;
}

inline double maps_kappa_c() { return 8.0 / (3.0 * std::sqrt(6.0)); }

// successive ratios of M_n / 16 converge to 1/kappa_c^2 = 27/32 with a 5/(2n)
// correction, giving both the critical point and the n^{-5/2} decay exponent
struct CriticalData {
  double kappa_c = 0;
  double exponent = 0;  // coefficient decay n^{-exponent}, expect 5/2
};

inline CriticalData critical_data(int order) {
  if (order < 4)
    throw std::runtime_error("critical_data: order must be >= 4");
  auto ratio = [](int n) {  // M_n / M_{n-1} / 16
    return (2.0 * (3 * n) * (3 * n - 1) * (3 * n - 2)) /
           (16.0 * (n + 1) * (2 * n + 1) * (2 * n));
  };
  auto kest = [&](int n) { return 1.0 / std::sqrt(ratio(n)); };
  auto aest = [&](int n) { return n * (1.0 - ratio(n) * 32.0 / 27.0); };
  CriticalData cd;
  cd.kappa_c = order * kest(order) - (order - 1) * kest(order - 1);
  cd.exponent = order * aest(order) - (order - 1) * aest(order - 1);
  return cd;
}

namespace maps_detail {

// genus moments under the weight M_{g-1} (kappa^2/16)^{g-1}
inline void genus_moments(double kappa, double& s0, double& s1, double& s2) {
  double kc = maps_kappa_c();
  if (kappa < 0 || kappa >= kc)
    throw std::runtime_error("genus moments require 0 <= kappa < kappa_c");
  double y = kappa * kappa / 16.0;
  double term = 0.5;  // n = 0 contribution, M_0 / 2
  s0 = s1 = s2 = 0;
  for (int n = 0;; ++n) {
    double g = n + 1;
    s0 += term;
    s1 += g * term;
    s2 += g * g * term;
    double r = (2.0 * (3 * n + 3) * (3 * n + 2) * (3 * n + 1)) /
               (1.0 * (n + 2) * (2 * n + 3) * (2 * n + 2));
    term *= r * y;
    if (term * (g + 1) * (g + 1) < 1e-16 * (s2 + 1) && n > 16) break;
    if (n > 50000000)
      throw std::runtime_error("genus moments failed to converge");
  }
}

}  // namespace maps_detail

inline double mean_genus_2pi(double kappa) {
  double s0, s1, s2;
  maps_detail::genus_moments(kappa, s0, s1, s2);
  return s1 / s0;
}

inline double variance_genus(double kappa) {
  double s0, s1, s2;
  maps_detail::genus_moments(kappa, s0, s1, s2);
  return s2 / s0 - (s1 / s0) * (s1 / s0);
}

}  // namespace feyn
