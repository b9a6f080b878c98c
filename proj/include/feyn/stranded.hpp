#pragma once
// Core representation of rooted stranded 4-regular graphs: face tracing,
// invariants (genus, grade, degree), canonical codes, connectivity, 2PI test.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace feyn {

// Vertex kinds: Root (2 slots: 0 out, 1 in), Std (4 slots: 0,2 out; 1,3 in),
// and the five ladder-vertex kinds (4 slots, side A = {0 out, 1 in},
// side B = {2 out, 3 in}).
enum class VKind : uint8_t { Root, Std, Ne, No, L, R, B };

inline int nslots(VKind k) { return k == VKind::Root ? 2 : 4; }
inline bool slot_is_out(int s) { return (s & 1) == 0; }
inline bool is_ladder_vertex(VKind k) {
  return k != VKind::Root && k != VKind::Std;
}
inline char kind_char(VKind k) {
  switch (k) {
    case VKind::Root: return 'r';
    case VKind::Std: return 's';
    case VKind::Ne: return 'e';
    case VKind::No: return 'o';
    case VKind::L: return 'l';
    case VKind::R: return 'q';
    case VKind::B: return 'b';
  }
  return '?';
}

struct Slot {
  int v = -1;
  int s = -1;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

// Directed edge: tail = outgoing slot, head = ingoing slot.
struct Edge {
  Slot tail, head;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  std::vector<VKind> kinds;
  // pairing[4*v + s] = 4*v2 + s2, or -1 for nonexistent slots (root slots 2,3).
  std::vector<int32_t> pairing;
  int root = -1;  // index of the Root vertex, or -1

  Graph() = default;

  int num_vertices() const { return static_cast<int>(kinds.size()); }

  int num_standard() const {
    int c = 0;
    for (VKind k : kinds)
      if (k == VKind::Std) ++c;
    return c;
  }

  bool is_plain() const {
    for (VKind k : kinds)
      if (is_ladder_vertex(k)) return false;
    return true;
  }

  int add_vertex(VKind k) {
    kinds.push_back(k);
    pairing.insert(pairing.end(), 4, -1);
    if (k == VKind::Root) {
      if (root >= 0) throw std::runtime_error("graph already has a root");
      root = num_vertices() - 1;
    }
    return num_vertices() - 1;
  }

  Slot mate(Slot a) const {
    int32_t p = pairing[4 * a.v + a.s];
    if (p < 0) throw std::runtime_error("dangling slot");
    return Slot{p >> 2, p & 3};
  }
  bool paired(Slot a) const { return pairing[4 * a.v + a.s] >= 0; }

  void connect(Slot out, Slot in) {
    if (!slot_is_out(out.s) || slot_is_out(in.s))
      throw std::runtime_error("edge must join an out-slot to an in-slot");
    if (paired(out) || paired(in)) throw std::runtime_error("slot already paired");
    pairing[4 * out.v + out.s] = 4 * in.v + in.s;
    pairing[4 * in.v + in.s] = 4 * out.v + out.s;
  }
  void connect(int tv, int ts, int hv, int hs) { connect({tv, ts}, {hv, hs}); }

  void disconnect(Slot a) {
    Slot b = mate(a);
    pairing[4 * a.v + a.s] = -1;
    pairing[4 * b.v + b.s] = -1;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> es;
    for (int v = 0; v < num_vertices(); ++v)
      for (int s = 0; s < nslots(kinds[v]); ++s)
        if (slot_is_out(s)) es.push_back({Slot{v, s}, mate({v, s})});
    std::sort(es.begin(), es.end());
    return es;
  }

  // Structural validation: total pairing involution, orientation consistency,
  // at most one root.
  void check() const {
    if (pairing.size() != kinds.size() * 4)
      throw std::runtime_error("pairing size mismatch");
    int roots = 0;
    for (int v = 0; v < num_vertices(); ++v) {
      if (kinds[v] == VKind::Root) ++roots;
      for (int s = 0; s < 4; ++s) {
        int32_t p = pairing[4 * v + s];
        if (s >= nslots(kinds[v])) {
          if (p != -1) throw std::runtime_error("root vertex with extra slots");
          continue;
        }
        if (p < 0) throw std::runtime_error("dangling slot");
        Slot m{p >> 2, p & 3};
        if (m.v < 0 || m.v >= num_vertices() || m.s >= nslots(kinds[m.v]))
          throw std::runtime_error("pairing out of range");
        if (pairing[4 * m.v + m.s] != 4 * v + s)
          throw std::runtime_error("pairing not involutive");
        if (slot_is_out(s) == slot_is_out(m.s))
          throw std::runtime_error("orientation violated");
      }
    }
    if (roots > 1) throw std::runtime_error("more than one root");
    if (root >= 0 && kinds[root] != VKind::Root)
      throw std::runtime_error("root index does not point at a Root vertex");
    if (root < 0)
      for (VKind k : kinds)
        if (k == VKind::Root) throw std::runtime_error("untracked root vertex");
  }

  friend bool operator==(const Graph& a, const Graph& b) = default;
};

// ---------------------------------------------------------------------------
// Strand routing and face tracing.
//
// Each edge carries three parallel strands; at a standard vertex the straight
// (internal) strand joins opposite slots (0-2, 1-3) while the two external
// strands live on the corners: corners (0,1) and (2,3) carry L-strands,
// corners (1,2) and (3,0) carry R-strands.  At the root all strands pass
// straight through.

enum class StrandType : uint8_t { L, R, Straight };

inline int vertex_strand_step(VKind k, int s, StrandType t) {
  if (k == VKind::Root) return 1 - s;
  switch (t) {
    case StrandType::Straight: return (s + 2) & 3;
    case StrandType::L: return s ^ 1;          // 0-1, 2-3
    case StrandType::R: return (s + (s & 1 ? 1 : 3)) & 3;  // 1-2, 3-0
  }
  return -1;
}

struct Face {
  // Alternating slot sequence: (exit slot, entry slot, exit, entry, ...).
  std::vector<Slot> slots;
  int standard_passages = 0;  // number of standard-vertex crossings
};

struct FaceCensus {
  std::vector<Face> l_faces, r_faces, straight_faces;
  int f_l() const { return static_cast<int>(l_faces.size()); }
  int f_r() const { return static_cast<int>(r_faces.size()); }
  int phi() const { return static_cast<int>(straight_faces.size()); }
  std::vector<int> loop_lengths() const {
    std::vector<int> out;
    for (const Face& f : straight_faces) out.push_back(f.standard_passages);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline std::vector<Face> trace_strands(const Graph& g, StrandType t) {
  std::vector<Face> faces;
  std::vector<char> seen(g.kinds.size() * 4, 0);
  for (int v0 = 0; v0 < g.num_vertices(); ++v0) {
    for (int s0 = 0; s0 < nslots(g.kinds[v0]); ++s0) {
      if (seen[4 * v0 + s0]) continue;
      Face face;
      Slot cur{v0, s0};
      while (!seen[4 * cur.v + cur.s]) {
        seen[4 * cur.v + cur.s] = 1;
        face.slots.push_back(cur);
        Slot ent = g.mate(cur);
        seen[4 * ent.v + ent.s] = 1;
        face.slots.push_back(ent);
        if (g.kinds[ent.v] == VKind::Std) ++face.standard_passages;
        cur = Slot{ent.v, vertex_strand_step(g.kinds[ent.v], ent.s, t)};
      }
      faces.push_back(std::move(face));
    }
  }
  return faces;
}

inline FaceCensus trace_faces(const Graph& g) {
  if (!g.is_plain())
    throw std::runtime_error("face tracing requires a plain stranded graph");
  g.check();
  FaceCensus c;
  c.l_faces = trace_strands(g, StrandType::L);
  c.r_faces = trace_strands(g, StrandType::R);
  c.straight_faces = trace_strands(g, StrandType::Straight);
  int total_len = 0;
  for (const Face& f : c.straight_faces) total_len += f.standard_passages;
  if (total_len != 2 * g.num_standard())
    throw std::runtime_error("straight-face length sum violated");
  return c;
}

struct Invariants {
  int v = 0;      // standard-vertex count
  int e = 0;      // edge count
  int g = 0;      // genus
  int ell = 0;    // grade (non-negative integer)
  int f_l = 0, f_r = 0, phi = 0;
  // degree = g + ell/2 as twice its value to stay integral
  int two_omega() const { return 2 * g + ell; }
  friend auto operator<=>(const Invariants&, const Invariants&) = default;
};

// Connectivity over the underlying multigraph.
inline std::vector<int> component_labels(const Graph& g) {
  int n = g.num_vertices();
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = i;
  auto find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  for (int v = 0; v < n; ++v)
    for (int s = 0; s < nslots(g.kinds[v]); ++s) {
      int a = find(v), b = find(g.mate({v, s}).v);
      if (a != b) par[a] = b;
    }
  std::vector<int> lbl(n);
  std::map<int, int> dense;
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    auto [it, fresh] = dense.emplace(r, static_cast<int>(dense.size()));
    lbl[v] = it->second;
  }
  return lbl;
}

inline int num_components(const Graph& g) {
  if (g.num_vertices() == 0) return 0;
  auto lbl = component_labels(g);
  return *std::max_element(lbl.begin(), lbl.end()) + 1;
}

inline bool is_connected(const Graph& g) { return num_components(g) <= 1; }

inline std::vector<Graph> components(const Graph& g) {
  auto lbl = component_labels(g);
  int nc = g.num_vertices() ? *std::max_element(lbl.begin(), lbl.end()) + 1 : 0;
  std::vector<Graph> out(nc);
  std::vector<int> newid(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    newid[v] = out[lbl[v]].add_vertex(g.kinds[v]);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int s = 0; s < nslots(g.kinds[v]); ++s)
      if (slot_is_out(s)) {
        Slot m = g.mate({v, s});
        out[lbl[v]].connect(newid[v], s, newid[m.v], m.s);
      }
  return out;
}

inline Invariants invariants(const Graph& g) {
  if (!is_connected(g))
    throw std::runtime_error("invariants require a connected graph");
  FaceCensus c = trace_faces(g);
  Invariants inv;
  inv.v = g.num_standard();
  inv.e = static_cast<int>(g.edges().size());
  inv.f_l = c.f_l();
  inv.f_r = c.f_r();
  inv.phi = c.phi();
  int f = inv.f_l + inv.f_r;
  int two_g = 2 + inv.v - f;  // Euler relation, 2 - 2g = -v + f
  if (two_g < 0 || two_g % 2 != 0)
    throw std::runtime_error("inconsistent genus from Euler relation");
  inv.g = two_g / 2;
  inv.ell = 2 + 2 * inv.g + inv.v - 2 * inv.phi;
  if (inv.ell < 0) throw std::runtime_error("negative grade");
  // Independent degree formula must agree: 2w = 6 + 3v - 2f - 2phi.
  int two_omega = 6 + 3 * inv.v - 2 * f - 2 * inv.phi;
  if (two_omega != 2 * inv.g + inv.ell)
    throw std::runtime_error("degree formulas disagree");
  return inv;
}

// ---------------------------------------------------------------------------
// Canonical code: deterministic traversal seeded at the root.  Standard and
// ladder vertices admit a rotation by two slots (vertex symmetry: half-turn
// for standard vertices, side swap for ladder vertices), fixed greedily so
// that the entry slot is 0 or 1.  Equal codes <=> root-preserving isomorphism.

inline std::vector<uint8_t> canonical_code(const Graph& g) {
  if (g.root < 0)
    throw std::runtime_error("canonical code requires a rooted graph");
  if (!is_connected(g))
    throw std::runtime_error("canonical code requires a connected graph");
  int n = g.num_vertices();
  std::vector<int> num(n, -1), rot(n, 0), order;
  order.reserve(n);
  num[g.root] = 0;
  order.push_back(g.root);
  std::vector<uint8_t> code;
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int v = order[qi];
    VKind k = g.kinds[v];
    for (int ls = 0; ls < nslots(k); ++ls) {
      int s = k == VKind::Root ? ls : (ls + rot[v]) & 3;
      Slot m = g.mate({v, s});
      VKind k2 = g.kinds[m.v];
      if (num[m.v] < 0) {
        num[m.v] = static_cast<int>(order.size());
        rot[m.v] = (k2 != VKind::Root && m.s >= 2) ? 2 : 0;
        order.push_back(m.v);
      }
      int ns2 = k2 == VKind::Root ? m.s : (m.s - rot[m.v]) & 3;
      code.push_back(static_cast<uint8_t>(num[m.v]));
      code.push_back(static_cast<uint8_t>(ns2));
      code.push_back(static_cast<uint8_t>(kind_char(k2)));
    }
  }
  return code;
}

inline std::string code_hex(const std::vector<uint8_t>& code) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (uint8_t b : code) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

inline std::string canonical_hex(const Graph& g) {
  return code_hex(canonical_code(g));
}

// ---------------------------------------------------------------------------
// Two-particle irreducibility: no pair of edges whose removal disconnects the
// graph, excluding pairs where both edges are incident to the root.

inline bool is_2pi(const Graph& g) {
  if (g.root < 0) throw std::runtime_error("is_2pi requires a rooted graph");
  if (!is_connected(g)) throw std::runtime_error("is_2pi requires connectivity");
  auto es = g.edges();
  int n = g.num_vertices();
  auto incident_to_root = [&](const Edge& e) {
    return e.tail.v == g.root || e.head.v == g.root;
  };
  int ne = static_cast<int>(es.size());
  for (int i = 0; i < ne; ++i) {
    for (int j = i + 1; j < ne; ++j) {
      if (incident_to_root(es[i]) && incident_to_root(es[j])) continue;
      std::vector<int> par(n);
      for (int v = 0; v < n; ++v) par[v] = v;
      auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
      };
      for (int k = 0; k < ne; ++k) {
        if (k == i || k == j) continue;
        int a = find(es[k].tail.v), b = find(es[k].head.v);
        if (a != b) par[a] = b;
      }
      int comps = 0;
      for (int v = 0; v < n; ++v)
        if (find(v) == v) ++comps;
      if (comps > 1) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Convenience constructors.

// Rooted cycle graph: a root vertex whose out-slot feeds its own in-slot.
inline Graph cycle_graph() {
  Graph g;
  g.add_vertex(VKind::Root);
  g.connect(0, 0, 0, 1);
  g.check();
  return g;
}

// Insert a fresh root in the middle of the edge leaving `tail`.
inline Graph add_root_on_edge(const Graph& g, Slot tail) {
  Graph h = g;
  Slot head = h.mate(tail);
  h.disconnect(tail);
  int r = h.add_vertex(VKind::Root);
  h.connect(tail, {r, 1});
  h.connect({r, 0}, head);
  return h;
}

// Remove the root, joining the edge entering it to the edge leaving it.
inline Graph smooth_root(const Graph& g) {
  if (g.root < 0) throw std::runtime_error("no root to smooth");
  Graph h;
  std::vector<int> newid(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != g.root) newid[v] = h.add_vertex(g.kinds[v]);
  Slot rin = g.mate({g.root, 1});   // tail feeding the root
  Slot rout = g.mate({g.root, 0});  // head fed by the root
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == g.root) continue;
    for (int s = 0; s < nslots(g.kinds[v]); ++s)
      if (slot_is_out(s)) {
        Slot m = g.mate({v, s});
        if (m.v == g.root) continue;  // handled via rin -> rout below
        h.connect(newid[v], s, newid[m.v], m.s);
      }
  }
  if (rin.v == g.root) {
    // root self-loop (cycle graph) vanishes entirely
    if (rout.v != g.root) throw std::runtime_error("malformed root");
  } else {
    h.connect(newid[rin.v], rin.s, newid[rout.v], rout.s);
  }
  return h;
}

}  // namespace feyn
