#pragma once
// Reduction machinery: melon detection and core extraction, dipole and ladder
// recognition, scheme construction (ladder-vertex replacement), ladder-vertex
// realization, and the contraction / flip moves.

#include <array>
#include <optional>

#include "feyn/stranded.hpp"

namespace feyn {

// ---------------------------------------------------------------------------
// Elementary melonic 2-point subgraphs: two standard vertices joined by three
// edges whose strand pattern is the degree-zero one (verified by closing the
// two external legs onto a fresh root and checking (v,g,ell) = (2,0,0)).

struct Melon {
  int a = 0, b = 0;           // the two standard vertices, a < b
  Slot ext_in, ext_out;       // external legs (slots of a/b): one in, one out
};

namespace detail {

inline std::vector<std::pair<int, int>> parallel_triples(const Graph& g) {
  std::map<std::pair<int, int>, int> cnt;
  for (const Edge& e : g.edges()) {
    int x = std::min(e.tail.v, e.head.v), y = std::max(e.tail.v, e.head.v);
    if (x != y) ++cnt[{x, y}];
  }
  std::vector<std::pair<int, int>> out;
  for (auto& [p, c] : cnt)
    if (c == 3 && g.kinds[p.first] == VKind::Std &&
        g.kinds[p.second] == VKind::Std)
      out.push_back(p);
  return out;
}

// Build the standalone closure of the 2-point subgraph {a,b} and test whether
// it is the rooted melon.
inline std::optional<Melon> melon_at(const Graph& g, int a, int b) {
  std::vector<Slot> ext;
  for (int v : {a, b})
    for (int s = 0; s < 4; ++s) {
      Slot m = g.mate({v, s});
      if (m.v != a && m.v != b) ext.push_back({v, s});
    }
  if (ext.size() != 2) return std::nullopt;
  Melon mel;
  mel.a = a;
  mel.b = b;
  if (slot_is_out(ext[0].s) == slot_is_out(ext[1].s)) return std::nullopt;
  mel.ext_in = slot_is_out(ext[0].s) ? ext[1] : ext[0];
  mel.ext_out = slot_is_out(ext[0].s) ? ext[0] : ext[1];
  // standalone closure
  Graph h;
  int va = h.add_vertex(VKind::Std), vb = h.add_vertex(VKind::Std);
  int r = h.add_vertex(VKind::Root);
  auto loc = [&](int v) { return v == a ? va : vb; };
  for (int v : {a, b})
    for (int s = 0; s < 4; ++s) {
      if (!slot_is_out(s)) continue;
      Slot m = g.mate({v, s});
      if (m.v == a || m.v == b) h.connect(loc(v), s, loc(m.v), m.s);
    }
  h.connect({r, 0}, {loc(mel.ext_in.v), mel.ext_in.s});
  h.connect({loc(mel.ext_out.v), mel.ext_out.s}, {r, 1});
  Invariants inv = invariants(h);
  if (inv.v == 2 && inv.g == 0 && inv.ell == 0) return mel;
  return std::nullopt;
}

}  // namespace detail

inline std::vector<Melon> find_melons(const Graph& g) {
  std::vector<Melon> out;
  for (auto [a, b] : detail::parallel_triples(g))
    if (auto m = detail::melon_at(g, a, b)) out.push_back(*m);
  return out;
}

inline bool is_melon_free(const Graph& g) { return find_melons(g).empty(); }

// Remove one elementary melon, joining its external attachments into an edge.
inline Graph remove_melon(const Graph& g, const Melon& m) {
  Slot t = g.mate(m.ext_in);   // outside tail
  Slot h = g.mate(m.ext_out);  // outside head
  Graph out;
  std::vector<int> newid(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != m.a && v != m.b) newid[v] = out.add_vertex(g.kinds[v]);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == m.a || v == m.b) continue;
    for (int s = 0; s < nslots(g.kinds[v]); ++s) {
      if (!slot_is_out(s)) continue;
      Slot mm = g.mate({v, s});
      if (mm.v == m.a || mm.v == m.b) continue;
      out.connect(newid[v], s, newid[mm.v], mm.s);
    }
  }
  out.connect(newid[t.v], t.s, newid[h.v], h.s);
  return out;
}

struct MelonCore {
  Graph core;
  int removed_melons = 0;
};

// Repeated melon removal down to the unique melon-free core.
inline MelonCore melon_core(const Graph& g) {
  MelonCore mc;
  mc.core = g;
  for (;;) {
    auto ms = find_melons(mc.core);
    if (ms.empty()) break;
    mc.core = remove_melon(mc.core, ms.front());
    ++mc.removed_melons;
  }
  return mc;
}

// ---------------------------------------------------------------------------
// Dipoles: two-vertex two-edge subgraphs carrying a length-two face.  The
// four external legs split into two sides; each side pairs one ingoing with
// one outgoing leg, consistently across the through-going strand types.

enum class DipKind : uint8_t { N, L, R };

inline char dip_char(DipKind k) {
  return k == DipKind::N ? 'N' : (k == DipKind::L ? 'L' : 'R');
}

struct SidePair {
  Slot in_leg, out_leg;  // slots of the dipole's own vertices
  friend auto operator<=>(const SidePair&, const SidePair&) = default;
};

struct Dipole {
  DipKind kind;
  int a = 0, b = 0;                  // vertices, a < b
  std::array<Slot, 4> rung_slots{};  // endpoints of the two parallel edges
  std::array<Slot, 4> legs{};
  SidePair side_a, side_b;           // side_a < side_b lexicographically
  friend bool operator==(const Dipole&, const Dipole&) = default;
};

namespace detail {

inline StrandType dip_to_strand(DipKind k) {
  switch (k) {
    case DipKind::N: return StrandType::Straight;
    case DipKind::L: return StrandType::L;
    case DipKind::R: return StrandType::R;
  }
  throw std::runtime_error("unreachable");
}

// Follow a strand of type t entering the dipole at `leg` until it exits.
inline Slot through_strand(const Graph& g, const std::set<Slot>& rung_slots,
                           Slot leg, StrandType t) {
  Slot cur = leg;
  for (int guard = 0; guard < 64; ++guard) {
    int s2 = vertex_strand_step(g.kinds[cur.v], cur.s, t);
    Slot nxt{cur.v, s2};
    if (!rung_slots.count(nxt)) return nxt;
    cur = g.mate(nxt);
    if (!rung_slots.count(cur))
      throw std::runtime_error("dipole strand left the rung");
  }
  throw std::runtime_error("dipole strand did not exit");
}

}  // namespace detail

inline std::vector<Dipole> find_dipoles(const Graph& g) {
  std::vector<Dipole> out;
  for (DipKind dk : {DipKind::N, DipKind::L, DipKind::R}) {
    for (const Face& f : trace_strands(g, detail::dip_to_strand(dk))) {
      if (f.slots.size() != 4) continue;
      std::set<int> vs;
      for (const Slot& s : f.slots) vs.insert(s.v);
      if (vs.size() != 2) continue;
      bool all_std = true;
      for (int v : vs) all_std = all_std && g.kinds[v] == VKind::Std;
      if (!all_std) continue;
      Dipole d;
      d.kind = dk;
      d.a = *vs.begin();
      d.b = *vs.rbegin();
      std::copy(f.slots.begin(), f.slots.end(), d.rung_slots.begin());
      std::set<Slot> rung(f.slots.begin(), f.slots.end());
      int li = 0;
      for (int v : {d.a, d.b})
        for (int s = 0; s < 4; ++s)
          if (!rung.count({v, s})) d.legs[li++] = {v, s};
      if (li != 4) throw std::runtime_error("dipole leg count");
      // Sides: for each strand type whose through-pairing matches legs of
      // different vertices with opposite directions, the pairing must agree;
      // that common pairing defines the sides.
      std::optional<std::set<std::pair<Slot, Slot>>> sides;
      for (StrandType t :
           {StrandType::Straight, StrandType::L, StrandType::R}) {
        std::map<Slot, Slot> pm;
        bool involutive = true;
        for (const Slot& leg : d.legs)
          pm[leg] = detail::through_strand(g, rung, leg, t);
        for (const Slot& leg : d.legs) {
          auto it = pm.find(pm[leg]);
          if (it == pm.end() || it->second != leg || pm[leg] == leg)
            involutive = false;
        }
        if (!involutive) continue;
        bool crossing = true;
        for (const Slot& leg : d.legs) {
          if (pm[leg].v == leg.v) crossing = false;
          if (slot_is_out(pm[leg].s) == slot_is_out(leg.s)) crossing = false;
        }
        if (!crossing) continue;
        std::set<std::pair<Slot, Slot>> cand;
        for (const Slot& leg : d.legs)
          cand.insert({std::min(leg, pm[leg]), std::max(leg, pm[leg])});
        if (sides && *sides != cand)
          throw std::runtime_error("inconsistent dipole sides");
        sides = cand;
      }
      if (!sides || sides->size() != 2)
        throw std::runtime_error("dipole sides not found");
      std::vector<SidePair> sps;
      for (auto& [x, y] : *sides) {
        SidePair sp;
        sp.in_leg = slot_is_out(x.s) ? y : x;
        sp.out_leg = slot_is_out(x.s) ? x : y;
        sps.push_back(sp);
      }
      std::sort(sps.begin(), sps.end());
      d.side_a = sps[0];
      d.side_b = sps[1];
      out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end(), [](const Dipole& x, const Dipole& y) {
    return std::tuple(x.a, x.b, x.kind) < std::tuple(y.a, y.b, y.kind);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Generic splice: remove a set of vertices and rewire each (in_leg, out_leg)
// pair so that the external edge arriving at in_leg connects to the external
// edge leaving out_leg.  Wire chains passing through several removed pairs are
// resolved; wire cycles that never touch a kept vertex are counted as free
// loops.

struct SpliceResult {
  Graph graph;                       // possibly disconnected, densely labeled
  std::vector<Edge> created_edges;   // reconnection edges, new labels
  int free_loops = 0;
  std::vector<int> old_to_new;       // -1 for removed vertices
};

inline SpliceResult splice(const Graph& g, const std::set<int>& removed,
                           const std::vector<SidePair>& wires) {
  std::map<Slot, Slot> partner;
  for (const SidePair& w : wires) {
    partner[w.in_leg] = w.out_leg;
    partner[w.out_leg] = w.in_leg;
  }
  auto resolve = [&](Slot from) {
    Slot cur = g.mate(from);
    for (int guard = 0; guard < 1024; ++guard) {
      if (!removed.count(cur.v)) return cur;
      auto it = partner.find(cur);
      if (it == partner.end())
        throw std::runtime_error("splice hit an unwired removed slot");
      cur = g.mate(it->second);
    }
    throw std::runtime_error("splice chain too long");
  };
  SpliceResult res;
  res.old_to_new.assign(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!removed.count(v)) res.old_to_new[v] = res.graph.add_vertex(g.kinds[v]);
  std::set<Slot> done;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (removed.count(v)) continue;
    for (int s = 0; s < nslots(g.kinds[v]); ++s) {
      Slot cur{v, s};
      if (done.count(cur)) continue;
      Slot other = resolve(cur);
      done.insert(cur);
      done.insert(other);
      Slot t = slot_is_out(s) ? cur : other;
      Slot h = slot_is_out(s) ? other : cur;
      Slot nt{res.old_to_new[t.v], t.s}, nh{res.old_to_new[h.v], h.s};
      res.graph.connect(nt, nh);
      bool direct = g.mate(cur) == other;
      if (!direct) res.created_edges.push_back({nt, nh});
    }
  }
  // free loops: wire cycles fully inside the removed set
  std::set<Slot> seen;
  for (const auto& [a, _] : partner) {
    if (seen.count(a)) continue;
    Slot x = a;
    bool cyc = true;
    for (int guard = 0; guard < 1024; ++guard) {
      seen.insert(x);
      Slot b = partner.at(x);
      seen.insert(b);
      Slot nxt = g.mate(b);
      if (!removed.count(nxt.v)) {
        cyc = false;
        break;
      }
      x = nxt;
      if (x == a) break;
    }
    if (cyc && x == a) ++res.free_loops;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Contraction of a dipole or ladder-vertex.  Returns one rooted graph
// (non-separating) or two (separating; the rootless part receives a fresh
// root in the middle of its reconnection edge).  Free loops become rooted
// cycle graphs.

struct ContractionResult {
  std::vector<Graph> parts;
  bool separating = false;
};

namespace detail {

inline ContractionResult finish_contraction(const Graph& g,
                                            const std::set<int>& removed,
                                            const std::vector<SidePair>& wires) {
  SpliceResult sp = splice(g, removed, wires);
  ContractionResult out;
  auto comps_lbl = component_labels(sp.graph);
  int nc = sp.graph.num_vertices()
               ? *std::max_element(comps_lbl.begin(), comps_lbl.end()) + 1
               : 0;
  out.separating = nc + sp.free_loops > 1;
  if (nc > 2) throw std::runtime_error("contraction produced >2 components");
  std::vector<Graph> comps = components(sp.graph);
  // locate the root component
  int root_comp = -1;
  for (size_t i = 0; i < comps.size(); ++i)
    if (comps[i].root >= 0) root_comp = static_cast<int>(i);
  if (root_comp < 0) throw std::runtime_error("contraction lost the root");
  // rootless components get a root on their (unique) reconnection edge
  for (size_t i = 0; i < comps.size(); ++i) {
    if (static_cast<int>(i) == root_comp) {
      out.parts.push_back(comps[i]);
      continue;
    }
    // find a created edge lying in this component, in the component's labels
    std::vector<int> to_comp(sp.graph.num_vertices(), -1);
    {
      int idx = 0;
      for (int v = 0; v < sp.graph.num_vertices(); ++v)
        if (comps_lbl[v] == static_cast<int>(i)) to_comp[v] = idx++;
    }
    std::optional<Slot> tail;
    for (const Edge& e : sp.created_edges)
      if (comps_lbl[e.tail.v] == static_cast<int>(i)) {
        tail = Slot{to_comp[e.tail.v], e.tail.s};
        break;
      }
    if (!tail)
      throw std::runtime_error("no reconnection edge in separated part");
    out.parts.push_back(add_root_on_edge(comps[i], *tail));
  }
  for (int i = 0; i < sp.free_loops; ++i) out.parts.push_back(cycle_graph());
  for (Graph& p : out.parts) p.check();
  return out;
}

}  // namespace detail

inline ContractionResult contract_dipole(const Graph& g, const Dipole& d) {
  return detail::finish_contraction(g, {d.a, d.b}, {d.side_a, d.side_b});
}

inline ContractionResult contract_ladder_vertex(const Graph& g, int lv) {
  if (!is_ladder_vertex(g.kinds[lv]))
    throw std::runtime_error("not a ladder vertex");
  SidePair a{Slot{lv, 1}, Slot{lv, 0}}, b{Slot{lv, 3}, Slot{lv, 2}};
  return detail::finish_contraction(g, {lv}, {a, b});
}

// Dipole / ladder-vertex classification.
enum class DipClass : uint8_t { Separating, Connecting, NonSeparatingOther };

// A non-separating N-dipole is connecting when its two external straight-
// strand corridors lie on two distinct straight faces (so contraction merges
// them).
inline DipClass classify_dipole(const Graph& g, const Dipole& d) {
  ContractionResult cr = contract_dipole(g, d);
  if (cr.separating) return DipClass::Separating;
  if (d.kind != DipKind::N) return DipClass::NonSeparatingOther;
  auto faces = trace_strands(g, StrandType::Straight);
  auto face_of = [&](Slot s) {
    for (size_t i = 0; i < faces.size(); ++i)
      for (const Slot& x : faces[i].slots)
        if (x == s) return static_cast<int>(i);
    throw std::runtime_error("slot not on any straight face");
  };
  // The two external corridors pass through the two rung vertices; each side
  // holds one leg of each corridor, so compare the faces of one side's legs.
  int fa = face_of(d.side_a.in_leg);
  int fb = face_of(d.side_a.out_leg);
  return fa != fb ? DipClass::Connecting : DipClass::NonSeparatingOther;
}

inline DipClass classify_ladder_vertex(const Graph& g, int lv) {
  ContractionResult cr = contract_ladder_vertex(g, lv);
  if (cr.separating) return DipClass::Separating;
  VKind k = g.kinds[lv];
  if (k != VKind::Ne && k != VKind::No) return DipClass::NonSeparatingOther;
  return DipClass::Connecting;
}

// ---------------------------------------------------------------------------
// Ladders: chains of >= 2 vertex-disjoint rungs (dipoles), consecutive rungs
// joined by two rail edges that attach to a single side of each.

struct Ladder {
  std::vector<Dipole> rungs;
  VKind classification;  // Ne, No, L, R, or B
  // External sides: free side of the first rung / free side of the last rung.
  SidePair first_side, last_side;
};

namespace detail {

// rails between side x of d1 and side y of d2: edges x.out->y.in, y.out->x.in
inline bool rail_joined(const Graph& g, const SidePair& x, const SidePair& y) {
  return g.mate(x.out_leg) == y.in_leg && g.mate(y.out_leg) == x.in_leg;
}

struct RungAdj {
  int other;       // index of the adjacent dipole
  bool my_side_a;  // which side of this dipole carries the rails
};

}  // namespace detail

inline std::vector<Ladder> maximal_ladders(const Graph& g) {
  std::vector<Dipole> dips = find_dipoles(g);
  int n = static_cast<int>(dips.size());
  std::vector<std::vector<detail::RungAdj>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::set<int> vs = {dips[i].a, dips[i].b, dips[j].a, dips[j].b};
      if (vs.size() != 4) continue;
      for (bool ia : {true, false})
        for (bool ja : {true, false}) {
          const SidePair& x = ia ? dips[i].side_a : dips[i].side_b;
          const SidePair& y = ja ? dips[j].side_a : dips[j].side_b;
          if (detail::rail_joined(g, x, y)) adj[i].push_back({j, ia});
        }
    }
  // Chains: follow maximal paths.  Dipoles that overlap (share vertices with)
  // a chain member but are not rungs themselves simply drop out.
  std::vector<Ladder> out;
  std::vector<char> used(n, 0);
  for (int i = 0; i < n; ++i) {
    if (used[i] || adj[i].empty()) continue;
    if (adj[i].size() > 2)
      throw std::runtime_error("rung with more than two rail neighbors");
    // walk to one end
    int start = i;
    {
      int prev = -1, cur = i;
      for (int guard = 0; guard <= n; ++guard) {
        int nxt = -1;
        for (const auto& a : adj[cur])
          if (a.other != prev) nxt = a.other;
        if (nxt < 0 || nxt == i) break;  // end or cycle back
        prev = cur;
        cur = nxt;
        start = cur;
      }
    }
    Ladder lad;
    int prev = -1, cur = start;
    for (int guard = 0; guard <= n; ++guard) {
      used[cur] = 1;
      lad.rungs.push_back(dips[cur]);
      int nxt = -1;
      for (const auto& a : adj[cur])
        if (a.other != prev && !used[a.other]) nxt = a.other;
      if (nxt < 0) break;
      prev = cur;
      cur = nxt;
    }
    if (lad.rungs.size() < 2) {
      continue;  // a lone rail-adjacent pair was consumed from elsewhere
    }
    // free sides of the end rungs
    auto free_side = [&](const Dipole& d, const Dipole& nb) {
      for (bool mine_a : {true, false}) {
        const SidePair& s = mine_a ? d.side_a : d.side_b;
        for (bool nb_a : {true, false}) {
          const SidePair& t = nb_a ? nb.side_a : nb.side_b;
          if (detail::rail_joined(g, s, t))
            return mine_a ? d.side_b : d.side_a;
        }
      }
      throw std::runtime_error("ladder end rung has no rail side");
    };
    lad.first_side = free_side(lad.rungs.front(), lad.rungs[1]);
    lad.last_side =
        free_side(lad.rungs.back(), lad.rungs[lad.rungs.size() - 2]);
    bool all_n = true, all_l = true, all_r = true;
    for (const Dipole& d : lad.rungs) {
      all_n = all_n && d.kind == DipKind::N;
      all_l = all_l && d.kind == DipKind::L;
      all_r = all_r && d.kind == DipKind::R;
    }
    if (all_n)
      lad.classification = lad.rungs.size() % 2 == 0 ? VKind::Ne : VKind::No;
    else if (all_l)
      lad.classification = VKind::L;
    else if (all_r)
      lad.classification = VKind::R;
    else
      lad.classification = VKind::B;
    out.push_back(std::move(lad));
  }
  // maximal ladders must be pairwise vertex-disjoint
  std::set<int> seen_vs;
  for (const Ladder& l : out)
    for (const Dipole& d : l.rungs)
      for (int v : {d.a, d.b})
        if (!seen_vs.insert(v).second)
          throw std::runtime_error("maximal ladders overlap");
  return out;
}

// ---------------------------------------------------------------------------
// Schemes: melon-free graphs with every maximal ladder replaced by a typed
// ladder-vertex.  A Scheme is simply a Graph that may contain ladder-vertex
// kinds; this wrapper caches invariants and the canonical code.

inline Graph replace_ladders(const Graph& g, const std::vector<Ladder>& lads) {
  std::set<int> removed;
  for (const Ladder& l : lads)
    for (const Dipole& d : l.rungs) {
      removed.insert(d.a);
      removed.insert(d.b);
    }
  Graph out;
  std::vector<int> newid(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!removed.count(v)) newid[v] = out.add_vertex(g.kinds[v]);
  std::vector<int> lv_ids;
  for (const Ladder& l : lads) lv_ids.push_back(out.add_vertex(l.classification));
  // map: external attachment slots of each ladder -> LV slots
  std::map<Slot, Slot> leg_map;  // old graph slot (on ladder) -> new LV slot
  for (size_t li = 0; li < lads.size(); ++li) {
    const Ladder& l = lads[li];
    int lv = lv_ids[li];
    leg_map[l.first_side.out_leg] = {lv, 0};
    leg_map[l.first_side.in_leg] = {lv, 1};
    leg_map[l.last_side.out_leg] = {lv, 2};
    leg_map[l.last_side.in_leg] = {lv, 3};
  }
  auto translate = [&](Slot s) -> Slot {
    auto it = leg_map.find(s);
    if (it != leg_map.end()) return it->second;
    if (removed.count(s.v)) throw std::runtime_error("interior slot escaped");
    return {newid[s.v], s.s};
  };
  std::set<Slot> handled;
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int s = 0; s < nslots(g.kinds[v]); ++s) {
      Slot a{v, s};
      bool a_ext = !removed.count(v) || leg_map.count(a);
      if (!a_ext) continue;
      Slot b = g.mate(a);
      bool b_ext = !removed.count(b.v) || leg_map.count(b);
      if (!b_ext) continue;  // rung or rail interior edge
      if (handled.count(a)) continue;
      handled.insert(a);
      handled.insert(b);
      Slot na = translate(a), nb = translate(b);
      if (slot_is_out(na.s))
        out.connect(na, nb);
      else
        out.connect(nb, na);
    }
  }
  out.check();
  return out;
}

// Build a concrete ladder inside `g`: rung types ts (N/L/R), rails joining
// side B of each rung to side A of the next.  Returns the external sides:
// side A of the first rung and side B of the last.
struct BuiltLadder {
  SidePair side_a, side_b;
};

inline BuiltLadder build_ladder(Graph& g, const std::vector<DipKind>& ts) {
  struct RungSlots {
    SidePair sa, sb;
  };
  std::vector<RungSlots> rs;
  for (DipKind t : ts) {
    int a = g.add_vertex(VKind::Std), b = g.add_vertex(VKind::Std);
    RungSlots r;
    switch (t) {
      case DipKind::N:
        g.connect(a, 0, b, 1);
        g.connect(a, 2, b, 3);
        r.sa = {Slot{a, 1}, Slot{b, 0}};
        r.sb = {Slot{a, 3}, Slot{b, 2}};
        break;
      case DipKind::L:
        g.connect(a, 0, b, 1);
        g.connect(b, 0, a, 1);
        r.sa = {Slot{b, 3}, Slot{a, 2}};
        r.sb = {Slot{a, 3}, Slot{b, 2}};
        break;
      case DipKind::R:
        g.connect(a, 0, b, 1);
        g.connect(b, 2, a, 3);
        r.sa = {Slot{a, 1}, Slot{b, 0}};
        r.sb = {Slot{b, 3}, Slot{a, 2}};
        break;
    }
    rs.push_back(r);
  }
  for (size_t i = 0; i + 1 < rs.size(); ++i) {
    g.connect(rs[i].sb.out_leg, rs[i + 1].sa.in_leg);
    g.connect(rs[i + 1].sa.out_leg, rs[i].sb.in_leg);
  }
  return {rs.front().sa, rs.back().sb};
}

// Minimal concrete rung sequence for each ladder-vertex kind.
inline std::vector<DipKind> minimal_rungs(VKind k) {
  switch (k) {
    case VKind::Ne: return {DipKind::N, DipKind::N};
    case VKind::No: return {DipKind::N, DipKind::N, DipKind::N};
    case VKind::L: return {DipKind::L, DipKind::L};
    case VKind::R: return {DipKind::R, DipKind::R};
    case VKind::B: return {DipKind::N, DipKind::L};
    default: throw std::runtime_error("not a ladder-vertex kind");
  }
}

// Replace every ladder-vertex by a concrete ladder; `rungs_for` chooses the
// rung sequence per LV (defaults to the minimal one).
inline Graph realize(
    const Graph& scheme,
    const std::function<std::vector<DipKind>(int, VKind)>& rungs_for = nullptr) {
  Graph out;
  std::vector<int> newid(scheme.num_vertices(), -1);
  for (int v = 0; v < scheme.num_vertices(); ++v)
    if (!is_ladder_vertex(scheme.kinds[v]))
      newid[v] = out.add_vertex(scheme.kinds[v]);
  std::map<Slot, Slot> leg_map;  // scheme LV slot -> realized graph slot
  for (int v = 0; v < scheme.num_vertices(); ++v) {
    VKind k = scheme.kinds[v];
    if (!is_ladder_vertex(k)) continue;
    std::vector<DipKind> ts = rungs_for ? rungs_for(v, k) : minimal_rungs(k);
    BuiltLadder bl = build_ladder(out, ts);
    leg_map[{v, 0}] = bl.side_a.out_leg;
    leg_map[{v, 1}] = bl.side_a.in_leg;
    leg_map[{v, 2}] = bl.side_b.out_leg;
    leg_map[{v, 3}] = bl.side_b.in_leg;
  }
  auto translate = [&](Slot s) -> Slot {
    auto it = leg_map.find(s);
    if (it != leg_map.end()) return it->second;
    return {newid[s.v], s.s};
  };
  for (const Edge& e : scheme.edges())
    out.connect(translate(e.tail), translate(e.head));
  out.check();
  return out;
}

// Invariants of a graph that may contain ladder-vertices (computed on a
// minimal realization; independent of the realization choice).
inline Invariants invariants_any(const Graph& g) {
  return g.is_plain() ? invariants(g) : invariants(realize(g));
}

// Scheme construction from a melon-free graph.
inline Graph to_scheme(const Graph& g) {
  if (!g.is_plain()) return g;  // already expressed with ladder-vertices
  if (!is_melon_free(g))
    throw std::runtime_error("to_scheme requires a melon-free graph");
  Graph s = replace_ladders(g, maximal_ladders(g));
  return s;
}

// Ladder-vertex census of a scheme, for its generating function.
struct LVCounts {
  int n_e = 0, n_o = 0, l = 0, r = 0, b = 0;
  int total() const { return n_e + n_o + l + r + b; }
};

inline LVCounts lv_counts(const Graph& scheme) {
  LVCounts c;
  for (VKind k : scheme.kinds) switch (k) {
      case VKind::Ne: ++c.n_e; break;
      case VKind::No: ++c.n_o; break;
      case VKind::L: ++c.l; break;
      case VKind::R: ++c.r; break;
      case VKind::B: ++c.b; break;
      default: break;
    }
  return c;
}

// ---------------------------------------------------------------------------
// Flip on a two-edge-cut: cut both edges and reconnect within each part,
// producing two rooted graphs with additive invariants.

inline std::optional<std::pair<Graph, Graph>> flip(const Graph& g,
                                                   const Edge& e1,
                                                   const Edge& e2) {
  // removing e1,e2 must disconnect g
  int n = g.num_vertices();
  std::vector<int> par(n);
  for (int v = 0; v < n; ++v) par[v] = v;
  auto find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  for (const Edge& e : g.edges()) {
    if (e == e1 || e == e2) continue;
    int a = find(e.tail.v), b = find(e.head.v);
    if (a != b) par[a] = b;
  }
  if (find(e1.tail.v) == find(e1.head.v)) return std::nullopt;
  // orientation: the two edges must run in opposite directions across the cut
  if (find(e1.tail.v) != find(e2.head.v)) return std::nullopt;
  Graph h = g;
  h.disconnect(e1.tail);
  h.disconnect(e2.tail);
  h.connect(e1.tail, e2.head);  // stays within the e1.tail part
  h.connect(e2.tail, e1.head);
  auto parts = components(h);
  if (parts.size() != 2) return std::nullopt;
  // the rootless part gets a root on its reconnection edge
  std::vector<int> lbl = component_labels(h);
  auto fix = [&](Graph part, int which) {
    if (part.root >= 0) return part;
    // reconnection edge in this part: e1.tail->e2.head or e2.tail->e1.head
    Slot tail = lbl[e1.tail.v] == which ? e1.tail : e2.tail;
    // translate to part labels
    std::vector<int> to_part(h.num_vertices(), -1);
    int idx = 0;
    for (int v = 0; v < h.num_vertices(); ++v)
      if (lbl[v] == which) to_part[v] = idx++;
    return add_root_on_edge(part, {to_part[tail.v], tail.s});
  };
  return std::make_pair(fix(parts[0], 0), fix(parts[1], 1));
}

// All two-edge-cuts of a rooted graph (excluding root-incident pairs).
inline std::vector<std::pair<Edge, Edge>> two_edge_cuts(const Graph& g) {
  std::vector<std::pair<Edge, Edge>> out;
  auto es = g.edges();
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j) {
      bool ri = es[i].tail.v == g.root || es[i].head.v == g.root;
      bool rj = es[j].tail.v == g.root || es[j].head.v == g.root;
      if (ri && rj) continue;
      int n = g.num_vertices();
      std::vector<int> par(n);
      for (int v = 0; v < n; ++v) par[v] = v;
      auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
      };
      for (size_t k = 0; k < es.size(); ++k) {
        if (k == i || k == j) continue;
        int a = find(es[k].tail.v), b = find(es[k].head.v);
        if (a != b) par[a] = b;
      }
      std::set<int> roots;
      for (int v = 0; v < n; ++v) roots.insert(find(v));
      if (roots.size() > 1) out.push_back({es[i], es[j]});
    }
  return out;
}

}  // namespace feyn
