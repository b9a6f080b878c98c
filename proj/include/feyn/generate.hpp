#pragma once
// Genus-recursive generation of melon-free graphs and of their schemes.
// Connecting straight-ladder insertions raise the genus of a host by one and
// produce the irreducible elements of the next level; separating insertions
// and two-edge connections assemble the reducible elements from lower-genus
// pieces.  Levels enumerate concrete graphs within a vertex budget; the
// scheme generator works with capped realizations and reduces every candidate
// back to its scheme, iterating root-side closures to a fixed point.

#include <functional>
#include <optional>
#include <thread>

#include "feyn/reduce.hpp"
#include "feyn/series.hpp"

namespace feyn {

// ---------------------------------------------------------------------------
// X-structures: what a separating insertion glues between two parts.

enum class XKind : uint8_t { DipN, DipL, DipR, Ne, No, L, R, B };

inline const std::vector<XKind>& all_x_kinds() {
  static const std::vector<XKind> ks = {XKind::DipN, XKind::DipL, XKind::DipR,
                                        XKind::Ne,   XKind::No,   XKind::L,
                                        XKind::R,    XKind::B};
  return ks;
}

namespace gen_detail {

// Stubs left by smoothing away a root: q is the outgoing slot that fed
// root-slot 1, p the ingoing slot fed from root-slot 0.
struct RootStubs {
  Slot q, p;
};

// Append src minus its root vertex into dst; the two root edges stay open.
inline RootStubs append_rootless(Graph& dst, const Graph& src) {
  if (src.root < 0) throw std::runtime_error("append_rootless: no root");
  Slot p0 = src.mate({src.root, 0});
  Slot q0 = src.mate({src.root, 1});
  if (p0.v == src.root || q0.v == src.root)
    throw std::runtime_error("cannot smooth the root of a bare cycle");
  std::vector<int> id(src.num_vertices(), -1);
  for (int v = 0; v < src.num_vertices(); ++v)
    if (v != src.root) id[v] = dst.add_vertex(src.kinds[v]);
  for (const Edge& e : src.edges()) {
    if (e.tail.v == src.root || e.head.v == src.root) continue;
    dst.connect({id[e.tail.v], e.tail.s}, {id[e.head.v], e.head.s});
  }
  return {{id[q0.v], q0.s}, {id[p0.v], p0.s}};
}

// Attachment ports of an X-structure materialized inside g.
struct XPorts {
  Slot a_in, a_out, b_in, b_out;
};

inline XPorts build_x(Graph& g, XKind x) {
  switch (x) {
    case XKind::DipN:
    case XKind::DipL:
    case XKind::DipR: {
      DipKind dk = x == XKind::DipN   ? DipKind::N
                   : x == XKind::DipL ? DipKind::L
                                      : DipKind::R;
      BuiltLadder bl = build_ladder(g, {dk});
      return {bl.side_a.in_leg, bl.side_a.out_leg, bl.side_b.in_leg,
              bl.side_b.out_leg};
    }
    default: {
      VKind k = x == XKind::Ne   ? VKind::Ne
                : x == XKind::No ? VKind::No
                : x == XKind::L  ? VKind::L
                : x == XKind::R  ? VKind::R
                                 : VKind::B;
      int lv = g.add_vertex(k);
      return {{lv, 1}, {lv, 0}, {lv, 3}, {lv, 2}};
    }
  }
}

inline XPorts build_x_word(Graph& g, const std::vector<DipKind>& word,
                           bool flip) {
  BuiltLadder bl = build_ladder(g, word);
  if (!flip)
    return {bl.side_a.in_leg, bl.side_a.out_leg, bl.side_b.in_leg,
            bl.side_b.out_leg};
  return {bl.side_b.in_leg, bl.side_b.out_leg, bl.side_a.in_leg,
          bl.side_a.out_leg};
}

}  // namespace gen_detail

// ---------------------------------------------------------------------------
// Insertion moves.

// Insert a straight ladder with `length` rungs across the cut edges e1, e2.
// e1 == e2 inserts the ladder in series on a single edge (the ladder is then
// closed by a direct rail between its two ends).  For distinct edges,
// `variant` (0/1) chooses which head stub each ladder side reconnects to.
// Unchecked: the result may or may not be a connecting insertion.
inline Graph insert_connecting_N_raw(const Graph& g, const Edge& e1,
                                     const Edge& e2, int length,
                                     int variant = 0) {
  Graph h = g;
  bool series = e1 == e2;
  h.disconnect(e1.tail);
  if (!series) h.disconnect(e2.tail);
  BuiltLadder bl = build_ladder(h, std::vector<DipKind>(length, DipKind::N));
  if (series) {
    h.connect(e1.tail, bl.side_a.in_leg);
    h.connect(bl.side_b.out_leg, e1.head);
    h.connect(bl.side_a.out_leg, bl.side_b.in_leg);
  } else {
    h.connect(e1.tail, bl.side_a.in_leg);
    h.connect(e2.tail, bl.side_b.in_leg);
    h.connect(bl.side_a.out_leg, variant == 0 ? e1.head : e2.head);
    h.connect(bl.side_b.out_leg, variant == 0 ? e2.head : e1.head);
  }
  h.check();
  return h;
}

// Checked: nullopt unless the insertion raised the genus by exactly one at
// unchanged grade (the defining effect of a connecting straight ladder).
inline std::optional<Graph> insert_connecting_N(const Graph& g, const Edge& e1,
                                                const Edge& e2, int length,
                                                int variant = 0) {
  Graph h = insert_connecting_N_raw(g, e1, e2, length, variant);
  Invariants a = invariants_any(g), b = invariants_any(h);
  if (b.g != a.g + 1 || b.ell != a.ell) return std::nullopt;
  return h;
}

// Glue `other` (its root smoothed into a pair of stubs) onto `keep` by
// cutting `site` and routing both stub pairs through an X-structure: side A
// of X closes the cut of `keep`, side B closes the smoothed root of `other`.
// The composite keeps the root of `keep`; X is separating by construction.
inline Graph insert_separating(const Graph& keep, const Edge& site,
                               const Graph& other, XKind x) {
  Graph h = keep;
  h.disconnect(site.tail);
  gen_detail::RootStubs st = gen_detail::append_rootless(h, other);
  gen_detail::XPorts xp = gen_detail::build_x(h, x);
  h.connect(site.tail, xp.a_in);
  h.connect(xp.a_out, site.head);
  h.connect(st.q, xp.b_in);
  h.connect(xp.b_out, st.p);
  h.check();
  return h;
}

// Same with a concrete rung word for X (length >= 1; a single rung is a bare
// dipole).  `flip` swaps which ladder side faces `keep`.
inline Graph insert_separating_word(const Graph& keep, const Edge& site,
                                    const Graph& other,
                                    const std::vector<DipKind>& word,
                                    bool flip = false) {
  Graph h = keep;
  h.disconnect(site.tail);
  gen_detail::RootStubs st = gen_detail::append_rootless(h, other);
  gen_detail::XPorts xp = gen_detail::build_x_word(h, word, flip);
  h.connect(site.tail, xp.a_in);
  h.connect(xp.a_out, site.head);
  h.connect(st.q, xp.b_in);
  h.connect(xp.b_out, st.p);
  h.check();
  return h;
}

// Two-edge connection: the inverse of the flip move.  Cut `site` in `keep`,
// smooth the root of `other`, and cross-connect the stub pairs.
inline Graph insert_two_edge_connection(const Graph& keep, const Edge& site,
                                        const Graph& other) {
  Graph h = keep;
  h.disconnect(site.tail);
  gen_detail::RootStubs st = gen_detail::append_rootless(h, other);
  h.connect(site.tail, st.p);
  h.connect(st.q, site.head);
  h.check();
  return h;
}

// ---------------------------------------------------------------------------
// Scheme normalization: realize ladder-vertices, strip melons, re-recognize
// maximal ladders.  Idempotent on schemes.

inline Graph normalize_scheme(const Graph& cand) {
  Graph g = cand.is_plain() ? cand : realize(cand);
  MelonCore mc = melon_core(g);
  return to_scheme(mc.core);
}

inline SchemeSignature signature_of(const Graph& scheme) {
  LVCounts c = lv_counts(scheme);
  return {scheme.num_standard(), c.n_e, c.n_o, c.l, c.r, c.b};
}

// ---------------------------------------------------------------------------
// The genus-one base: two irreducible schemes, plus sixteen reducible ones
// obtained by gluing a dipole or ladder-vertex between the rooted cycle and
// an irreducible core.

// Even straight ladder-vertex closed crosswise on the root.
inline Graph scheme_s1() {
  Graph s;
  int r = s.add_vertex(VKind::Root);
  int lv = s.add_vertex(VKind::Ne);
  s.connect(r, 0, lv, 1);
  s.connect(lv, 2, r, 1);
  s.connect(lv, 0, lv, 3);
  s.check();
  return s;
}

// Odd straight ladder-vertex threaded through an opened melonic pair.
inline Graph scheme_s2() {
  Graph s;
  int r = s.add_vertex(VKind::Root);
  int a = s.add_vertex(VKind::Std), b = s.add_vertex(VKind::Std);
  int lv = s.add_vertex(VKind::No);
  s.connect(r, 0, a, 1);
  s.connect(b, 0, r, 1);
  s.connect(a, 0, lv, 1);
  s.connect(lv, 0, b, 1);
  s.connect(a, 2, lv, 3);
  s.connect(lv, 2, b, 3);
  s.connect(b, 2, a, 3);
  s.check();
  return s;
}

inline std::vector<Graph> schemes_genus_one() {
  std::vector<Graph> out = {scheme_s1(), scheme_s2()};
  Graph cyc = cycle_graph();
  Edge root_edge = cyc.edges().front();
  for (const Graph& core : {scheme_s1(), scheme_s2()})
    for (XKind x : all_x_kinds())
      out.push_back(
          normalize_scheme(insert_separating(cyc, root_edge, core, x)));
  return out;
}

// ---------------------------------------------------------------------------
// Realization enumeration.

namespace gen_detail {

// Admissible rung words of a ladder-vertex kind up to a length cap.
inline std::vector<std::vector<DipKind>> words_for(VKind k, int maxlen) {
  std::vector<std::vector<DipKind>> out;
  auto pure = [&](DipKind d, int start, int step) {
    for (int n = start; n <= maxlen; n += step)
      out.push_back(std::vector<DipKind>(n, d));
  };
  switch (k) {
    case VKind::Ne: pure(DipKind::N, 2, 2); break;
    case VKind::No: pure(DipKind::N, 3, 2); break;
    case VKind::L: pure(DipKind::L, 2, 1); break;
    case VKind::R: pure(DipKind::R, 2, 1); break;
    case VKind::B: {
      for (int n = 2; n <= maxlen; ++n) {
        std::vector<DipKind> w(n, DipKind::N);
        std::function<void(int)> rec = [&](int i) {
          if (i == n) {
            bool mixed = false;
            for (int j = 1; j < n; ++j) mixed = mixed || w[j] != w[0];
            if (mixed) out.push_back(w);
            return;
          }
          for (DipKind d : {DipKind::N, DipKind::L, DipKind::R}) {
            w[i] = d;
            rec(i + 1);
          }
        };
        rec(0);
      }
      break;
    }
    default: throw std::runtime_error("words_for: not a ladder-vertex kind");
  }
  return out;
}

}  // namespace gen_detail

// Every realization of `scheme` whose rung words have length <= maxlen per
// ladder-vertex and whose total standard-vertex count fits vbudget (negative
// budget: unbounded).
inline std::vector<Graph> realizations(const Graph& scheme, int maxlen,
                                       int vbudget = -1) {
  std::vector<int> lvs;
  for (int v = 0; v < scheme.num_vertices(); ++v)
    if (is_ladder_vertex(scheme.kinds[v])) lvs.push_back(v);
  std::vector<Graph> out;
  std::map<int, std::vector<DipKind>> choice;
  int base = scheme.num_standard();
  if (vbudget >= 0 && base > vbudget) return out;
  std::function<void(size_t, int)> rec = [&](size_t i, int used) {
    if (i == lvs.size()) {
      out.push_back(realize(scheme, [&](int v, VKind kk) {
        auto it = choice.find(v);
        return it != choice.end() ? it->second : minimal_rungs(kk);
      }));
      return;
    }
    VKind k = scheme.kinds[lvs[i]];
    for (const auto& w : gen_detail::words_for(k, maxlen)) {
      int used2 = used + 2 * static_cast<int>(w.size());
      if (vbudget >= 0 && used2 > vbudget) continue;
      choice[lvs[i]] = w;
      rec(i + 1, used2);
    }
    choice.erase(lvs[i]);
  };
  rec(0, base);
  return out;
}

// ---------------------------------------------------------------------------
// Level generation: all melon-free grade-zero graphs of a genus, by vertex
// budget.

struct GenerationLevel {
  int genus = 0;
  int vmax = 0;
  std::map<std::string, Graph> all;     // canonical code -> graph
  std::map<std::string, Graph> two_pi;  // irreducible members
  std::map<std::string, Graph> two_pr;  // reducible members
};

struct LevelOptions {
  bool two_pi_only = false;  // skip the reducible assembly steps
  int threads = 1;
};

namespace gen_detail {

constexpr int kMaxLevelVertices = 32;

// Deterministic parallel map over an index range; each worker fills its own
// code-keyed map, and the maps are merged (set union, order-independent).
inline std::map<std::string, Graph> parallel_collect(
    int n, int threads,
    const std::function<void(int, std::map<std::string, Graph>&)>& work) {
  threads = std::max(1, std::min(threads, n == 0 ? 1 : n));
  std::vector<std::map<std::string, Graph>> buckets(threads);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) work(i, buckets[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int i = t; i < n; i += threads) work(i, buckets[t]);
      });
    for (auto& th : pool) th.join();
  }
  std::map<std::string, Graph> out = std::move(buckets[0]);
  for (size_t b = 1; b < buckets.size(); ++b)
    for (auto& kv : buckets[b]) out.insert(std::move(kv));
  return out;
}

// All rung words over {N, L, R} of the given length.
inline std::vector<std::vector<DipKind>> all_words(int len) {
  std::vector<std::vector<DipKind>> out;
  std::vector<DipKind> w(len, DipKind::N);
  std::function<void(int)> rec = [&](int i) {
    if (i == len) {
      out.push_back(w);
      return;
    }
    for (DipKind d : {DipKind::N, DipKind::L, DipKind::R}) {
      w[i] = d;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace gen_detail

inline GenerationLevel generate_level(int genus, int vmax,
                                      const LevelOptions& opt = {}) {
  if (genus < 0) throw std::runtime_error("generate_level: negative genus");
  if (vmax > gen_detail::kMaxLevelVertices)
    throw std::runtime_error(
        "generate_level: vertex budget exceeds the resource bound " +
        std::to_string(gen_detail::kMaxLevelVertices));
  GenerationLevel out;
  out.genus = genus;
  out.vmax = vmax;
  auto add = [&](std::map<std::string, Graph>& dst, const std::string& code,
                 const Graph& g) { dst.emplace(code, g); };

  if (genus == 0) {
    if (vmax >= 0) {
      Graph c = cycle_graph();
      std::string code = canonical_hex(c);
      add(out.all, code, c);
      add(out.two_pi, code, c);
    }
    return out;
  }

  if (genus == 1) {
    for (const Graph& s : schemes_genus_one()) {
      int base = s.num_standard();
      for (const Graph& g :
           realizations(s, (vmax - base) / 2, vmax)) {
        std::string code = canonical_hex(g);
        if (out.all.count(code)) continue;
        add(out.all, code, g);
        add(is_2pi(g) ? out.two_pi : out.two_pr, code, g);
      }
    }
    return out;
  }

  // genus >= 2: lower levels feed all three assembly steps.
  std::vector<GenerationLevel> lower(genus);
  for (int k = 1; k < genus; ++k)
    lower[k] = generate_level(k, vmax - 2, LevelOptions{false, opt.threads});

  // Irreducible step: connecting straight-ladder insertions into the full
  // previous level, keeping results that are irreducible at this genus.
  {
    std::vector<const Graph*> hosts;
    for (const auto& [c, g] : lower[genus - 1].all) hosts.push_back(&g);
    auto uniq = gen_detail::parallel_collect(
        static_cast<int>(hosts.size()), opt.threads,
        [&](int hi, std::map<std::string, Graph>& sink) {
          const Graph& host = *hosts[hi];
          Invariants inv0 = invariants(host);
          auto es = host.edges();
          int maxlen = (vmax - inv0.v) / 2;
          for (size_t i = 0; i < es.size(); ++i)
            for (size_t j = i; j < es.size(); ++j)
              for (int len = 1; len <= maxlen; ++len) {
                int nvar = i == j ? 1 : 2;
                for (int var = 0; var < nvar; ++var) {
                  Graph h =
                      insert_connecting_N_raw(host, es[i], es[j], len, var);
                  Invariants inv = invariants(h);
                  if (inv.g != genus || inv.ell != 0) continue;
                  sink.emplace(canonical_hex(h), std::move(h));
                }
              }
        });
    for (auto& [code, g] : uniq) {
      if (!is_melon_free(g)) continue;
      if (!is_2pi(g)) continue;
      add(out.all, code, g);
      add(out.two_pi, code, g);
    }
  }

  if (!opt.two_pi_only) {
    std::map<std::string, Graph> uniq;
    // Root-side assembly: a separating ladder of any rung word between the
    // rooted cycle and an irreducible member of this level.
    Graph cyc = cycle_graph();
    Edge root_edge = cyc.edges().front();
    for (const auto& [tc, t] : out.two_pi) {
      int vt = invariants(t).v;
      for (int len = 1; 2 * len <= vmax - vt; ++len)
        for (const auto& word : gen_detail::all_words(len))
          for (bool flip : {false, true}) {
            Graph h = insert_separating_word(cyc, root_edge, t, word, flip);
            uniq.emplace(canonical_hex(h), std::move(h));
          }
    }
    // Pair assembly: a separating ladder or a two-edge connection between
    // members of two lower levels whose genera sum to this one.
    for (int g1 = 1; g1 < genus; ++g1) {
      int g2 = genus - g1;
      std::vector<const Graph*> keeps;
      for (const auto& [kc, g] : lower[g1].all) keeps.push_back(&g);
      auto part = gen_detail::parallel_collect(
          static_cast<int>(keeps.size()), opt.threads,
          [&](int ki, std::map<std::string, Graph>& sink) {
            const Graph& keep = *keeps[ki];
            int vk = invariants(keep).v;
            for (const auto& [oc, other] : lower[g2].all) {
              int vo = invariants(other).v;
              if (vk + vo > vmax) continue;
              for (const Edge& site : keep.edges()) {
                {
                  Graph h = insert_two_edge_connection(keep, site, other);
                  sink.emplace(canonical_hex(h), std::move(h));
                }
                for (int len = 1; 2 * len <= vmax - vk - vo; ++len)
                  for (const auto& word : gen_detail::all_words(len))
                    for (bool flip : {false, true}) {
                      Graph h = insert_separating_word(keep, site, other,
                                                       word, flip);
                      sink.emplace(canonical_hex(h), std::move(h));
                    }
              }
            }
          });
      for (auto& kv : part) uniq.insert(std::move(kv));
    }
    for (auto& [code, g] : uniq) {
      if (out.all.count(code)) continue;
      if (!is_melon_free(g)) continue;
      Invariants inv = invariants(g);
      if (inv.g != genus || inv.ell != 0) continue;
      if (is_2pi(g))
        throw std::runtime_error(
            "generate_level: reducible assembly produced an irreducible graph");
      add(out.all, code, g);
      add(out.two_pr, code, g);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Split realizations.  An insertion's cut edge can fall in the interior of a
// host ladder, splitting it into pieces that become separate ladder-vertices
// (possibly with a standard-vertex rung left between them when the cut runs
// across a rung).  The scheme of the result depends on the pieces only
// through their classes, so it suffices to realize the split ladder as a
// concatenation of one representative word per piece class, with the cut
// sites restricted to the junction.

namespace gen_detail {

// One representative rung word per piece class (dipoles, straight ladders of
// both parities, twisted ladders, one broken word), plus the empty piece,
// with the straight/twisted pure words extended up to the cap so that the
// cap-robustness comparison exercises genuinely longer realizations.
inline std::vector<std::vector<DipKind>> piece_reps(int cap) {
  std::vector<std::vector<DipKind>> out = {{}};
  for (DipKind d : {DipKind::N, DipKind::L, DipKind::R})
    for (int k = 1; k <= cap; ++k)
      out.push_back(std::vector<DipKind>(k, d));
  out.push_back({DipKind::N, DipKind::L});
  return out;
}

// Ladder class of a rung word, or nullopt when the word is too short to form
// a ladder-vertex.
inline std::optional<VKind> word_class(const std::vector<DipKind>& w) {
  if (w.size() < 2) return std::nullopt;
  bool mixed = false;
  for (size_t i = 1; i < w.size(); ++i) mixed = mixed || w[i] != w[0];
  if (mixed) return VKind::B;
  switch (w[0]) {
    case DipKind::N: return w.size() % 2 == 0 ? VKind::Ne : VKind::No;
    case DipKind::L: return VKind::L;
    default: return VKind::R;
  }
}

// A gap marks where a cut may fall inside a realized ladder: either the rail
// pair between rungs pos-1 and pos, or the two edges of rung pos itself.
struct GapSpec {
  int pos = 0;
  bool rung = false;
};

struct SplitSpec {
  std::vector<DipKind> word;
  std::vector<GapSpec> gaps;
};

// All ways to realize a ladder-vertex of kind k as piece words around
// `ngaps` cut gaps: pieces come from piece_reps, an optional rung of any
// type sits in each gap, and the total word must reproduce class k.
inline std::vector<SplitSpec> split_specs(VKind k, int ngaps, int cap) {
  auto pieces = piece_reps(cap);
  const std::vector<int> rung_opts = {-1, 0, 1, 2};  // -1: rail gap
  std::vector<SplitSpec> out;
  std::vector<size_t> pi(ngaps + 1);
  std::vector<int> ri(ngaps);
  std::function<void(int)> rec = [&](int i) {
    if (i > ngaps) {
      SplitSpec sp;
      for (int j = 0; j <= ngaps; ++j) {
        if (j > 0) {
          GapSpec gp;
          gp.pos = static_cast<int>(sp.word.size());
          gp.rung = ri[j - 1] >= 0;
          if (gp.rung) sp.word.push_back(static_cast<DipKind>(ri[j - 1]));
          sp.gaps.push_back(gp);
        }
        const auto& p = pieces[pi[j]];
        sp.word.insert(sp.word.end(), p.begin(), p.end());
      }
      if (word_class(sp.word) != k) return;
      int len = static_cast<int>(sp.word.size());
      for (size_t gi = 0; gi < sp.gaps.size(); ++gi) {
        const GapSpec& g1 = sp.gaps[gi];
        // a rail gap needs rungs on both sides of its position
        if (!g1.rung && (g1.pos < 1 || g1.pos > len - 1)) return;
        // cutting both rails of the same junction is the one-gap site pair
        for (size_t gj = 0; gj < gi; ++gj)
          if (!g1.rung && !sp.gaps[gj].rung && sp.gaps[gj].pos == g1.pos)
            return;
      }
      out.push_back(std::move(sp));
      return;
    }
    for (pi[i] = 0; pi[i] < pieces.size(); ++pi[i]) {
      if (i == ngaps) {
        rec(i + 1);
        continue;
      }
      for (int r : rung_opts) {
        ri[i] = r;
        rec(i + 1);
      }
    }
  };
  rec(0);
  return out;
}

// build_ladder with per-rung bookkeeping, so gap sites can be read off.
struct TrackedLadder {
  SidePair side_a, side_b;
  std::vector<SidePair> sa, sb;            // per-rung internal sides
  std::vector<std::pair<int, int>> verts;  // per-rung vertex pair (a, b)
  std::vector<DipKind> kinds;

  std::vector<Edge> gap_edges(const GapSpec& gp) const {
    if (gp.rung) {
      auto [a, b] = verts[gp.pos];
      switch (kinds[gp.pos]) {
        case DipKind::N:
          return {{{a, 0}, {b, 1}}, {{a, 2}, {b, 3}}};
        case DipKind::L:
          return {{{a, 0}, {b, 1}}, {{b, 0}, {a, 1}}};
        default:
          return {{{a, 0}, {b, 1}}, {{b, 2}, {a, 3}}};
      }
    }
    return {{sb[gp.pos - 1].out_leg, sa[gp.pos].in_leg},
            {sa[gp.pos].out_leg, sb[gp.pos - 1].in_leg}};
  }
};

inline TrackedLadder build_ladder_tracked(Graph& g,
                                          const std::vector<DipKind>& ts) {
  TrackedLadder tl;
  tl.kinds = ts;
  for (DipKind t : ts) {
    int a = g.add_vertex(VKind::Std), b = g.add_vertex(VKind::Std);
    SidePair sa, sb;
    switch (t) {
      case DipKind::N:
        g.connect(a, 0, b, 1);
        g.connect(a, 2, b, 3);
        sa = {Slot{a, 1}, Slot{b, 0}};
        sb = {Slot{a, 3}, Slot{b, 2}};
        break;
      case DipKind::L:
        g.connect(a, 0, b, 1);
        g.connect(b, 0, a, 1);
        sa = {Slot{b, 3}, Slot{a, 2}};
        sb = {Slot{a, 3}, Slot{b, 2}};
        break;
      case DipKind::R:
        g.connect(a, 0, b, 1);
        g.connect(b, 2, a, 3);
        sa = {Slot{a, 1}, Slot{b, 0}};
        sb = {Slot{b, 3}, Slot{a, 2}};
        break;
    }
    tl.sa.push_back(sa);
    tl.sb.push_back(sb);
    tl.verts.emplace_back(a, b);
  }
  for (size_t i = 0; i + 1 < tl.sa.size(); ++i) {
    g.connect(tl.sb[i].out_leg, tl.sa[i + 1].in_leg);
    g.connect(tl.sa[i + 1].out_leg, tl.sb[i].in_leg);
  }
  tl.side_a = tl.sa.front();
  tl.side_b = tl.sb.back();
  return tl;
}

// Realize a scheme with chosen split words on selected ladder-vertices (the
// rest get minimal words) and report the gap sites, in ascending order of
// ladder-vertex id and gap index.
struct TrackedRealization {
  Graph graph;
  std::vector<std::vector<Edge>> gap_sites;
};

inline TrackedRealization realize_tracked(
    const Graph& scheme, const std::map<int, SplitSpec>& specs) {
  TrackedRealization res;
  Graph& out = res.graph;
  std::vector<int> newid(scheme.num_vertices(), -1);
  for (int v = 0; v < scheme.num_vertices(); ++v)
    if (!is_ladder_vertex(scheme.kinds[v]))
      newid[v] = out.add_vertex(scheme.kinds[v]);
  std::map<Slot, Slot> leg_map;
  for (int v = 0; v < scheme.num_vertices(); ++v) {
    VKind k = scheme.kinds[v];
    if (!is_ladder_vertex(k)) continue;
    auto it = specs.find(v);
    if (it != specs.end()) {
      TrackedLadder tl = build_ladder_tracked(out, it->second.word);
      leg_map[{v, 0}] = tl.side_a.out_leg;
      leg_map[{v, 1}] = tl.side_a.in_leg;
      leg_map[{v, 2}] = tl.side_b.out_leg;
      leg_map[{v, 3}] = tl.side_b.in_leg;
      for (const GapSpec& gp : it->second.gaps)
        res.gap_sites.push_back(tl.gap_edges(gp));
    } else {
      BuiltLadder bl = build_ladder(out, minimal_rungs(k));
      leg_map[{v, 0}] = bl.side_a.out_leg;
      leg_map[{v, 1}] = bl.side_a.in_leg;
      leg_map[{v, 2}] = bl.side_b.out_leg;
      leg_map[{v, 3}] = bl.side_b.in_leg;
    }
  }
  auto translate = [&](Slot s) -> Slot {
    auto lit = leg_map.find(s);
    if (lit != leg_map.end()) return lit->second;
    return {newid[s.v], s.s};
  };
  for (const Edge& e : scheme.edges())
    out.connect(translate(e.tail), translate(e.head));
  out.check();
  return res;
}

}  // namespace gen_detail

// ---------------------------------------------------------------------------
// Scheme generation: the same recursion at the level of schemes, inserting
// into split realizations and reducing every candidate back to its scheme.

struct SchemeSet {
  int genus = 0;
  std::map<std::string, Graph> schemes;  // canonical code -> scheme
  std::set<std::string> two_pi;          // codes of the irreducible schemes
};

struct SchemeGenOptions {
  // Rung cap: inserted connecting ladders carry 1..cap rungs, and pure piece
  // representatives in split realizations extend to this length.  Three
  // covers a dipole and both straight parities, which is all a scheme can
  // distinguish; the cap-robustness comparison reruns at four.
  int cap = 3;
  int max_schemes = 100000;  // closure guard
  bool two_pi_only = false;  // only the irreducible schemes of this genus
  int threads = 1;
};

inline SchemeSet generate_schemes(int genus,
                                  const SchemeGenOptions& opt = {}) {
  SchemeSet out;
  out.genus = genus;
  if (genus < 0) throw std::runtime_error("generate_schemes: negative genus");
  if (genus == 0) {
    Graph c = cycle_graph();
    std::string code = canonical_hex(c);
    out.schemes.emplace(code, c);
    out.two_pi.insert(code);
    return out;
  }
  if (genus == 1) {
    for (const Graph& s : schemes_genus_one()) {
      std::string code = canonical_hex(s);
      if (!out.schemes.emplace(code, s).second) continue;
      if (is_2pi(s)) out.two_pi.insert(code);
    }
    return out;
  }

  // Lower scheme sets feed all three assembly steps.
  std::vector<SchemeSet> lower(genus);
  SchemeGenOptions lower_opt = opt;
  lower_opt.two_pi_only = false;
  for (int k = 1; k < genus; ++k) lower[k] = generate_schemes(k, lower_opt);

  auto add_scheme = [&](const Graph& s, bool expect_2pi) {
    Invariants inv = invariants_any(s);
    if (inv.g != genus || inv.ell != 0)
      throw std::runtime_error("generate_schemes: candidate off-level");
    std::string code = canonical_hex(s);
    if (!out.schemes.emplace(code, s).second) return false;
    bool irr = is_2pi(s);
    if (irr != expect_2pi)
      throw std::runtime_error(
          "generate_schemes: irreducibility class mismatch");
    if (irr) out.two_pi.insert(code);
    if (static_cast<int>(out.schemes.size()) > opt.max_schemes)
      throw std::runtime_error(
          "generate_schemes: closure did not terminate within the bound");
    return true;
  };

  // Split-spec tables, shared by both assembly steps.
  std::map<VKind, std::vector<gen_detail::SplitSpec>> specs1, specs2;
  for (VKind k : {VKind::Ne, VKind::No, VKind::L, VKind::R, VKind::B}) {
    specs1[k] = gen_detail::split_specs(k, 1, opt.cap);
    specs2[k] = gen_detail::split_specs(k, 2, opt.cap);
  }
  // A job realizes a scheme with chosen split words; jobs with no splits use
  // the minimal realization and expose every edge (pair) as a cut site.
  struct Job {
    const Graph* scheme;
    std::map<int, gen_detail::SplitSpec> specs;
  };
  auto lv_ids = [](const Graph& s) {
    std::vector<int> lvs;
    for (int v = 0; v < s.num_vertices(); ++v)
      if (is_ladder_vertex(s.kinds[v])) lvs.push_back(v);
    return lvs;
  };

  // Irreducible step: connecting straight-ladder insertions into the
  // previous scheme set's realizations.  The two cuts can fall on plain
  // edges of the minimal realization or inside split ladders (one ladder
  // split once or twice, or two ladders split once each).  Candidates are
  // deduplicated by raw canonical code, then reduced to schemes.
  {
    std::vector<Job> jobs;
    for (const auto& [c, s] : lower[genus - 1].schemes) {
      jobs.push_back({&s, {}});
      auto lvs = lv_ids(s);
      for (int lv : lvs) {
        for (const auto& sp : specs1[s.kinds[lv]])
          jobs.push_back({&s, {{lv, sp}}});
        for (const auto& sp : specs2[s.kinds[lv]])
          jobs.push_back({&s, {{lv, sp}}});
      }
      for (size_t a = 0; a < lvs.size(); ++a)
        for (size_t b = a + 1; b < lvs.size(); ++b)
          for (const auto& spa : specs1[s.kinds[lvs[a]]])
            for (const auto& spb : specs1[s.kinds[lvs[b]]])
              jobs.push_back({&s, {{lvs[a], spa}, {lvs[b], spb}}});
    }
    auto found = gen_detail::parallel_collect(
        static_cast<int>(jobs.size()), opt.threads,
        [&](int ji, std::map<std::string, Graph>& sink) {
          auto tr = gen_detail::realize_tracked(*jobs[ji].scheme,
                                                jobs[ji].specs);
          const Graph& host = tr.graph;
          auto es = host.edges();
          std::vector<std::pair<Edge, Edge>> cuts;
          if (tr.gap_sites.empty()) {
            for (size_t i = 0; i < es.size(); ++i)
              for (size_t j = i; j < es.size(); ++j)
                cuts.emplace_back(es[i], es[j]);
          } else if (tr.gap_sites.size() == 1) {
            for (const Edge& a : tr.gap_sites[0])
              for (const Edge& b : es) cuts.emplace_back(a, b);
          } else {
            for (const Edge& a : tr.gap_sites[0])
              for (const Edge& b : tr.gap_sites[1]) cuts.emplace_back(a, b);
          }
          std::set<std::string> seen;
          for (const auto& [e1, e2] : cuts)
            for (int len = 1; len <= opt.cap; ++len) {
              int nvar = e1 == e2 ? 1 : 2;
              for (int var = 0; var < nvar; ++var) {
                Graph h = insert_connecting_N_raw(host, e1, e2, len, var);
                Invariants inv = invariants(h);
                if (inv.g != genus || inv.ell != 0) continue;
                if (!seen.insert(canonical_hex(h)).second) continue;
                Graph s = normalize_scheme(h);
                sink.emplace(canonical_hex(s), std::move(s));
              }
            }
        });
    for (const auto& [code, s] : found)
      if (is_2pi(s)) add_scheme(s, true);
  }
  if (opt.two_pi_only) return out;

  // Pair assembly: a separating structure or a two-edge connection between a
  // kept rooted scheme (realized, with split sites) and a lower scheme whose
  // root is smoothed away; only the smoothed root edge of the latter takes
  // part, so it enters as a scheme.
  {
    std::map<std::string, Graph> found;
    for (int g1 = 1; g1 < genus; ++g1) {
      int g2 = genus - g1;
      std::vector<Job> jobs;
      for (const auto& [c, s] : lower[g1].schemes) {
        jobs.push_back({&s, {}});
        for (int lv : lv_ids(s))
          for (const auto& sp : specs1[s.kinds[lv]])
            jobs.push_back({&s, {{lv, sp}}});
      }
      auto part = gen_detail::parallel_collect(
          static_cast<int>(jobs.size()), opt.threads,
          [&](int ji, std::map<std::string, Graph>& sink) {
            auto tr = gen_detail::realize_tracked(*jobs[ji].scheme,
                                                  jobs[ji].specs);
            const Graph& keep = tr.graph;
            std::vector<Edge> sites = tr.gap_sites.empty()
                                          ? keep.edges()
                                          : tr.gap_sites[0];
            std::set<std::string> seen;
            auto consider = [&](Graph h) {
              if (!seen.insert(canonical_hex(h)).second) return;
              Graph s = normalize_scheme(h);
              sink.emplace(canonical_hex(s), std::move(s));
            };
            for (const auto& [oc, other] : lower[g2].schemes)
              for (const Edge& site : sites) {
                consider(insert_two_edge_connection(keep, site, other));
                for (XKind x : all_x_kinds())
                  consider(insert_separating(keep, site, other, x));
              }
          });
      for (auto& kv : part) found.insert(std::move(kv));
    }
    for (const auto& [code, s] : found) add_scheme(s, false);
  }

  // Root-side closure, iterated to a fixed point: a dipole or ladder-vertex
  // between the rooted cycle and any scheme already found at this genus.
  {
    Graph cyc = cycle_graph();
    Edge root_edge = cyc.edges().front();
    std::vector<Graph> frontier;
    for (const auto& [c, s] : out.schemes) frontier.push_back(s);
    while (!frontier.empty()) {
      auto produced = gen_detail::parallel_collect(
          static_cast<int>(frontier.size()), opt.threads,
          [&](int i, std::map<std::string, Graph>& sink) {
            for (XKind x : all_x_kinds()) {
              Graph s = normalize_scheme(
                  insert_separating(cyc, root_edge, frontier[i], x));
              sink.emplace(canonical_hex(s), std::move(s));
            }
          });
      frontier.clear();
      for (const auto& [c, s] : produced)
        if (!out.schemes.count(c)) {
          add_scheme(s, false);
          frontier.push_back(s);
        }
    }
  }
  return out;
}

}  // namespace feyn
