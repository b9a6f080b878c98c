#pragma once
// Dominant schemes: those carrying the maximal number 2g-1 of broken
// ladder-vertices allowed at genus g.  They are in bijection with plane
// binary trees whose g leaves carry an even/odd decoration and whose g-1
// inner vertices carry one of four junction decorations; each tree edge is a
// broken ladder-vertex.  The module also provides the exact counts and the
// triple-scaled genus-resummed series D(kappa).

#include <cmath>

#include "feyn/generate.hpp"
#include "feyn/series.hpp"

namespace feyn {

// ---------------------------------------------------------------------------
// Decorated plane binary trees.

enum class LeafKind : uint8_t { Even, Odd };
enum class InnerKind : uint8_t { Planar, ContactN, ContactR, ContactL };

struct DecoratedTree {
  struct Node {
    bool leaf = true;
    LeafKind leaf_kind = LeafKind::Even;
    InnerKind inner_kind = InnerKind::Planar;
    int left = -1, right = -1;  // children (inner nodes only)
    friend bool operator==(const Node&, const Node&) = default;
  };
  // node 0 hangs below the valency-one root; children are ordered (plane)
  std::vector<Node> nodes;

  int leaves() const {
    int n = 0;
    for (const Node& nd : nodes) n += nd.leaf;
    return n;
  }
  int genus() const { return leaves(); }
  friend bool operator==(const DecoratedTree&, const DecoratedTree&) = default;
};

// All decorated trees with g leaves in preorder numbering (node 0 on top,
// then the left subtree block, then the right): Cat(g-1) shapes, 2
// decorations per leaf, 4 per inner vertex.
inline std::vector<DecoratedTree> enumerate_trees(int g) {
  if (g < 1) throw std::runtime_error("enumerate_trees: genus must be >= 1");
  std::function<std::vector<DecoratedTree>(int)> shapes =
      [&](int n) -> std::vector<DecoratedTree> {
    std::vector<DecoratedTree> out;
    if (n == 1) {
      DecoratedTree t;
      t.nodes.push_back({});
      out.push_back(t);
      return out;
    }
    for (int nl = 1; nl < n; ++nl)
      for (const DecoratedTree& l : shapes(nl))
        for (const DecoratedTree& r : shapes(n - nl)) {
          DecoratedTree t;
          DecoratedTree::Node inner;
          inner.leaf = false;
          inner.left = 1;
          inner.right = 1 + static_cast<int>(l.nodes.size());
          t.nodes.push_back(inner);
          auto append = [&](const DecoratedTree& sub, int off) {
            for (DecoratedTree::Node nd : sub.nodes) {
              if (!nd.leaf) {
                nd.left += off;
                nd.right += off;
              }
              t.nodes.push_back(nd);
            }
          };
          append(l, 1);
          append(r, inner.right);
          out.push_back(t);
        }
    return out;
  };
  std::vector<DecoratedTree> out;
  for (const DecoratedTree& shape : shapes(g)) {
    DecoratedTree t = shape;
    std::function<void(size_t)> deco = [&](size_t i) {
      if (i == t.nodes.size()) {
        out.push_back(t);
        return;
      }
      if (t.nodes[i].leaf) {
        for (LeafKind lk : {LeafKind::Even, LeafKind::Odd}) {
          t.nodes[i].leaf_kind = lk;
          deco(i + 1);
        }
      } else {
        for (InnerKind ik : {InnerKind::Planar, InnerKind::ContactN,
                             InnerKind::ContactR, InnerKind::ContactL}) {
          t.nodes[i].inner_kind = ik;
          deco(i + 1);
        }
      }
    };
    deco(0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dominance.

inline bool is_dominant(const Graph& scheme) {
  Invariants inv = invariants_any(scheme);
  return inv.ell == 0 && inv.g >= 1 && lv_counts(scheme).b == 2 * inv.g - 1;
}

inline BigInt catalan(int m) {
  BigInt num = 1, den = 1;
  for (int i = 0; i < m; ++i) {
    num *= 2 * m - i;
    den *= i + 1;
  }
  return num / den / (m + 1);
}

inline BigInt count_dominant(int g) {
  if (g < 1) throw std::runtime_error("count_dominant: genus must be >= 1");
  BigInt p = catalan(g - 1) * 2;
  for (int i = 1; i < g; ++i) p *= 8;  // 2^g 4^{g-1} = 2 * 8^{g-1}
  return p;
}

// ---------------------------------------------------------------------------
// Tree <-> scheme bijection.
//
// Conventions (arbitrary but fixed):
//  * every tree edge is a broken ladder-vertex whose side A (slots 0/1)
//    faces the root;
//  * the root vertex closes on the first edge: root.0 -> B.1, B.0 -> root.1;
//  * an even leaf closes its edge on an even straight ladder-vertex exactly
//    as in the irreducible genus-one scheme;
//  * an odd leaf closes it on an opened melonic pair threaded by an odd
//    straight ladder-vertex;
//  * a planar junction routes the parent and the two children cyclically;
//  * a contact junction is a standard-vertex pair keeping one internal edge
//    (which one distinguishes ContactN / ContactR / ContactL), its six free
//    slots wired to parent and children by the fixed permutations below.

namespace dominant_detail {

struct ContactPorts {
  std::array<Slot, 3> outs, ins;  // free slots of the pair, fixed order
};

// a, b: the standard pair; the kept internal edge per contact kind.
inline ContactPorts contact_ports(InnerKind k, int a, int b, Graph& g) {
  switch (k) {
    case InnerKind::ContactN:
      g.connect(a, 0, b, 1);
      return {{Slot{a, 2}, Slot{b, 0}, Slot{b, 2}},
              {Slot{a, 1}, Slot{a, 3}, Slot{b, 3}}};
    case InnerKind::ContactR:
      g.connect(a, 2, b, 3);
      return {{Slot{a, 0}, Slot{b, 0}, Slot{b, 2}},
              {Slot{a, 1}, Slot{b, 1}, Slot{a, 3}}};
    case InnerKind::ContactL:
      g.connect(b, 2, a, 3);
      return {{Slot{a, 0}, Slot{a, 2}, Slot{b, 0}},
              {Slot{a, 1}, Slot{b, 1}, Slot{b, 3}}};
    default:
      throw std::runtime_error("contact_ports: not a contact kind");
  }
}

// Role order: 0 = parent, 1 = left child, 2 = right child.  out_perm[r] is
// the index into ContactPorts::outs feeding role r; in_perm[r] the index
// into ins fed from role r.
struct ContactWiring {
  std::array<int, 3> out_perm, in_perm;
};

// fixed per contact kind; validated against the scheme generator
inline ContactWiring contact_wiring(InnerKind k) {
  switch (k) {
    case InnerKind::ContactN: return {{0, 1, 2}, {2, 0, 1}};
    case InnerKind::ContactR: return {{1, 0, 2}, {0, 1, 2}};
    case InnerKind::ContactL: return {{1, 0, 2}, {2, 1, 0}};
    default: throw std::runtime_error("contact_wiring: not a contact kind");
  }
}

using WiringTable = std::array<ContactWiring, 3>;  // indexed N, R, L

inline WiringTable default_wirings() {
  return {contact_wiring(InnerKind::ContactN),
          contact_wiring(InnerKind::ContactR),
          contact_wiring(InnerKind::ContactL)};
}

inline int wiring_index(InnerKind k) {
  switch (k) {
    case InnerKind::ContactN: return 0;
    case InnerKind::ContactR: return 1;
    case InnerKind::ContactL: return 2;
    default: throw std::runtime_error("wiring_index: not a contact kind");
  }
}

inline Graph tree_to_scheme_wired(const DecoratedTree& t,
                                  const WiringTable& wt) {
  Graph g;
  int root = g.add_vertex(VKind::Root);
  // create the edge ladder-vertex for node 0 and recurse
  std::function<int(int)> build;  // returns the B ladder-vertex of the edge
  build = [&](int node) {
    int bv = g.add_vertex(VKind::B);
    const DecoratedTree::Node& nd = t.nodes[node];
    if (nd.leaf) {
      if (nd.leaf_kind == LeafKind::Even) {
        int lv = g.add_vertex(VKind::Ne);
        g.connect(bv, 2, lv, 1);
        g.connect(lv, 2, bv, 3);
        g.connect(lv, 0, lv, 3);
      } else {
        int a = g.add_vertex(VKind::Std), b = g.add_vertex(VKind::Std);
        int lv = g.add_vertex(VKind::No);
        g.connect(bv, 2, a, 1);
        g.connect(b, 0, bv, 3);
        g.connect(a, 0, lv, 1);
        g.connect(lv, 0, b, 1);
        g.connect(a, 2, lv, 3);
        g.connect(lv, 2, b, 3);
        g.connect(b, 2, a, 3);
      }
      return bv;
    }
    if (nd.inner_kind == InnerKind::Planar) {
      int c1 = build(nd.left), c2 = build(nd.right);
      g.connect(bv, 2, c1, 1);
      g.connect(c1, 0, c2, 1);
      g.connect(c2, 0, bv, 3);
      return bv;
    }
    int a = g.add_vertex(VKind::Std), b = g.add_vertex(VKind::Std);
    ContactPorts cp = contact_ports(nd.inner_kind, a, b, g);
    const ContactWiring& w = wt[wiring_index(nd.inner_kind)];
    int c1 = build(nd.left), c2 = build(nd.right);
    std::array<Slot, 3> role_in = {Slot{bv, 3}, Slot{c1, 1}, Slot{c2, 1}};
    std::array<Slot, 3> role_out = {Slot{bv, 2}, Slot{c1, 0}, Slot{c2, 0}};
    for (int r = 0; r < 3; ++r) {
      g.connect(cp.outs[w.out_perm[r]], role_in[r]);
      g.connect(role_out[r], cp.ins[w.in_perm[r]]);
    }
    return bv;
  };
  int b0 = build(0);
  g.connect(root, 0, b0, 1);
  g.connect(b0, 0, root, 1);
  g.check();
  return g;
}

}  // namespace dominant_detail

inline Graph tree_to_scheme(const DecoratedTree& t) {
  return dominant_detail::tree_to_scheme_wired(
      t, dominant_detail::default_wirings());
}

inline DecoratedTree scheme_to_tree(const Graph& s) {
  if (!is_dominant(s)) throw std::runtime_error("scheme is not dominant");
  DecoratedTree t;  // decode() appends children first; renumbered at the end
  // Canonical forms may present any vertex rotated by a half-turn
  // (slots shifted by two), so every pattern carries a rotation per vertex.
  auto rot = [](Slot sl, int r) { return Slot{sl.v, (sl.s + r) & 3}; };
  // decode(bv, rb): bv is the edge ladder-vertex, rotated by rb; its child
  // side is slots (2+rb, 3+rb) mod 4.
  std::function<int(int, int)> decode = [&](int bv, int rb) -> int {
    Slot co{bv, (2 + rb) & 3}, ci{bv, (3 + rb) & 3};
    Slot far = s.mate(co);
    DecoratedTree::Node nd;
    bool done = false;
    // even leaf
    if (s.kinds[far.v] == VKind::Ne && (far.s & 1) == 1) {
      int rn = far.s == 1 ? 0 : 2;
      int ne = far.v;
      if (s.mate(rot({ne, 2}, rn)) == ci &&
          s.mate(rot({ne, 0}, rn)) == rot(Slot{ne, 3}, rn)) {
        nd.leaf = true;
        nd.leaf_kind = LeafKind::Even;
        done = true;
      }
    }
    // odd leaf: opened melonic pair threaded by an odd straight ladder
    if (!done && s.kinds[far.v] == VKind::Std && (far.s & 1) == 1) {
      int a = far.v, ra = far.s == 1 ? 0 : 2;
      Slot n1 = s.mate(rot({a, 0}, ra));
      if (s.kinds[n1.v] == VKind::No && (n1.s & 1) == 1) {
        int lv = n1.v, rl = n1.s == 1 ? 0 : 2;
        Slot b1 = s.mate(rot({lv, 0}, rl));
        if (s.kinds[b1.v] == VKind::Std && (b1.s & 1) == 1) {
          int b = b1.v, rbb = b1.s == 1 ? 0 : 2;
          if (s.mate(rot({a, 2}, ra)) == rot(Slot{lv, 3}, rl) &&
              s.mate(rot({lv, 2}, rl)) == rot(Slot{b, 3}, rbb) &&
              s.mate(rot({b, 2}, rbb)) == rot(Slot{a, 3}, ra) &&
              s.mate(rot({b, 0}, rbb)) == ci) {
            nd.leaf = true;
            nd.leaf_kind = LeafKind::Odd;
            done = true;
          }
        }
      }
    }
    // planar junction
    if (!done && s.kinds[far.v] == VKind::B && (far.s & 1) == 1) {
      int c1 = far.v, r1 = far.s - 1;
      Slot c2a = s.mate({c1, r1});
      if (s.kinds[c2a.v] == VKind::B && (c2a.s & 1) == 1) {
        int c2 = c2a.v, r2 = c2a.s - 1;
        if (s.mate({c2, r2}) == ci) {
          nd.leaf = false;
          nd.inner_kind = InnerKind::Planar;
          nd.left = decode(c1, r1);
          nd.right = decode(c2, r2);
          done = true;
        }
      }
    }
    // contact junction: try each kind, pair labeling, and pair rotations
    if (!done && s.kinds[far.v] == VKind::Std) {
      for (InnerKind k : {InnerKind::ContactN, InnerKind::ContactR,
                          InnerKind::ContactL}) {
        const auto w = dominant_detail::contact_wiring(k);
        for (int swapped = 0; swapped < 2 && !done; ++swapped)
          for (int ra = 0; ra < 4 && !done; ra += 2)
            for (int rc = 0; rc < 4 && !done; rc += 2) {
              Graph scratch;
              int a0 = scratch.add_vertex(VKind::Std),
                  b0 = scratch.add_vertex(VKind::Std);
              auto cp = dominant_detail::contact_ports(k, a0, b0, scratch);
              // the port feeding ci pins one real vertex of the pair
              Slot want = cp.outs[w.out_perm[0]];
              Slot real_out = s.mate(ci);
              if (s.kinds[real_out.v] != VKind::Std) break;
              int va = -1, vb = -1;
              (want.v == a0 ? va : vb) = real_out.v;
              // the kept edge leads to the partner: the only Std neighbor
              int known = va >= 0 ? va : vb;
              int other = -1;
              for (int sl = 0; sl < 4; ++sl) {
                Slot m = s.mate({known, sl});
                if (s.kinds[m.v] == VKind::Std && m.v != known) other = m.v;
              }
              if (other < 0) break;
              (va >= 0 ? vb : va) = other;
              if (swapped) std::swap(va, vb);
              auto real_slot = [&](Slot sc) {
                return sc.v == a0 ? rot(Slot{va, sc.s}, ra)
                                  : rot(Slot{vb, sc.s}, rc);
              };
              // kept edge per kind
              Slot kt, kh;
              switch (k) {
                case InnerKind::ContactN:
                  kt = real_slot({a0, 0});
                  kh = real_slot({b0, 1});
                  break;
                case InnerKind::ContactR:
                  kt = real_slot({a0, 2});
                  kh = real_slot({b0, 3});
                  break;
                default:
                  kt = real_slot({b0, 2});
                  kh = real_slot({a0, 3});
                  break;
              }
              bool ok = s.mate(kt) == kh;
              // parent wiring
              if (ok)
                ok = s.mate(real_slot(cp.outs[w.out_perm[0]])) == ci &&
                     s.mate(co) == real_slot(cp.ins[w.in_perm[0]]);
              // children wiring
              int c1 = -1, c2 = -1, r1 = 0, r2 = 0;
              if (ok) {
                Slot m1 = s.mate(real_slot(cp.outs[w.out_perm[1]]));
                Slot m2 = s.mate(real_slot(cp.outs[w.out_perm[2]]));
                ok = s.kinds[m1.v] == VKind::B && (m1.s & 1) == 1 &&
                     s.kinds[m2.v] == VKind::B && (m2.s & 1) == 1;
                if (ok) {
                  c1 = m1.v;
                  c2 = m2.v;
                  r1 = m1.s - 1;
                  r2 = m2.s - 1;
                  ok = s.mate({c1, r1}) == real_slot(cp.ins[w.in_perm[1]]) &&
                       s.mate({c2, r2}) == real_slot(cp.ins[w.in_perm[2]]);
                }
              }
              if (!ok) continue;
              nd.leaf = false;
              nd.inner_kind = k;
              nd.left = decode(c1, r1);
              nd.right = decode(c2, r2);
              done = true;
            }
        if (done) break;
      }
    }
    if (!done) throw std::runtime_error("unrecognized dominant structure");
    t.nodes.push_back(nd);
    return static_cast<int>(t.nodes.size()) - 1;
  };
  // locate the root edge
  if (s.root < 0) throw std::runtime_error("scheme has no root");
  Slot first = s.mate({s.root, 0});
  if (!(s.kinds[first.v] == VKind::B && (first.s & 1) == 1 &&
        s.mate({first.v, first.s - 1}) == Slot{s.root, 1}))
    throw std::runtime_error("root is not closed on a broken ladder-vertex");
  int top = decode(first.v, first.s - 1);
  // renumber to preorder, matching enumerate_trees
  DecoratedTree fixed;
  std::function<int(int)> copy = [&](int v) -> int {
    int id = static_cast<int>(fixed.nodes.size());
    fixed.nodes.push_back(t.nodes[v]);
    if (!t.nodes[v].leaf) {
      fixed.nodes[id].left = copy(t.nodes[v].left);
      fixed.nodes[id].right = copy(t.nodes[v].right);
    }
    return id;
  };
  copy(top);
  return fixed;
}

// ---------------------------------------------------------------------------
// Triple-scaled series D(kappa).

struct TripleScaledSeries {
  // coefficient of kappa^{2g} is prefactor * reduced[g] (reduced[0] = 0)
  std::vector<Rational> reduced;
  double prefactor = 0;
  double kappa_c = 0;

  double eval(double kappa) const {
    double acc = 0, k2 = kappa * kappa, p = 1;
    for (size_t g = 0; g < reduced.size(); ++g) {
      if (g > 0) p *= k2;
      acc += static_cast<double>(reduced[g]) * p;
    }
    return prefactor * acc;
  }
};

inline double dominant_kappa_c() { return 2.0 * std::sqrt(3.0 / 5.0); }

inline TripleScaledSeries D_series(int order) {
  if (order < 1) throw std::runtime_error("D_series: order must be >= 1");
  TripleScaledSeries s;
  s.prefactor = (2.0 / 3.0) * std::sqrt(8.0 / 3.0);
  s.kappa_c = dominant_kappa_c();
  s.reduced.assign(order + 1, Rational(0));
  Rational p(1);
  for (int g = 1; g <= order; ++g) {
    p *= Rational(5, 48);
    s.reduced[g] = Rational(catalan(g - 1)) * p;
  }
  return s;
}

inline double D_closed(double kappa) {
  double z = 5.0 * kappa * kappa / 12.0;
  if (z > 1.0)
    throw std::runtime_error("D_closed: |kappa| beyond the critical value");
  return std::pow(2.0 / 3.0, 1.5) * (1.0 - std::sqrt(1.0 - z));
}

// Radius of convergence in kappa from successive coefficient ratios, with
// one Richardson extrapolation step to remove the 1/g correction.
inline double critical_kappa_ratio(const TripleScaledSeries& s) {
  int top = static_cast<int>(s.reduced.size()) - 1;
  if (top < 3) throw std::runtime_error("series too short for a ratio test");
  auto est = [&](int g) {
    double r = static_cast<double>(s.reduced[g] / s.reduced[g - 1]);
    return 1.0 / std::sqrt(r);
  };
  double eg = est(top), eg1 = est(top - 1);
  return top * eg - (top - 1) * eg1;
}

// Expected genus <g> = (1/2) kappa d/dkappa ln D, from the closed form.
inline double mean_genus(double kappa) {
  if (kappa <= 0 || kappa >= dominant_kappa_c())
    throw std::runtime_error("mean_genus: kappa out of (0, kappa_c)");
  double y = kappa * kappa / (dominant_kappa_c() * dominant_kappa_c());
  double r = std::sqrt(1.0 - y);
  return (1.0 + r) / (2.0 * r);
}

}  // namespace feyn
