#pragma once
// Brute-force ground truth: exhaustive enumeration of connected rooted
// stranded graphs up to root-preserving isomorphism, and (v, g, ell) census
// tables.
//
// Strategy: grow graphs along the canonical traversal order.  At each step the
// first unpaired slot (in traversal order) is completed, either by attaching a
// fresh standard vertex (entry slot normalized to 0/1, matching the canonical
// code's rotation convention) or by pairing with an existing unpaired slot of
// opposite direction.  Every isomorphism class is produced exactly once, which
// is property-tested against canonical-code deduplication.

#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <thread>

#include "feyn/stranded.hpp"

namespace feyn {

namespace detail {

struct EnumState {
  Graph g;
  std::vector<int> queue;  // traversal order of vertices
  size_t qi = 0;
};

template <typename Fn>
void enumerate_rec(EnumState st, int vmax, const Fn& emit) {
  // locate next unpaired slot in traversal order
  int v = -1, s = -1;
  while (st.qi < st.queue.size()) {
    int cand = st.queue[st.qi];
    VKind k = st.g.kinds[cand];
    for (int ls = 0; ls < nslots(k); ++ls)
      if (!st.g.paired({cand, ls})) {
        v = cand;
        s = ls;
        break;
      }
    if (v >= 0) break;
    ++st.qi;
  }
  if (v < 0) {
    emit(st.g);
    return;
  }
  bool out = slot_is_out(s);
  // (a) fresh standard vertex
  if (st.g.num_standard() < vmax) {
    EnumState nxt = st;
    int nv = nxt.g.add_vertex(VKind::Std);
    int entry = out ? 1 : 0;
    if (out)
      nxt.g.connect({v, s}, {nv, entry});
    else
      nxt.g.connect({nv, entry}, {v, s});
    nxt.queue.push_back(nv);
    enumerate_rec(std::move(nxt), vmax, emit);
  }
  // (b) existing unpaired slot of opposite direction
  for (int v2 : st.queue) {
    VKind k2 = st.g.kinds[v2];
    for (int s2 = 0; s2 < nslots(k2); ++s2) {
      if (slot_is_out(s2) == out) continue;
      if (st.g.paired({v2, s2})) continue;
      EnumState nxt = st;
      if (out)
        nxt.g.connect({v, s}, {v2, s2});
      else
        nxt.g.connect({v2, s2}, {v, s});
      enumerate_rec(std::move(nxt), vmax, emit);
    }
  }
}

}  // namespace detail

inline constexpr int kOracleVertexBound = 8;

// Calls `emit` once per isomorphism class of connected rooted graphs with at
// most vmax standard vertices.  Deterministic order.
template <typename Fn>
void enumerate_rooted(int vmax, const Fn& emit) {
  if (vmax < 0 || vmax > kOracleVertexBound)
    throw std::runtime_error("oracle bound exceeded (vmax must be 0.." +
                             std::to_string(kOracleVertexBound) + ")");
  detail::EnumState st;
  st.g.add_vertex(VKind::Root);
  st.queue = {0};
  detail::enumerate_rec(std::move(st), vmax, emit);
}

struct CensusKey {
  int v = 0, g = 0, ell = 0;
  bool melon_free = false;
  friend auto operator<=>(const CensusKey&, const CensusKey&) = default;
};

struct Census {
  // (v, g, ell) -> count, plus the melon-free restriction when requested.
  std::map<CensusKey, int64_t> rows;
  int64_t total = 0;

  int64_t count(int v, int g, int ell, bool melon_free = false) const {
    auto it = rows.find(CensusKey{v, g, ell, melon_free});
    return it == rows.end() ? 0 : it->second;
  }
};

// The melon-free predicate is injected to keep this module independent of the
// reduction machinery.
inline Census census(int vmax,
                     const std::function<bool(const Graph&)>& melon_free_pred =
                         nullptr) {
  Census c;
  enumerate_rooted(vmax, [&](const Graph& g) {
    Invariants inv = invariants(g);
    ++c.rows[CensusKey{inv.v, inv.g, inv.ell, false}];
    ++c.total;
    if (melon_free_pred && melon_free_pred(g))
      ++c.rows[CensusKey{inv.v, inv.g, inv.ell, true}];
  });
  return c;
}

// Deterministic multi-worker variant: the search forest below the first two
// branching levels is split across threads and merged in branch order, so the
// result is identical to the sequential run for any thread count.
inline Census census_parallel(
    int vmax, int threads,
    const std::function<bool(const Graph&)>& melon_free_pred = nullptr) {
  if (threads <= 1) return census(vmax, melon_free_pred);
  // Collect top-level branch states sequentially.
  std::vector<detail::EnumState> branches;
  {
    detail::EnumState st;
    st.g.add_vertex(VKind::Root);
    st.queue = {0};
    // expand two levels to get enough branches
    std::vector<detail::EnumState> level = {st};
    for (int depth = 0; depth < 2; ++depth) {
      std::vector<detail::EnumState> next;
      for (auto& b : level) {
        bool leaf = true;
        // replicate one step of enumerate_rec, collecting children
        int v = -1, s = -1;
        size_t qi = b.qi;
        while (qi < b.queue.size()) {
          int cand = b.queue[qi];
          for (int ls = 0; ls < nslots(b.g.kinds[cand]); ++ls)
            if (!b.g.paired({cand, ls})) {
              v = cand;
              s = ls;
              break;
            }
          if (v >= 0) break;
          ++qi;
        }
        if (v >= 0) {
          leaf = false;
          bool out = slot_is_out(s);
          if (b.g.num_standard() < vmax) {
            detail::EnumState nxt = b;
            nxt.qi = qi;
            int nv = nxt.g.add_vertex(VKind::Std);
            if (out)
              nxt.g.connect({v, s}, {nv, 1});
            else
              nxt.g.connect({nv, 0}, {v, s});
            nxt.queue.push_back(nv);
            next.push_back(std::move(nxt));
          }
          for (int v2 : b.queue) {
            for (int s2 = 0; s2 < nslots(b.g.kinds[v2]); ++s2) {
              if (slot_is_out(s2) == out || b.g.paired({v2, s2})) continue;
              detail::EnumState nxt = b;
              nxt.qi = qi;
              if (out)
                nxt.g.connect({v, s}, {v2, s2});
              else
                nxt.g.connect({v2, s2}, {v, s});
              next.push_back(std::move(nxt));
            }
          }
        }
        if (leaf) next.push_back(b);
      }
      level = std::move(next);
    }
    branches = std::move(level);
  }
  std::vector<std::future<Census>> futs;
  size_t nb = branches.size();
  size_t per = (nb + threads - 1) / threads;
  for (size_t lo = 0; lo < nb; lo += per) {
    size_t hi = std::min(nb, lo + per);
    futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
      Census part;
      for (size_t i = lo; i < hi; ++i)
        detail::enumerate_rec(branches[i], vmax, [&](const Graph& g) {
          Invariants inv = invariants(g);
          ++part.rows[CensusKey{inv.v, inv.g, inv.ell, false}];
          ++part.total;
          if (melon_free_pred && melon_free_pred(g))
            ++part.rows[CensusKey{inv.v, inv.g, inv.ell, true}];
        });
      return part;
    }));
  }
  Census merged;
  for (auto& f : futs) {
    Census part = f.get();
    merged.total += part.total;
    for (auto& [k, n] : part.rows) merged.rows[k] += n;
  }
  return merged;
}

}  // namespace feyn
