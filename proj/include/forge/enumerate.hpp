#ifndef FORGE_ENUMERATE_HPP
#define FORGE_ENUMERATE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "forge/embedding.hpp"

namespace forge {

// Backtracking search for embeddings A -> B extending a partial map.
// Elements of A are assigned in index order with ascending candidate targets,
// so complete maps are produced in lexicographic order.  Constants and
// function tables force assignments, which are propagated eagerly.
class EmbeddingSearch {
public:
  using Callback = std::function<bool(const std::vector<int>&)>; // false stops

  EmbeddingSearch(const FinStructure& A, const FinStructure& B)
      : A_(A), B_(B) {
    if (*A.sig() != *B.sig())
      throw std::invalid_argument("embedding search: signature mismatch");
    build_incidence();
  }

  // pins: partial map (size A.size(), -1 where free).
  void run(const std::vector<int>& pins, const Callback& cb) const {
    const int n = A_.size();
    std::vector<int> map(n, -1);
    std::vector<char> used(B_.size(), 0);
    std::vector<int> trail;

    auto assign = [&](int x, int t) -> bool {
      if (map[x] != -1) return map[x] == t;
      if (t < 0 || t >= B_.size() || used[t]) return false;
      map[x] = t;
      used[t] = 1;
      trail.push_back(x);
      return true;
    };
    auto undo_to = [&](std::size_t mark) {
      while (trail.size() > mark) {
        int x = trail.back();
        trail.pop_back();
        used[map[x]] = 0;
        map[x] = -1;
      }
    };

    // Check relation tuples that became fully assigned with x, both ways,
    // then propagate forced function values.  Returns false on conflict.
    std::function<bool(int)> settle = [&](int x) -> bool {
      int t = map[x];
      for (const auto& r_idx_tuples : a_incident_[x]) {
        int r = r_idx_tuples.first;
        for (int ti : r_idx_tuples.second) {
          const Tuple& tup = A_.rel(r)[ti];
          bool full = true;
          for (int e : tup)
            if (map[e] == -1) { full = false; break; }
          if (!full) continue;
          Tuple img(tup.size());
          for (std::size_t i = 0; i < tup.size(); ++i) img[i] = map[tup[i]];
          if (!B_.rel_holds(r, img)) return false;
        }
      }
      // reflect: target tuples incident to t whose coords are all in the image
      std::vector<int> pre(B_.size(), -1);
      // NOTE: pre is rebuilt per settle call; fine at these sizes.
      for (int i = 0; i < A_.size(); ++i)
        if (map[i] != -1) pre[map[i]] = i;
      for (const auto& r_idx_tuples : b_incident_[t]) {
        int r = r_idx_tuples.first;
        for (int ti : r_idx_tuples.second) {
          const Tuple& tup = B_.rel(r)[ti];
          bool inside = true;
          for (int e : tup)
            if (pre[e] == -1) { inside = false; break; }
          if (!inside) continue;
          Tuple src(tup.size());
          for (std::size_t i = 0; i < tup.size(); ++i) src[i] = pre[tup[i]];
          if (!A_.rel_holds(r, src)) return false;
        }
      }
      // function propagation: argument tuples containing x that are fully
      // assigned force the value's image.  One position is fixed at x so the
      // work per call stays O(arity * assigned^(arity-1)); combinations with
      // elements assigned later are handled by their own settle calls.
      const auto& fsyms = A_.sig()->functions();
      if (!fsyms.empty()) {
        std::vector<int> assigned;
        for (int i = 0; i < A_.size(); ++i)
          if (map[i] != -1) assigned.push_back(i);
        for (std::size_t f = 0; f < fsyms.size(); ++f) {
          int ar = fsyms[f].arity;
          Tuple args(ar);
          for (int fixed = 0; fixed < ar; ++fixed) {
            std::vector<std::size_t> pos(ar, 0);
            bool done = false;
            while (!done) {
              bool skip = false;
              for (int i = 0; i < ar; ++i) {
                args[i] = (i == fixed) ? x : assigned[pos[i]];
                // avoid double-processing tuples where an earlier slot is x
                if (i < fixed && args[i] == x) skip = true;
              }
              if (!skip) {
                int v = A_.fun_apply(static_cast<int>(f), args);
                Tuple margs(ar);
                for (int i = 0; i < ar; ++i) margs[i] = map[args[i]];
                int w = B_.fun_apply(static_cast<int>(f), margs);
                if (map[v] != -1) {
                  if (map[v] != w) return false;
                } else {
                  if (!assign(v, w)) return false;
                  if (!settle(v)) return false;
                }
              }
              int i = ar - 1;
              while (i >= 0) {
                if (i == fixed) { --i; continue; }
                if (++pos[i] < assigned.size()) break;
                pos[i] = 0;
                --i;
              }
              if (i < 0) done = true;
            }
          }
        }
      }
      return true;
    };

    // 0-ary relations must agree outright
    const auto& rsyms = A_.sig()->relations();
    for (std::size_t r = 0; r < rsyms.size(); ++r)
      if (rsyms[r].arity == 0 &&
          A_.rel(static_cast<int>(r)).empty() != B_.rel(static_cast<int>(r)).empty())
        return;

    // seed: constants, then pins
    const auto& cons = A_.constants();
    for (std::size_t c = 0; c < cons.size(); ++c) {
      if (!assign(cons[c], B_.constant(static_cast<int>(c)))) return;
      if (!settle(cons[c])) return;
    }
    for (int x = 0; x < n; ++x) {
      if (pins.empty()) break;
      if (pins[x] == -1) continue;
      if (!assign(x, pins[x])) return;
      if (!settle(x)) return;
    }

    bool stop = false;
    std::function<void(int)> rec = [&](int x) {
      if (stop) return;
      while (x < n && map[x] != -1) ++x;
      if (x == n) {
        if (!cb(map)) stop = true;
        return;
      }
      for (int t = 0; t < B_.size() && !stop; ++t) {
        if (used[t]) continue;
        std::size_t mark = trail.size();
        if (assign(x, t) && settle(x)) rec(x + 1);
        undo_to(mark);
      }
    };
    rec(0);
  }

private:
  void build_incidence() {
    auto make = [](const FinStructure& S) {
      std::vector<std::vector<std::pair<int, std::vector<int>>>> inc(S.size());
      const auto& rsyms = S.sig()->relations();
      for (std::size_t r = 0; r < rsyms.size(); ++r) {
        std::vector<std::vector<int>> per_elem(S.size());
        const auto& tuples = S.rel(static_cast<int>(r));
        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
          std::vector<char> seen(S.size(), 0);
          for (int e : tuples[ti]) {
            if (!seen[e]) per_elem[e].push_back(static_cast<int>(ti));
            seen[e] = 1;
          }
        }
        for (int e = 0; e < S.size(); ++e)
          if (!per_elem[e].empty())
            inc[e].push_back({static_cast<int>(r), std::move(per_elem[e])});
      }
      return inc;
    };
    a_incident_ = make(A_);
    b_incident_ = make(B_);
  }

  const FinStructure& A_;
  const FinStructure& B_;
  // per element: list of (relation index, tuple indices touching the element)
  std::vector<std::vector<std::pair<int, std::vector<int>>>> a_incident_;
  std::vector<std::vector<std::pair<int, std::vector<int>>>> b_incident_;
};

inline void for_each_embedding(const StructPtr& A, const StructPtr& B,
                               const std::function<bool(const Embedding&)>& cb,
                               const std::vector<int>& pins = {}) {
  EmbeddingSearch s(*A, *B);
  s.run(pins, [&](const std::vector<int>& map) {
    return cb(Embedding(A, B, map));
  });
}

// All embeddings A -> B in lexicographic order of the element map.
inline std::vector<Embedding> enumerate_embeddings(const StructPtr& A, const StructPtr& B,
                                                   const std::vector<int>& pins = {}) {
  std::vector<Embedding> out;
  for_each_embedding(A, B, [&](const Embedding& e) {
    out.push_back(e);
    return true;
  }, pins);
  return out;
}

inline std::optional<Embedding> first_embedding(const StructPtr& A, const StructPtr& B,
                                                const std::vector<int>& pins = {}) {
  std::optional<Embedding> found;
  for_each_embedding(A, B, [&](const Embedding& e) {
    found = e;
    return false;
  }, pins);
  return found;
}

inline bool embeds(const StructPtr& A, const StructPtr& B,
                   const std::vector<int>& pins = {}) {
  return first_embedding(A, B, pins).has_value();
}

// First isomorphism witness in canonical order, if any.
inline std::optional<Embedding> are_isomorphic(const StructPtr& A, const StructPtr& B) {
  if (*A->sig() != *B->sig())
    throw std::invalid_argument("are_isomorphic: signature mismatch");
  if (A->size() != B->size()) return std::nullopt;
  return first_embedding(A, B);
}

// Full automorphism group as a list; identity comes first because the
// enumeration is lexicographic.
inline std::vector<Embedding> automorphisms(const StructPtr& A) {
  return enumerate_embeddings(A, A);
}

} // namespace forge

#endif
