#ifndef FORGE_CANONICAL_HPP
#define FORGE_CANONICAL_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "forge/enumerate.hpp"

namespace forge {

// Cheap isomorphism invariant used for bucketing before pairwise tests.
inline std::vector<long> iso_invariant(const FinStructure& s) {
  std::vector<long> out;
  out.push_back(s.size());
  const auto& rsyms = s.sig()->relations();
  // per-element profile: for each relation and position, incidence count
  std::vector<std::vector<long>> prof(s.size());
  std::size_t offset = 0;
  for (std::size_t r = 0; r < rsyms.size(); ++r) {
    out.push_back(static_cast<long>(s.rel(static_cast<int>(r)).size()));
    int ar = rsyms[r].arity;
    for (int e = 0; e < s.size(); ++e)
      prof[e].resize(offset + ar, 0);
    for (const Tuple& t : s.rel(static_cast<int>(r)))
      for (std::size_t i = 0; i < t.size(); ++i)
        prof[t[i]][offset + i]++;
    offset += ar;
  }
  // one refinement round: append sorted multiset of neighbour profiles.
  // class ids come from the rank of each profile among the sorted distinct
  // profiles, which is labeling-independent.
  std::vector<long> key(s.size());
  {
    std::vector<std::vector<long>> distinct(prof.begin(), prof.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int e = 0; e < s.size(); ++e)
      key[e] = static_cast<long>(
          std::lower_bound(distinct.begin(), distinct.end(), prof[e]) - distinct.begin());
  }
  std::vector<std::vector<long>> prof2(s.size());
  for (int e = 0; e < s.size(); ++e) prof2[e].push_back(key[e]);
  for (std::size_t r = 0; r < rsyms.size(); ++r)
    for (const Tuple& t : s.rel(static_cast<int>(r)))
      for (int a : t)
        for (int b : t)
          if (a != b) prof2[a].push_back(key[b]);
  for (auto& p : prof2) std::sort(p.begin(), p.end());
  std::sort(prof2.begin(), prof2.end());
  for (const auto& p : prof2) {
    out.push_back(static_cast<long>(p.size()));
    out.insert(out.end(), p.begin(), p.end());
  }
  // function/constant fingerprints
  const auto& fsyms = s.sig()->functions();
  for (std::size_t f = 0; f < fsyms.size(); ++f) {
    long acc = 0;
    for (int v : s.fun(static_cast<int>(f))) acc = acc * 1315423911l + v + 1;
    out.push_back(acc);
  }
  out.push_back(static_cast<long>(s.constants().size()));
  return out;
}

// Lexicographically least certificate over all relabelings.  Only intended
// for small structures (n <= 7 or so).
inline std::vector<int> canonical_form(const FinStructure& s) {
  std::vector<int> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = s.certificate();
  std::vector<int> p = perm;
  while (std::next_permutation(p.begin(), p.end())) {
    std::vector<int> cert = s.relabel(p).certificate();
    if (cert < best) best = std::move(cert);
  }
  return best;
}

// Deduplicate up to isomorphism, keeping first occurrences in order.
inline std::vector<StructPtr> dedup_up_to_iso(const std::vector<StructPtr>& in) {
  std::vector<StructPtr> reps;
  std::map<std::vector<long>, std::vector<std::size_t>> buckets;
  for (const auto& s : in) {
    auto inv = iso_invariant(*s);
    auto& bucket = buckets[inv];
    bool fresh = true;
    for (std::size_t ri : bucket) {
      if (are_isomorphic(reps[ri], s)) { fresh = false; break; }
    }
    if (fresh) {
      bucket.push_back(reps.size());
      reps.push_back(s);
    }
  }
  return reps;
}

} // namespace forge

#endif
