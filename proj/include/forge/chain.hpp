#ifndef FORGE_CHAIN_HPP
#define FORGE_CHAIN_HPP

#include <string>
#include <vector>

#include "forge/age.hpp"

namespace forge {

struct ChainLogEntry {
  int step = 0;          // index of the stage this entry created
  long scan_position = 0; // obligation scan position at discharge time
  std::string kind;       // "initial" | "realize" | "extend" | "saturated"
  std::string detail;
};

// An inductive omega-sequence truncated at a finite depth.  Stage i maps into
// stage i+1 by steps[i]; composites are derived, never stored.
struct ChainSeq {
  std::string age_name;
  std::vector<StructPtr> stages;
  std::vector<Embedding> steps; // steps[i] : stages[i] -> stages[i+1]
  std::vector<ChainLogEntry> log;
  unsigned seed = 0;
  int realize_cap = 0;
  int ext_stage_cap = 0;

  int top_index() const { return static_cast<int>(stages.size()) - 1; }
  const StructPtr& top() const { return stages.back(); }

  Embedding composite(int i, int j) const {
    if (i < 0 || j > top_index() || i > j)
      throw std::invalid_argument("chain composite: bad indices");
    Embedding e = Embedding::identity(stages[i]);
    for (int t = i; t < j; ++t) e = e.then(steps[t]);
    return e;
  }

  // Birth stage of every element of the top stage: the least i whose image
  // in the top contains the element.
  std::vector<int> provenance() const {
    int N = top_index();
    std::vector<int> birth(top()->size(), N);
    for (int i = N - 1; i >= 0; --i) {
      Embedding c = composite(i, N);
      for (int x = 0; x < stages[i]->size(); ++x) birth[c(x)] = i;
    }
    return birth;
  }

  // Least stage whose image contains all the given top-stage elements.
  int provenance_of(const std::vector<int>& elems) const {
    auto birth = provenance();
    int p = 0;
    for (int e : elems) p = std::max(p, birth[e]);
    return p;
  }

  void validate() const {
    if (stages.empty()) throw std::logic_error("chain: no stages");
    if (steps.size() + 1 != stages.size())
      throw std::logic_error("chain: step/stage count mismatch");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (!(*steps[i].source() == *stages[i]) || !(*steps[i].target() == *stages[i + 1]))
        throw std::logic_error("chain: step endpoints disagree with stages");
      if (!steps[i].valid())
        throw std::logic_error("chain: step " + std::to_string(i) + " is not an embedding");
    }
  }
};

// Least j such that h factors through stage j, with the factored embedding.
inline std::pair<int, Embedding> factor_through_stage(const ChainSeq& S, const Embedding& h) {
  if (!(*h.target() == *S.top()))
    throw std::invalid_argument("factor_through_stage: map does not land in the top stage");
  int N = S.top_index();
  for (int j = 0; j <= N; ++j) {
    Embedding c = S.composite(j, N);
    std::vector<int> pre(S.top()->size(), -1);
    for (int x = 0; x < S.stages[j]->size(); ++x) pre[c(x)] = x;
    bool inside = true;
    for (int t = 0; t < h.source()->size(); ++t)
      if (pre[h(t)] < 0) { inside = false; break; }
    if (!inside) continue;
    std::vector<int> m(h.source()->size());
    for (int t = 0; t < h.source()->size(); ++t) m[t] = pre[h(t)];
    return {j, Embedding(h.source(), S.stages[j], std::move(m))};
  }
  throw std::logic_error("factor_through_stage: unreachable at finite truncation");
}

// Size of the truncated colimit plus the bound certified for the full limit:
// finite stages over a single sort always keep the limit countable.
inline std::pair<long, std::string> cardinality_bound(const ChainSeq& S) {
  return {S.top()->size(), "<= aleph_0"};
}

} // namespace forge

#endif
