#ifndef FORGE_CHAIN_BUILD_HPP
#define FORGE_CHAIN_BUILD_HPP

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "forge/chain.hpp"
#include "forge/enumerate.hpp"

namespace forge {

struct BuildOptions {
  int steps = 30;            // total number of stages produced
  unsigned seed = 0;
  int realize_cap = -1;      // -1: age default
  int ext_stage_cap = -1;    // -1: age default
};

namespace detail {

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> d(0, i - 1);
    std::swap(v[i - 1], v[d(rng)]);
  }
}

} // namespace detail

// Fair construction of a truncated Fraisse sequence.  Obligations come in two
// families: realize obligations (every member up to the realize cap must
// embed into some stage) and extension obligations (every minimal one-step
// extension of every small-enough stage must be absorbed later in the chain).
// The scan dovetails them by rounds: round r covers the size-r members and
// the extensions of stage r-1, so realizing big members never starves the
// extension work on early stages.  Each step discharges the first unmet
// obligation by extending the top stage with the age's canonical amalgam; a
// step with nothing left to discharge repeats the top stage.  The seed only
// permutes the scan order of same-size members of size >= 4, where the
// canonical order between them is arbitrary.
class ChainBuilder {
public:
  ChainBuilder(const AgeClass& age, const BuildOptions& opt) : age_(age), opt_(opt) {
    if (!age.supports_build())
      throw AgeError(age.name() + ": chain construction unsupported for this class");
    if (opt_.steps < 1) throw AgeError("build: steps must be >= 1");
    if (opt_.realize_cap < 0) opt_.realize_cap = age.realize_cap();
    if (opt_.ext_stage_cap < 0) opt_.ext_stage_cap = age.ext_stage_cap();
  }

  ChainSeq run() {
    ChainSeq chain;
    chain.age_name = age_.name();
    chain.seed = opt_.seed;
    chain.realize_cap = opt_.realize_cap;
    chain.ext_stage_cap = opt_.ext_stage_cap;

    prepare_realize_stream();

    // first stage: smallest member of the class
    StructPtr first;
    for (int s = 0; s <= age_.search_bound() && !first; ++s) {
      const auto& ms = age_.members_of_size(s);
      if (!ms.empty()) first = ms.front();
    }
    if (!first) throw AgeError(age_.name() + ": class has no members");
    chain.stages.push_back(first);
    chain.log.push_back({0, 0, "initial", "size " + std::to_string(first->size())});

    while (static_cast<int>(chain.stages.size()) < opt_.steps) {
      int step = static_cast<int>(chain.stages.size());
      long pos = 0;
      bool discharged = false;
      int max_round =
          std::max(std::min(opt_.realize_cap, age_.search_bound()),
                   static_cast<int>(chain.stages.size()));

      for (int round = 0; round <= max_round && !discharged; ++round) {
        // realize obligations of size `round`, in schedule order
        for (std::size_t ri = 0; ri < realize_stream_.size() && !discharged; ++ri) {
          if (realize_stream_[ri]->size() != round) continue;
          ++pos;
          if (realize_met_.size() <= ri) realize_met_.resize(realize_stream_.size(), false);
          if (realize_met_[ri]) continue;
          if (embeds(realize_stream_[ri], chain.top())) {
            realize_met_[ri] = true;
            continue;
          }
          FinStructure next = age_.joint_extend(*chain.top(), *realize_stream_[ri]);
          append_stage(chain, std::move(next), step, pos, "realize",
                       "member size " + std::to_string(realize_stream_[ri]->size()) +
                           " stream index " + std::to_string(ri));
          realize_met_[ri] = true;
          discharged = true;
        }
        // extension obligations of stage round-1, in canonical order
        int i = round - 1;
        if (discharged || i < 0 || i >= static_cast<int>(chain.stages.size())) continue;
        if (i > 0 && *chain.stages[i] == *chain.stages[i - 1]) continue; // repeated stage
        if (chain.stages[i]->size() > opt_.ext_stage_cap) continue;
        const auto& exts = extensions_for(chain, i);
        for (std::size_t e = 0; e < exts.size() && !discharged; ++e) {
          ++pos;
          auto key = std::make_pair(i, e);
          if (ext_met_.count(key)) continue;
          if (extension_met(chain, i, exts[e])) {
            ext_met_.insert(key);
            continue;
          }
          FinStructure next =
              age_.extend_with(*chain.top(), chain.stages[i]->size(), exts[e]);
          append_stage(chain, std::move(next), step, pos, "extend",
                       "stage " + std::to_string(i) + ": " + exts[e].label);
          ext_met_.insert(key);
          discharged = true;
        }
      }

      if (!discharged) {
        chain.stages.push_back(chain.top());
        chain.steps.push_back(Embedding::identity(chain.top()));
        chain.log.push_back({step, pos, "saturated", "no unmet obligation within schedule"});
      }
    }
    return chain;
  }

private:
  void prepare_realize_stream() {
    std::mt19937 rng(opt_.seed);
    for (int s = 0; s <= std::min(opt_.realize_cap, age_.search_bound()); ++s) {
      std::vector<StructPtr> ms = age_.members_of_size(s);
      if (s >= 4 && ms.size() > 1) detail::seeded_shuffle(ms, rng);
      for (auto& m : ms) realize_stream_.push_back(std::move(m));
    }
  }

  const std::vector<MinimalExtension>& extensions_for(const ChainSeq& chain, int i) {
    auto it = ext_cache_.find(i);
    if (it == ext_cache_.end())
      it = ext_cache_.emplace(i, age_.minimal_extensions(*chain.stages[i])).first;
    return it->second;
  }

  // Obligation (i, ext) is met iff the extension maps into the top stage
  // compatibly with the chain map of stage i.
  bool extension_met(const ChainSeq& chain, int i, const MinimalExtension& ext) {
    Embedding into_top = chain.composite(i, chain.top_index());
    StructPtr extp = share(ext.extended);
    std::vector<int> pins(ext.extended.size(), -1);
    for (int z = 0; z < chain.stages[i]->size(); ++z) pins[z] = into_top(z);
    return embeds(extp, chain.top(), pins);
  }

  void append_stage(ChainSeq& chain, FinStructure next, int step, long pos,
                    const std::string& kind, const std::string& detail) {
    StructPtr np = share(std::move(next));
    StructPtr old = chain.top();
    std::vector<int> incl(old->size());
    for (int x = 0; x < old->size(); ++x) incl[x] = x;
    Embedding stepmap(old, np, std::move(incl));
    if (!stepmap.valid())
      throw std::logic_error("builder: constructed stage does not extend the top (" +
                             kind + ": " + detail + ")");
    chain.stages.push_back(np);
    chain.steps.push_back(std::move(stepmap));
    chain.log.push_back({step, pos, kind, detail});
  }

  const AgeClass& age_;
  BuildOptions opt_;
  std::vector<StructPtr> realize_stream_;
  std::vector<bool> realize_met_;
  std::map<int, std::vector<MinimalExtension>> ext_cache_;
  std::set<std::pair<int, std::size_t>> ext_met_;
};

inline ChainSeq build_fraisse_sequence(const AgeClass& age, const BuildOptions& opt = {}) {
  return ChainBuilder(age, opt).run();
}

} // namespace forge

#endif
