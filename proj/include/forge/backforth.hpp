#ifndef FORGE_BACKFORTH_HPP
#define FORGE_BACKFORTH_HPP

#include <optional>
#include <sstream>

#include "forge/chain_verify.hpp"

namespace forge {

// Zig-zag data between two chains: strictly increasing reindexings k, l and
// arrow families F(i) : u_k(i) -> v_l(i), G(i) : v_l(i) -> u_k(i+1) with
//   G(i) o F(i) = u_k(i)^k(i+1)   and   F(i+1) o G(i) = v_l(i)^l(i+1).
struct ZigZagWeave {
  ChainSeq u_chain;
  ChainSeq v_chain;
  std::vector<int> k; // size depth+1
  std::vector<int> l; // size depth+1
  std::vector<Embedding> F; // size depth+1
  std::vector<Embedding> G; // size depth

  int depth() const { return static_cast<int>(G.size()); }

  void validate() const {
    if (k.size() != F.size() || l.size() != F.size() || G.size() + 1 != F.size())
      throw std::logic_error("weave: ragged data");
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (k[i] >= k[i + 1] || l[i] >= l[i + 1])
        throw std::logic_error("weave: reindexing not strictly increasing");
      Embedding lhs = F[i].then(G[i]);
      Embedding rhs = u_chain.composite(k[i], k[i + 1]);
      if (!lhs.same_arrow(rhs))
        throw std::logic_error("weave: G(i) o F(i) != chain map at i=" + std::to_string(i));
      Embedding lhs2 = G[i].then(F[i + 1]);
      Embedding rhs2 = v_chain.composite(l[i], l[i + 1]);
      if (!lhs2.same_arrow(rhs2))
        throw std::logic_error("weave: F(i+1) o G(i) != chain map at i=" + std::to_string(i));
    }
  }
};

enum class WeaveOutcome { Completed, TruncationExhausted, NoDischargeFound };

struct WeaveResult {
  WeaveOutcome outcome = WeaveOutcome::NoDischargeFound;
  int depth_reached = 0;
  std::optional<ZigZagWeave> weave;
  std::string note;
};

namespace detail {

// Find the least j in (from, N] and an embedding of `src` into stage j of
// `target_chain` that restricts to the chain map on the image of `prev`.
inline std::optional<std::pair<int, Embedding>>
weave_step(const ChainSeq& target_chain, int from, const StructPtr& src,
           const Embedding& prev /* stage_from_of_target -> src */) {
  int N = target_chain.top_index();
  for (int j = from + 1; j <= N; ++j) {
    Embedding along = target_chain.composite(from, j);
    std::vector<int> pins(src->size(), -1);
    for (int x = 0; x < prev.source()->size(); ++x) pins[prev(x)] = along(x);
    auto s = first_embedding(src, target_chain.stages[j], pins);
    if (s) return std::make_pair(j, *s);
  }
  return std::nullopt;
}

} // namespace detail

// Zig-zag recursion seeded by f : u_k0 -> v_l0, discharging each side by the
// smallest admissible stage of the other chain.
inline WeaveResult weave(const ChainSeq& U, const ChainSeq& V, int k0, int l0,
                         const Embedding& f, int depth) {
  if (k0 < 0 || k0 > U.top_index() || l0 < 0 || l0 > V.top_index())
    throw std::invalid_argument("weave: seed stages out of range");
  if (!(*f.source() == *U.stages[k0]) || !(*f.target() == *V.stages[l0]))
    throw std::invalid_argument("weave: seed arrow endpoints mismatch");
  ZigZagWeave W;
  W.u_chain = U;
  W.v_chain = V;
  W.k.push_back(k0);
  W.l.push_back(l0);
  W.F.push_back(f);
  WeaveResult res;
  while (W.depth() < depth) {
    // back: absorb v_l(i) into a later stage of U
    auto g = detail::weave_step(U, W.k.back(), V.stages[W.l.back()], W.F.back());
    if (!g) {
      res.outcome = W.k.back() >= U.top_index() ? WeaveOutcome::TruncationExhausted
                                                : WeaveOutcome::NoDischargeFound;
      res.depth_reached = W.depth();
      res.note = "stuck extending G at depth " + std::to_string(W.depth());
      res.weave = std::move(W);
      return res;
    }
    W.k.push_back(g->first);
    W.G.push_back(g->second);
    // forth: absorb u_k(i+1) into a later stage of V
    auto fnext = detail::weave_step(V, W.l.back(), U.stages[W.k.back()], W.G.back());
    if (!fnext) {
      // roll the half-step back so the weave invariants stay intact
      W.k.pop_back();
      W.G.pop_back();
      res.outcome = W.l.back() >= V.top_index() ? WeaveOutcome::TruncationExhausted
                                                : WeaveOutcome::NoDischargeFound;
      res.depth_reached = W.depth();
      res.note = "stuck extending F at depth " + std::to_string(W.depth());
      res.weave = std::move(W);
      return res;
    }
    W.l.push_back(fnext->first);
    W.F.push_back(fnext->second);
  }
  W.validate();
  res.outcome = WeaveOutcome::Completed;
  res.depth_reached = W.depth();
  res.weave = std::move(W);
  return res;
}

// The partial isomorphism between truncated limits induced by a weave: the
// top arrow F(d) read along provenance.
struct PartialIso {
  std::vector<std::pair<int, int>> pairs; // (element of U-top, element of V-top)
  Embedding via;                          // u_k(d) -> V-top
};

inline PartialIso limit_isomorphism(const ZigZagWeave& W) {
  if (W.F.empty()) throw std::invalid_argument("limit_isomorphism: empty weave");
  W.validate();
  int d = static_cast<int>(W.F.size()) - 1;
  int NU = W.u_chain.top_index(), NV = W.v_chain.top_index();
  PartialIso iso;
  iso.via = W.F[d].then(W.v_chain.composite(W.l[d], NV));
  Embedding ju = W.u_chain.composite(W.k[d], NU);
  for (int x = 0; x < W.u_chain.stages[W.k[d]]->size(); ++x)
    iso.pairs.push_back({ju(x), iso.via(x)});
  // consistency along the whole weave: each F(i) must agree with the top map
  for (int i = 0; i <= d; ++i) {
    Embedding jui = W.u_chain.composite(W.k[i], NU);
    Embedding jvi = W.F[i].then(W.v_chain.composite(W.l[i], NV));
    for (int x = 0; x < W.u_chain.stages[W.k[i]]->size(); ++x) {
      bool found = false;
      for (auto& [a, b] : iso.pairs)
        if (a == jui(x)) {
          if (b != jvi(x))
            throw std::logic_error("limit_isomorphism: weave layers disagree");
          found = true;
        }
      if (!found)
        throw std::logic_error("limit_isomorphism: provenance domain mismatch");
    }
  }
  if (!iso.via.valid()) throw std::logic_error("limit_isomorphism: map is not an embedding");
  return iso;
}

// Ultrahomogeneity via woven automorphism fragments: for embeddings
// chi1, chi2 of the same small member into the truncation, find a weave of
// the chain with itself carrying chi1 to chi2.
inline Verdict check_ultrahomogeneous(const ChainSeq& S, const AgeClass& age,
                                      int size_bound, int depth, int margin = -1) {
  Verdict v;
  v.check = "ultrahomogeneous";
  int N = S.top_index();
  if (margin < 0) margin = (N + 1) / 2;
  int latest = N - margin;
  auto birth = S.provenance();
  for (int as = 0; as <= size_bound; ++as)
    for (const auto& a : age.members_of_size(as)) {
      std::vector<Embedding> chis;
      for_each_embedding(a, S.top(), [&](const Embedding& chi) {
        int prov = 0;
        for (int x = 0; x < a->size(); ++x) prov = std::max(prov, birth[chi(x)]);
        if (prov <= latest) chis.push_back(chi);
        return true;
      });
      for (const auto& chi1 : chis)
        for (const auto& chi2 : chis) {
          std::ostringstream what;
          what << "pair of embeddings of size-" << as << " member";
          if (chi1.map() == chi2.map()) { // identity fragment
            v.add(Status::Witnessed, what.str());
            continue;
          }
          auto [k0, chi1s] = factor_through_stage(S, chi1);
          bool done = false;
          for (int l0 = 0; l0 <= N && !done; ++l0) {
            // seed arrow: stage k0 -> stage l0 carrying chi1 to chi2
            Embedding along = S.composite(l0, N);
            std::vector<int> pre(S.top()->size(), -1);
            for (int x = 0; x < S.stages[l0]->size(); ++x) pre[along(x)] = x;
            std::vector<int> want(S.stages[k0]->size(), -1);
            bool lands = true;
            for (int x = 0; x < chi2.source()->size(); ++x) {
              if (pre[chi2(x)] < 0) { lands = false; break; }
              want[chi1s(x)] = pre[chi2(x)];
            }
            if (!lands) continue;
            auto fseed = first_embedding(S.stages[k0], S.stages[l0], want);
            if (!fseed) continue;
            auto res = weave(S, S, k0, l0, *fseed, depth);
            if (res.outcome == WeaveOutcome::Completed) {
              v.add(Status::Witnessed, what.str());
              done = true;
            }
          }
          if (!done) v.add(Status::Pending, what.str());
        }
    }
  return v;
}

struct UniquenessReport {
  WeaveResult weave_result;
  std::optional<PartialIso> iso;
  bool certified = false;
  std::string note;
};

// Seed a weave between two runs over the same class from their bottom stages
// and certify the induced partial isomorphism of the truncations.
inline UniquenessReport uniqueness_audit(const ChainSeq& U, const ChainSeq& V,
                                         const AgeClass& age, int depth) {
  if (U.age_name != V.age_name)
    throw AgeError("uniqueness_audit: chains over different classes ('" + U.age_name +
                   "' vs '" + V.age_name + "')");
  (void)age;
  UniquenessReport rep;
  std::optional<Embedding> seed;
  int l0 = 0;
  for (; l0 <= V.top_index(); ++l0) {
    seed = first_embedding(U.stages[0], V.stages[l0]);
    if (seed) break;
  }
  if (!seed) {
    rep.note = "no seed arrow from the bottom stage";
    return rep;
  }
  rep.weave_result = weave(U, V, 0, l0, *seed, depth);
  if (rep.weave_result.outcome == WeaveOutcome::Completed) {
    rep.iso = limit_isomorphism(*rep.weave_result.weave);
    rep.certified = true;
    std::ostringstream os;
    os << "depth-" << depth << " weave; partial isomorphism on "
       << rep.iso->pairs.size() << " elements";
    rep.note = os.str();
  } else {
    rep.note = rep.weave_result.note;
  }
  return rep;
}

} // namespace forge

#endif
