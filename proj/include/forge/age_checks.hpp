#ifndef FORGE_AGE_CHECKS_HPP
#define FORGE_AGE_CHECKS_HPP

#include <optional>
#include <sstream>
#include <string>

#include "forge/ages_builtin.hpp"

namespace forge {

enum class Outcome { Holds, Fails, Inconclusive };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds-within-bound";
    case Outcome::Fails: return "fails-with-counterexample";
    default: return "inconclusive";
  }
}

struct SpanCounterexample {
  StructPtr a, b, c;
  Embedding f; // a -> b
  Embedding g; // a -> c
};

struct APVerdict {
  Outcome outcome = Outcome::Inconclusive;
  long spans_checked = 0;
  long witnesses_found = 0;
  int span_bound = 0;
  int target_bound = 0;
  std::optional<SpanCounterexample> counterexample;
  std::string note;
};

// Searches, by ascending witness size, for d and f': b -> d, g': c -> d with
// f' o f = g' o g.  g' is pinned on the image of g once f' is fixed.
inline bool find_amalgam(const AgeClass& age, const SpanCounterexample& span,
                         int target_bound, SpanCounterexample* witness_out = nullptr) {
  for (int ds = std::max(span.b->size(), span.c->size()); ds <= target_bound; ++ds) {
    for (const auto& d : age.members_of_size(ds)) {
      bool found = false;
      for_each_embedding(span.b, d, [&](const Embedding& fp) {
        std::vector<int> pins(span.c->size(), -1);
        for (int x = 0; x < span.a->size(); ++x)
          pins[span.g(x)] = fp(span.f(x));
        auto gp = first_embedding(span.c, d, pins);
        if (gp) {
          if (witness_out) {
            witness_out->a = d;
            witness_out->f = fp;
            witness_out->g = *gp;
          }
          found = true;
          return false;
        }
        return true;
      });
      if (found) return true;
    }
  }
  return false;
}

// Amalgamation property over spans of canonical representatives.
inline APVerdict check_amalgamation(const AgeClass& age, int span_size_bound,
                                    int amalgam_size_bound) {
  if (span_size_bound < 1 || amalgam_size_bound < span_size_bound)
    throw AgeError("check_amalgamation: bad bounds");
  APVerdict v;
  v.span_bound = span_size_bound;
  v.target_bound = amalgam_size_bound;
  for (int bs = 0; bs <= span_size_bound; ++bs)
    for (const auto& b : age.members_of_size(bs))
      for (int cs = 0; cs <= span_size_bound; ++cs)
        for (const auto& c : age.members_of_size(cs))
          for (int as = 0; as <= std::min(bs, cs); ++as)
            for (const auto& a : age.members_of_size(as))
              for (const auto& f : enumerate_embeddings(a, b))
                for (const auto& g : enumerate_embeddings(a, c)) {
                  v.spans_checked++;
                  SpanCounterexample span{a, b, c, f, g};
                  if (find_amalgam(age, span, amalgam_size_bound)) {
                    v.witnesses_found++;
                  } else {
                    v.outcome = Outcome::Fails;
                    v.counterexample = span;
                    return v;
                  }
                }
  if (v.spans_checked == 0) {
    v.outcome = Outcome::Inconclusive;
    v.note = "no spans within bound";
  } else {
    v.outcome = Outcome::Holds;
  }
  return v;
}

struct PairCounterexample {
  StructPtr a, b;
};

struct JEPVerdict {
  Outcome outcome = Outcome::Inconclusive;
  long pairs_checked = 0;
  int pair_bound = 0;
  int target_bound = 0;
  std::optional<PairCounterexample> counterexample;
  std::string note;
};

inline JEPVerdict check_jep(const AgeClass& age, int pair_size_bound, int target_size_bound) {
  if (pair_size_bound < 1 || target_size_bound < pair_size_bound)
    throw AgeError("check_jep: bad bounds");
  JEPVerdict v;
  v.pair_bound = pair_size_bound;
  v.target_bound = target_size_bound;
  for (int as = 0; as <= pair_size_bound; ++as)
    for (const auto& a : age.members_of_size(as))
      for (int bs = as; bs <= pair_size_bound; ++bs)
        for (const auto& b : age.members_of_size(bs)) {
          v.pairs_checked++;
          bool found = false;
          for (int cs = std::max(as, bs); cs <= target_size_bound && !found; ++cs)
            for (const auto& c : age.members_of_size(cs))
              if (embeds(a, c) && embeds(b, c)) { found = true; break; }
          if (!found) {
            v.outcome = Outcome::Fails;
            v.counterexample = PairCounterexample{a, b};
            return v;
          }
        }
  if (v.pairs_checked == 0) {
    v.outcome = Outcome::Inconclusive;
    v.note = "no pairs within bound";
  } else {
    v.outcome = Outcome::Holds;
  }
  return v;
}

// A member embedding into every member up to the bound, if one exists.
inline std::optional<StructPtr> has_weakly_initial(const AgeClass& age, int size_bound) {
  for (int ws = 0; ws <= size_bound; ++ws)
    for (const auto& w : age.members_of_size(ws)) {
      bool initial = true;
      for (int ms = 0; ms <= size_bound && initial; ++ms)
        for (const auto& m : age.members_of_size(ms))
          if (!embeds(w, m)) { initial = false; break; }
      if (initial) return w;
    }
  return std::nullopt;
}

struct DominatingVerdict {
  Outcome outcome = Outcome::Inconclusive;
  std::string cofinality_violation; // first one found, empty when (i) holds
  std::string absorption_violation; // first one found, empty when (ii) holds
  long cofinality_checked = 0;
  long absorption_checked = 0;
  std::string violation() const {
    if (!cofinality_violation.empty() && !absorption_violation.empty())
      return cofinality_violation + "; " + absorption_violation;
    return cofinality_violation + absorption_violation;
  }
};

// F dominating: (i) every member up to the bound admits an arrow into some
// domain of F; (ii) every arrow out of a domain of F post-composes into F.
// Both conditions are checked over canonical representatives (the conditions
// are isomorphism-invariant) and the first violation of each is reported.
inline DominatingVerdict check_dominating(const AgeClass& age,
                                          const std::vector<Embedding>& F,
                                          int size_bound) {
  DominatingVerdict v;
  std::vector<StructPtr> domains;
  for (const auto& h : F) domains.push_back(h.source());
  // (i) cofinality of Dom(F)
  for (int ms = 0; ms <= size_bound && v.cofinality_violation.empty(); ++ms)
    for (const auto& m : age.members_of_size(ms)) {
      v.cofinality_checked++;
      bool ok = false;
      for (const auto& d : domains)
        if (embeds(m, d)) { ok = true; break; }
      if (!ok) {
        std::ostringstream os;
        os << "cofinality: size-" << m->size()
           << " member admits no arrow into any domain of F";
        v.cofinality_violation = os.str();
        break;
      }
    }
  // (ii) absorption
  for (const auto& h : F) {
    if (!v.absorption_violation.empty()) break;
    const StructPtr& a = h.source();
    for (int xs = a->size(); xs <= size_bound && v.absorption_violation.empty(); ++xs)
      for (const auto& x : age.members_of_size(xs))
        for (const auto& f : enumerate_embeddings(a, x)) {
          v.absorption_checked++;
          bool ok = false;
          for (const auto& h2 : F) {
            if (!(*h2.source() == *a)) continue;
            // g : x -> cod(h2) with g o f = h2, i.e. g pinned on image of f
            std::vector<int> pins(x->size(), -1);
            for (int z = 0; z < a->size(); ++z) pins[f(z)] = h2(z);
            if (first_embedding(x, h2.target(), pins)) { ok = true; break; }
          }
          if (!ok) {
            std::ostringstream os;
            os << "absorption: arrow out of a size-" << a->size()
               << " domain into a size-" << x->size()
               << " member has no post-composition landing in F";
            v.absorption_violation = os.str();
            break;
          }
        }
  }
  if (v.cofinality_checked == 0)
    v.outcome = Outcome::Inconclusive;
  else if (!v.cofinality_violation.empty() || !v.absorption_violation.empty())
    v.outcome = Outcome::Fails;
  else
    v.outcome = Outcome::Holds;
  return v;
}

} // namespace forge

#endif
