#ifndef FORGE_CHAIN_VERIFY_HPP
#define FORGE_CHAIN_VERIFY_HPP

#include <sstream>

#include "forge/chain.hpp"
#include "forge/enumerate.hpp"

namespace forge {

enum class Status { Witnessed, Pending, Violated };

// Truncation-aware check result.  Witnessed instances carry an explicit
// discharge inside the truncation; pending ones could still be discharged by
// a longer run; violated ones carry a finite certificate that no extension
// within the class can ever discharge them (only decidable when the class has
// a size ceiling).
struct Verdict {
  std::string check;
  long witnessed = 0;
  long pending = 0;
  long violated = 0;
  std::vector<std::string> violations;
  std::vector<std::string> pending_notes; // capped
  bool pass() const { return violated == 0; }
  bool all_witnessed() const { return pending == 0 && violated == 0; }

  void add(Status s, const std::string& what) {
    switch (s) {
      case Status::Witnessed: witnessed++; break;
      case Status::Pending:
        pending++;
        if (pending_notes.size() < 50) pending_notes.push_back(what);
        break;
      case Status::Violated:
        violated++;
        if (violations.size() < 50) violations.push_back(what);
        break;
    }
  }
};

namespace detail {

// For classes that are genuinely finite (size ceiling), an unmet obligation
// can be refuted outright: no member admits the required commuting square
// over the current top stage.  Unbounded classes never certify, so the
// obligation stays pending.
inline Status classify_unmet(const AgeClass& age, const ChainSeq& S,
                             const StructPtr& b, const Embedding& f_into_b,
                             const std::vector<int>& top_anchor) {
  auto ceiling = age.size_ceiling();
  if (!ceiling) return Status::Pending;
  const StructPtr& top = S.top();
  if (top->size() > *ceiling) return Status::Violated; // chain left the class
  for (int ds = top->size(); ds <= *ceiling; ++ds) {
    for (const auto& d : age.members_of_size(ds)) {
      bool found = false;
      for_each_embedding(top, d, [&](const Embedding& e) {
        std::vector<int> pins(b->size(), -1);
        for (int x = 0; x < f_into_b.source()->size(); ++x)
          pins[f_into_b(x)] = e(top_anchor[x]);
        if (first_embedding(b, d, pins)) { found = true; return false; }
        return true;
      });
      if (found) return Status::Pending;
    }
  }
  return Status::Violated;
}

} // namespace detail

struct FraisseVerdict {
  Verdict condition1; // every member up to the bound embeds into the truncation
  Verdict condition2; // arrows out of early stages absorbed by later stages
  bool pass() const { return condition1.pass() && condition2.pass(); }
};

inline FraisseVerdict verify_fraisse_conditions(const ChainSeq& S, const AgeClass& age,
                                                int size_bound, int arrow_bound) {
  FraisseVerdict out;
  out.condition1.check = "fraisse-condition-1";
  out.condition2.check = "fraisse-condition-2";
  int N = S.top_index();
  for (int ms = 0; ms <= size_bound; ++ms) {
    const auto& members = age.members_of_size(ms);
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
      std::ostringstream what;
      what << "member size " << ms << " #" << mi;
      out.condition1.add(embeds(members[mi], S.top()) ? Status::Witnessed : Status::Violated,
                         what.str());
    }
  }
  for (int i = 0; i <= std::min(arrow_bound, N); ++i) {
    const StructPtr& ui = S.stages[i];
    if (ui->size() > size_bound) continue;
    Embedding into_top = S.composite(i, N);
    std::vector<int> anchor(ui->size());
    for (int x = 0; x < ui->size(); ++x) anchor[x] = into_top(x);
    for (int cs = ui->size(); cs <= size_bound; ++cs)
      for (const auto& c : age.members_of_size(cs))
        for (const auto& f : enumerate_embeddings(ui, c)) {
          std::vector<int> pins(c->size(), -1);
          for (int x = 0; x < ui->size(); ++x) pins[f(x)] = anchor[x];
          std::ostringstream what;
          what << "stage " << i << " into member size " << cs;
          if (embeds(c, S.top(), pins))
            out.condition2.add(Status::Witnessed, what.str());
          else
            out.condition2.add(detail::classify_unmet(age, S, c, f, anchor), what.str());
        }
  }
  return out;
}

// Extension property: spans f : a -> b, g : a -> (truncation) absorbed later.
inline Verdict verify_extension_property(const ChainSeq& S, const AgeClass& age,
                                         int size_bound) {
  Verdict v;
  v.check = "extension-property";
  for (int as = 0; as <= size_bound; ++as)
    for (const auto& a : age.members_of_size(as))
      for (int bs = as; bs <= size_bound; ++bs)
        for (const auto& b : age.members_of_size(bs))
          for (const auto& f : enumerate_embeddings(a, b))
            for_each_embedding(a, S.top(), [&](const Embedding& g) {
              std::vector<int> pins(b->size(), -1);
              std::vector<int> anchor(a->size());
              for (int x = 0; x < a->size(); ++x) {
                pins[f(x)] = g(x);
                anchor[x] = g(x);
              }
              std::ostringstream what;
              what << "span a(size " << as << ") -> b(size " << bs << ")";
              if (embeds(b, S.top(), pins))
                v.add(Status::Witnessed, what.str());
              else
                v.add(detail::classify_unmet(age, S, b, f, anchor), what.str());
              return true;
            });
  return v;
}

// Universality of the truncated colimit: a two-valued property of the object
// we actually have.
inline Verdict check_universal(const ChainSeq& S, const AgeClass& age, int size_bound) {
  Verdict v;
  v.check = "universal";
  for (int ms = 0; ms <= size_bound; ++ms) {
    const auto& members = age.members_of_size(ms);
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
      std::ostringstream what;
      what << "member size " << ms << " #" << mi;
      v.add(embeds(members[mi], S.top()) ? Status::Witnessed : Status::Violated, what.str());
    }
  }
  return v;
}

// Homogeneity over embeddings that land deep enough inside the truncation
// (margin leaves room to extend); instances without that room are not tested.
inline Verdict check_homogeneous(const ChainSeq& S, const AgeClass& age, int size_bound,
                                 int margin = -1) {
  Verdict v;
  v.check = "homogeneous";
  int N = S.top_index();
  if (margin < 0) margin = (N + 1) / 2;
  int latest_tested_stage = N - margin;
  auto birth = S.provenance();
  for (int as = 0; as <= size_bound; ++as)
    for (const auto& a : age.members_of_size(as))
      for (int bs = as; bs <= size_bound; ++bs)
        for (const auto& b : age.members_of_size(bs))
          for (const auto& j : enumerate_embeddings(a, b))
            for_each_embedding(a, S.top(), [&](const Embedding& chi) {
              int prov = 0;
              for (int x = 0; x < a->size(); ++x) prov = std::max(prov, birth[chi(x)]);
              if (prov > latest_tested_stage) return true; // not tested at this margin
              std::vector<int> pins(b->size(), -1);
              std::vector<int> anchor(a->size());
              for (int x = 0; x < a->size(); ++x) {
                pins[j(x)] = chi(x);
                anchor[x] = chi(x);
              }
              std::ostringstream what;
              what << "a(size " << as << ") -> b(size " << bs << "), image born by stage "
                   << prov;
              if (embeds(b, S.top(), pins))
                v.add(Status::Witnessed, what.str());
              else
                v.add(detail::classify_unmet(age, S, b, j, anchor), what.str());
              return true;
            });
  return v;
}

} // namespace forge

#endif
