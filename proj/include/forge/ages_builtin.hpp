#ifndef FORGE_AGES_BUILTIN_HPP
#define FORGE_AGES_BUILTIN_HPP

#include <memory>

#include "forge/age.hpp"

namespace forge {

// ---------- structure factories ----------

inline SigPtr graph_signature() {
  static SigPtr s = make_signature({{"E", 2}});
  return s;
}

inline FinStructure make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Tuple> tuples;
  for (auto [a, b] : edges) {
    tuples.push_back({a, b});
    tuples.push_back({b, a});
  }
  return FinStructure(graph_signature(), n, {tuples}, {}, {});
}

inline SigPtr linorder_signature() {
  static SigPtr s = make_signature({{"lt", 2}});
  return s;
}

// Chain whose element i is the i-th smallest.
inline FinStructure make_chain(int n) {
  std::vector<Tuple> lt;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) lt.push_back({i, j});
  return FinStructure(linorder_signature(), n, {lt}, {}, {});
}

inline SigPtr pureset_signature() {
  static SigPtr s = make_signature({});
  return s;
}

inline FinStructure make_set(int n) {
  return FinStructure(pureset_signature(), n, {}, {}, {});
}

inline SigPtr boolalg_signature() {
  static SigPtr s = make_signature({}, {{"meet", 2}, {"join", 2}, {"compl", 1}},
                                   {"zero", "one"});
  return s;
}

// Powerset algebra on k atoms; element e is the subset with bitmask e.
inline FinStructure make_powerset_algebra(int k) {
  int n = 1 << k;
  std::vector<int> meet(static_cast<std::size_t>(n) * n), join(static_cast<std::size_t>(n) * n);
  std::vector<int> compl_(n);
  for (int a = 0; a < n; ++a) {
    compl_[a] = (n - 1) ^ a;
    for (int b = 0; b < n; ++b) {
      meet[static_cast<std::size_t>(a) * n + b] = a & b;
      join[static_cast<std::size_t>(a) * n + b] = a | b;
    }
  }
  return FinStructure(boolalg_signature(), n, {},
                      {std::move(meet), std::move(join), std::move(compl_)},
                      {0, n - 1});
}

// ---------- helpers on ordered / boolean structures ----------

inline bool lt_holds(const FinStructure& s, int a, int b) {
  return s.rel_holds(0, {a, b});
}

// Minimal nonzero elements of a boolean-algebra structure, ascending.
inline std::vector<int> boolalg_atoms(const FinStructure& s) {
  int zero = s.constant(0);
  std::vector<int> atoms;
  for (int e = 0; e < s.size(); ++e) {
    if (e == zero) continue;
    bool minimal = true;
    for (int z = 0; z < s.size() && minimal; ++z) {
      if (z == zero || z == e) continue;
      // z < e in the lattice order iff meet(z,e) = z
      if (s.fun_apply(0, {z, e}) == z) minimal = false;
    }
    if (minimal) atoms.push_back(e);
  }
  return atoms;
}

// Atom decomposition of every element, as bitmasks over boolalg_atoms(s).
inline std::vector<unsigned> boolalg_atomsets(const FinStructure& s,
                                              const std::vector<int>& atoms) {
  std::vector<unsigned> sets(s.size(), 0);
  for (int e = 0; e < s.size(); ++e)
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (s.fun_apply(0, {atoms[a], e}) == atoms[a]) sets[e] |= 1u << a;
  return sets;
}

inline bool is_boolean_algebra(const FinStructure& s) {
  if (*s.sig() != *boolalg_signature()) return false;
  int n = s.size();
  if (n < 2 || (n & (n - 1)) != 0) return false;
  int k = 0;
  while ((1 << k) < n) ++k;
  auto atoms = boolalg_atoms(s);
  if (static_cast<int>(atoms.size()) != k) return false;
  auto sets = boolalg_atomsets(s, atoms);
  std::vector<char> seen(n, 0);
  for (int e = 0; e < n; ++e) {
    if (sets[e] >= static_cast<unsigned>(n) || seen[sets[e]]) return false;
    seen[sets[e]] = 1;
  }
  if (sets[s.constant(0)] != 0) return false;
  if (sets[s.constant(1)] != static_cast<unsigned>(n - 1)) return false;
  for (int a = 0; a < n; ++a) {
    if (sets[s.fun_apply(2, {a})] != (~sets[a] & (static_cast<unsigned>(n) - 1))) return false;
    for (int b = 0; b < n; ++b) {
      if (sets[s.fun_apply(0, {a, b})] != (sets[a] & sets[b])) return false;
      if (sets[s.fun_apply(1, {a, b})] != (sets[a] | sets[b])) return false;
    }
  }
  return true;
}

// Split one atom of a boolean algebra.  Old elements keep their indices (the
// split atom absorbs the new half), new elements are appended in ascending
// atom-set order, so the inclusion is a prefix embedding.
inline FinStructure boolalg_split_atom(const FinStructure& s, int atom_elem) {
  auto atoms = boolalg_atoms(s);
  int k = static_cast<int>(atoms.size());
  int a_idx = -1;
  for (int i = 0; i < k; ++i)
    if (atoms[i] == atom_elem) a_idx = i;
  if (a_idx < 0) throw std::invalid_argument("boolalg_split_atom: not an atom");
  auto old_sets = boolalg_atomsets(s, atoms);
  int n = s.size();
  int nn = 2 * n;
  // new atom has index k; old sets containing a_idx also gain k
  std::vector<unsigned> sets(nn, 0);
  std::map<unsigned, int> index_of;
  for (int e = 0; e < n; ++e) {
    unsigned ns = old_sets[e];
    if (ns & (1u << a_idx)) ns |= 1u << k;
    sets[e] = ns;
    index_of[ns] = e;
  }
  int next = n;
  for (unsigned m = 0; m < (1u << (k + 1)); ++m) {
    bool has_a = (m >> a_idx) & 1u, has_k = (m >> k) & 1u;
    if (has_a == has_k) continue; // those are the old elements
    sets[next] = m;
    index_of[m] = next;
    ++next;
  }
  std::vector<int> meet(static_cast<std::size_t>(nn) * nn), join(static_cast<std::size_t>(nn) * nn);
  std::vector<int> compl_(nn);
  unsigned full = (1u << (k + 1)) - 1;
  for (int a = 0; a < nn; ++a) {
    compl_[a] = index_of.at(~sets[a] & full);
    for (int b = 0; b < nn; ++b) {
      meet[static_cast<std::size_t>(a) * nn + b] = index_of.at(sets[a] & sets[b]);
      join[static_cast<std::size_t>(a) * nn + b] = index_of.at(sets[a] | sets[b]);
    }
  }
  return FinStructure(boolalg_signature(), nn, {},
                      {std::move(meet), std::move(join), std::move(compl_)},
                      {s.constant(0), s.constant(1)});
}

// ---------- the four built-in classes ----------

class SimpleGraphsAge : public AgeClass {
public:
  SimpleGraphsAge() : AgeClass("graphs", graph_signature(), 8) {}

  bool contains(const FinStructure& s) const override {
    if (*s.sig() != *sig_) return false;
    for (const Tuple& t : s.rel(0)) {
      if (t[0] == t[1]) return false;
      if (!s.rel_holds(0, {t[1], t[0]})) return false;
    }
    return true;
  }

  bool supports_build() const override { return true; }

  std::vector<MinimalExtension> minimal_extensions(const FinStructure& s) const override {
    std::vector<MinimalExtension> out;
    int n = s.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Tuple> tuples = s.rel(0);
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) {
          tuples.push_back({v, n});
          tuples.push_back({n, v});
        }
      out.push_back({FinStructure(sig_, n + 1, {tuples}, {}, {}),
                     "vertex adjacent to mask " + std::to_string(mask)});
    }
    return out;
  }

  FinStructure joint_extend(const FinStructure& top, const FinStructure& m) const override {
    int n = top.size();
    std::vector<Tuple> tuples = top.rel(0);
    for (const Tuple& t : m.rel(0)) tuples.push_back({t[0] + n, t[1] + n});
    return FinStructure(sig_, n + m.size(), {tuples}, {}, {});
  }

  FinStructure extend_with(const FinStructure& top, int base_size,
                           const MinimalExtension& ext) const override {
    int n = top.size();
    std::vector<Tuple> tuples = top.rel(0);
    for (const Tuple& t : ext.extended.rel(0)) {
      if (t[0] == base_size || t[1] == base_size) {
        int other = t[0] == base_size ? t[1] : t[0];
        if (other == base_size) continue;
        tuples.push_back({other, n});
        tuples.push_back({n, other});
      }
    }
    // dedup happens in the constructor's normalization
    return FinStructure(sig_, n + 1, {tuples}, {}, {});
  }

  int realize_cap() const override { return 4; }
  int ext_stage_cap() const override { return 4; }

protected:
  std::vector<StructPtr> generate_size(int n) const override {
    if (n == 0) return {share(make_graph(0, {}))};
    std::vector<StructPtr> candidates;
    for (const auto& g : members_of_size(n - 1)) {
      for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<Tuple> tuples = g->rel(0);
        for (int v = 0; v < n - 1; ++v)
          if (mask & (1u << v)) {
            tuples.push_back({v, n - 1});
            tuples.push_back({n - 1, v});
          }
        candidates.push_back(share(FinStructure(sig_, n, {tuples}, {}, {})));
      }
    }
    return dedup_up_to_iso(candidates);
  }
};

class LinearOrdersAge : public AgeClass {
public:
  LinearOrdersAge() : AgeClass("linords", linorder_signature(), 32) {}

  bool contains(const FinStructure& s) const override {
    if (*s.sig() != *sig_) return false;
    int n = s.size();
    for (int a = 0; a < n; ++a) {
      if (s.rel_holds(0, {a, a})) return false;
      for (int b = 0; b < n; ++b) {
        if (a != b && lt_holds(s, a, b) == lt_holds(s, b, a)) return false;
        for (int c = 0; c < n; ++c)
          if (lt_holds(s, a, b) && lt_holds(s, b, c) && !lt_holds(s, a, c)) return false;
      }
    }
    return true;
  }

  bool supports_build() const override { return true; }

  std::vector<MinimalExtension> minimal_extensions(const FinStructure& s) const override {
    int n = s.size();
    // ranks: sorted element list of s
    std::vector<int> by_rank(n);
    std::vector<int> rank(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (lt_holds(s, b, a)) rank[a]++;
    for (int a = 0; a < n; ++a) by_rank[rank[a]] = a;
    std::vector<MinimalExtension> out;
    for (int gap = 0; gap <= n; ++gap) {
      std::vector<Tuple> lt = s.rel(0);
      for (int a = 0; a < n; ++a) {
        if (rank[a] < gap) lt.push_back({a, n});
        else lt.push_back({n, a});
      }
      out.push_back({FinStructure(sig_, n + 1, {lt}, {}, {}),
                     "point in gap " + std::to_string(gap)});
    }
    return out;
  }

  FinStructure joint_extend(const FinStructure& top, const FinStructure& m) const override {
    int need = m.size() - top.size();
    FinStructure cur = top;
    for (int i = 0; i < need; ++i) cur = append_above(cur);
    return cur;
  }

  FinStructure extend_with(const FinStructure& top, int base_size,
                           const MinimalExtension& ext) const override {
    int n = top.size();
    // order of the new point against the base prefix, read off the extension
    std::vector<char> below(base_size, 0); // base elements below the new point
    for (int a = 0; a < base_size; ++a)
      if (lt_holds(ext.extended, a, base_size)) below[a] = 1;
    std::vector<Tuple> lt = top.rel(0);
    for (int q = 0; q < n; ++q) {
      bool q_below;
      if (q < base_size) {
        q_below = below[q];
      } else {
        // q is below the new point iff q is below some base element that is
        // at or above the gap... equivalently: q < new iff q < r for r the
        // least base element above the gap; if no such r, q < new iff
        // q <= some base element below the gap or the gap region is empty.
        q_below = position_below(top, base_size, below, q);
      }
      if (q_below) lt.push_back({q, n});
      else lt.push_back({n, q});
    }
    return FinStructure(sig_, n + 1, {lt}, {}, {});
  }

  int realize_cap() const override { return 32; }
  int ext_stage_cap() const override { return 10; }

protected:
  std::vector<StructPtr> generate_size(int n) const override {
    return {share(make_chain(n))};
  }

private:
  FinStructure append_above(const FinStructure& s) const {
    int n = s.size();
    std::vector<Tuple> lt = s.rel(0);
    for (int a = 0; a < n; ++a) lt.push_back({a, n});
    return FinStructure(sig_, n + 1, {lt}, {}, {});
  }

  // Order of old element q against the new point.  The discharge only runs
  // when no old element already realizes the gap, so every q is forced by
  // transitivity: q goes below iff it is below the least base element above
  // the gap; a top gap puts the new point above everything.
  static bool position_below(const FinStructure& top, int base_size,
                             const std::vector<char>& below, int q) {
    int least_above = -1;
    for (int r = 0; r < base_size; ++r) {
      if (below[r]) continue;
      if (least_above == -1 || lt_holds(top, r, least_above)) least_above = r;
    }
    if (least_above == -1) return true;
    return lt_holds(top, q, least_above);
  }
};

class PureSetsAge : public AgeClass {
public:
  PureSetsAge() : AgeClass("puresets", pureset_signature(), 32) {}

  bool contains(const FinStructure& s) const override { return *s.sig() == *sig_; }

  bool supports_build() const override { return true; }

  std::vector<MinimalExtension> minimal_extensions(const FinStructure& s) const override {
    return {{make_set(s.size() + 1), "fresh point"}};
  }

  FinStructure joint_extend(const FinStructure& top, const FinStructure& m) const override {
    return make_set(std::max(top.size(), m.size()));
  }

  FinStructure extend_with(const FinStructure& top, int, const MinimalExtension&) const override {
    return make_set(top.size() + 1);
  }

  int realize_cap() const override { return 32; }
  int ext_stage_cap() const override { return 10; }

protected:
  std::vector<StructPtr> generate_size(int n) const override {
    return {share(make_set(n))};
  }
};

class BooleanAlgebrasAge : public AgeClass {
public:
  BooleanAlgebrasAge() : AgeClass("boolalgs", boolalg_signature(), 16) {}

  bool contains(const FinStructure& s) const override { return is_boolean_algebra(s); }

  bool supports_build() const override { return true; }

  std::vector<MinimalExtension> minimal_extensions(const FinStructure& s) const override {
    std::vector<MinimalExtension> out;
    for (int a : boolalg_atoms(s))
      out.push_back({boolalg_split_atom(s, a), "split atom " + std::to_string(a)});
    return out;
  }

  FinStructure joint_extend(const FinStructure& top, const FinStructure& m) const override {
    FinStructure cur = top;
    while (cur.size() < m.size()) {
      auto atoms = boolalg_atoms(cur);
      cur = boolalg_split_atom(cur, atoms.back());
    }
    return cur;
  }

  FinStructure extend_with(const FinStructure& top, int,
                           const MinimalExtension& ext) const override {
    // recover which base atom the extension split: it is recorded in the label
    auto pos = ext.label.rfind(' ');
    int atom_elem = std::stoi(ext.label.substr(pos + 1));
    return boolalg_split_atom(top, atom_elem);
  }

  int realize_cap() const override { return 16; }
  int ext_stage_cap() const override { return 64; }

protected:
  std::vector<StructPtr> generate_size(int n) const override {
    for (int k = 1; k <= 4; ++k)
      if (n == (1 << k)) return {share(make_powerset_algebra(k))};
    return {};
  }
};

inline std::shared_ptr<AgeClass> make_builtin_age(const std::string& name) {
  if (name == "graphs") return std::make_shared<SimpleGraphsAge>();
  if (name == "linords") return std::make_shared<LinearOrdersAge>();
  if (name == "puresets") return std::make_shared<PureSetsAge>();
  if (name == "boolalgs") return std::make_shared<BooleanAlgebrasAge>();
  throw AgeError("unknown age '" + name + "' (available: graphs linords puresets boolalgs)");
}

} // namespace forge

#endif
