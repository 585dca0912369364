#ifndef FORGE_GALOIS_HPP
#define FORGE_GALOIS_HPP

#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "forge/fincat.hpp"

namespace forge {

// The stabilizer data of an ambient object u over a small class C: the orbit
// category of anchored arrows c -> u together with the pointwise stabilizer
// of each arrow inside Aut(u).
struct StabilizerAssignment {
  StructPtr u;
  std::vector<Embedding> aut;        // Aut(u), identity first
  std::vector<StructPtr> c_objects;  // the chosen representatives of C
  std::vector<Embedding> anchors;    // one arrow c -> u per object of C

  struct TildeObject {
    int c_index;           // which object of C is the domain
    Embedding arrow;       // the arrow c -> u
    std::vector<int> stab; // indices into aut: all alpha with alpha o arrow = arrow
  };
  std::vector<TildeObject> objects;

  // arrows[i][j] = the unique h : dom(i) -> dom(j) with arrow_j o h = arrow_i,
  // as an element map, when it exists
  std::vector<std::vector<std::optional<std::vector<int>>>> arrows;

  int aut_index(const std::vector<int>& m) const {
    for (std::size_t i = 0; i < aut.size(); ++i)
      if (aut[i].map() == m) return static_cast<int>(i);
    return -1;
  }
};

inline StabilizerAssignment build_stabilizers(const std::vector<StructPtr>& c_objects,
                                              const StructPtr& u,
                                              const std::vector<Embedding>& anchors) {
  if (c_objects.size() != anchors.size())
    throw std::invalid_argument("build_stabilizers: one anchor per object required");
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (!(*anchors[i].source() == *c_objects[i]) || !(*anchors[i].target() == *u))
      throw std::invalid_argument("build_stabilizers: anchor endpoints mismatch");
    if (!anchors[i].valid())
      throw std::invalid_argument("build_stabilizers: anchor is not an embedding");
  }
  StabilizerAssignment S;
  S.u = u;
  S.aut = automorphisms(u);
  S.c_objects = c_objects;
  S.anchors = anchors;
  // objects of the orbit category: all alpha o f_c, deduplicated
  for (std::size_t ci = 0; ci < c_objects.size(); ++ci) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> maps;
    for (const auto& alpha : S.aut) {
      std::vector<int> m(anchors[ci].source()->size());
      for (int x = 0; x < anchors[ci].source()->size(); ++x) m[x] = alpha(anchors[ci](x));
      if (seen.insert(m).second) maps.push_back(m);
    }
    std::sort(maps.begin(), maps.end());
    for (auto& m : maps) {
      StabilizerAssignment::TildeObject obj;
      obj.c_index = static_cast<int>(ci);
      obj.arrow = Embedding(c_objects[ci], u, m);
      for (std::size_t ai = 0; ai < S.aut.size(); ++ai) {
        bool fixes = true;
        for (int x = 0; x < c_objects[ci]->size(); ++x)
          if (S.aut[ai](m[x]) != m[x]) { fixes = false; break; }
        if (fixes) obj.stab.push_back(static_cast<int>(ai));
      }
      S.objects.push_back(std::move(obj));
    }
  }
  // arrows: h with g o h = f is forced pointwise by injectivity of g
  int no = static_cast<int>(S.objects.size());
  S.arrows.assign(no, std::vector<std::optional<std::vector<int>>>(no));
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j) {
      const auto& f = S.objects[i].arrow;
      const auto& g = S.objects[j].arrow;
      std::vector<int> pre(u->size(), -1);
      for (int x = 0; x < g.source()->size(); ++x) pre[g(x)] = x;
      std::vector<int> h(f.source()->size());
      bool ok = true;
      for (int x = 0; x < f.source()->size(); ++x) {
        if (pre[f(x)] < 0) { ok = false; break; }
        h[x] = pre[f(x)];
      }
      if (!ok) continue;
      Embedding he(f.source(), g.source(), h);
      if (he.valid()) S.arrows[i][j] = h;
    }
  return S;
}

struct GaloisVerdict {
  bool faithful = true;
  bool full = true;
  bool reflects_identities = true;
  std::string witness;
  bool holds() const { return faithful && full && reflects_identities; }
};

inline bool subgroup_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// The Galois property of u: the stabilizer functor is full, faithful and
// reflects identities.  Faithfulness is automatic here because all arrows are
// monic, but it is still scanned.
inline GaloisVerdict galois_property_check(const StabilizerAssignment& S) {
  GaloisVerdict v;
  int no = static_cast<int>(S.objects.size());
  // faithfulness: at most one arrow between any two objects (monicity gives
  // uniqueness; the scan guards the table construction)
  // fullness: every stabilizer inclusion chi(f) <= chi(g) must be induced by
  // an arrow g -> f in the orbit category
  for (int i = 0; i < no && v.full; ++i)
    for (int j = 0; j < no; ++j) {
      if (subgroup_subset(S.objects[i].stab, S.objects[j].stab)) {
        if (!S.arrows[j][i]) {
          v.full = false;
          std::ostringstream os;
          os << "fullness: stab(object " << i << ") <= stab(object " << j
             << ") but no arrow " << j << " -> " << i;
          v.witness = os.str();
          break;
        }
      }
    }
  for (int i = 0; i < no && v.reflects_identities; ++i)
    for (int j = 0; j < no; ++j) {
      if (i != j && S.arrows[i][j] && S.objects[i].stab == S.objects[j].stab) {
        v.reflects_identities = false;
        std::ostringstream os;
        os << "identity reflection: distinct objects " << i << ", " << j
           << " joined by an arrow with equal stabilizers";
        v.witness = os.str();
        break;
      }
    }
  return v;
}

// The category of coset spaces Aut(u)/chi(f) with morphisms the cosets
// chi(g)·alpha satisfying chi(f) <= alpha^-1 chi(g) alpha.
struct CosetCategory {
  FinCategory cat;
  // per morphism: (source object, target object, coset as sorted aut indices,
  // a representative alpha)
  struct CosetMor {
    int from = 0, to = 0;
    std::vector<int> coset;
    int rep = 0;
  };
  std::vector<CosetMor> data;
  std::vector<long> coset_space_sizes; // |Aut(u)/chi(f)| per object
};

inline CosetCategory build_coset_category(const StabilizerAssignment& S) {
  auto gp = galois_property_check(S);
  if (!gp.holds())
    throw std::invalid_argument("build_coset_category: Galois property fails (" + gp.witness +
                                ")");
  CosetCategory CC;
  int no = static_cast<int>(S.objects.size());
  int na = static_cast<int>(S.aut.size());
  // compose permutations as aut indices
  auto compose_aut = [&](int a, int b) { // returns index of aut[b] o aut[a]
    std::vector<int> m(S.u->size());
    for (int x = 0; x < S.u->size(); ++x) m[x] = S.aut[b](S.aut[a](x));
    return S.aut_index(m);
  };
  auto invert_aut = [&](int a) {
    std::vector<int> m(S.u->size(), -1);
    for (int x = 0; x < S.u->size(); ++x) m[S.aut[a](x)] = x;
    return S.aut_index(m);
  };
  for (int i = 0; i < no; ++i) {
    CC.cat.objects.push_back("Aut/stab" + std::to_string(i));
    CC.coset_space_sizes.push_back(na / static_cast<long>(S.objects[i].stab.size()));
  }
  // enumerate morphisms i -> j: cosets stab(j)·alpha with
  // stab(i) <= alpha^-1 stab(j) alpha
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      for (int a = 0; a < na; ++a) {
        std::vector<int> coset;
        for (int s : S.objects[j].stab) coset.push_back(compose_aut(a, s));
        std::sort(coset.begin(), coset.end());
        auto key = std::make_pair(std::make_pair(i, j), coset);
        if (index.count(key)) continue;
        bool ok = true;
        int ainv = invert_aut(a);
        for (int s : S.objects[i].stab) {
          // need alpha o s o alpha^-1 in stab(j)
          int conj = compose_aut(compose_aut(ainv, s), a);
          if (!std::binary_search(S.objects[j].stab.begin(), S.objects[j].stab.end(), conj)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        index[key] = static_cast<int>(CC.data.size());
        CC.data.push_back({i, j, coset, a});
        CC.cat.morphisms.push_back(
            {"coset" + std::to_string(CC.data.size() - 1), i, j});
      }
  // identities: the coset stab(i)·e = stab(i) itself
  CC.cat.identity.assign(no, -1);
  for (std::size_t m = 0; m < CC.data.size(); ++m) {
    const auto& d = CC.data[m];
    if (d.from == d.to && d.coset == S.objects[d.from].stab)
      CC.cat.identity[d.from] = static_cast<int>(m);
  }
  for (int i = 0; i < no; ++i)
    if (CC.cat.identity[i] < 0)
      throw std::logic_error("build_coset_category: identity coset missing");
  // composition: (stab(j)·a : i -> j) then (stab(k)·b : j -> k) = stab(k)·(b o a)
  int nm = static_cast<int>(CC.data.size());
  CC.cat.compose_table.assign(nm, std::vector<int>(nm, -1));
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (CC.data[f].to != CC.data[g].from) continue;
      int ba = compose_aut(CC.data[f].rep, CC.data[g].rep);
      std::vector<int> coset;
      for (int s : S.objects[CC.data[g].to].stab) coset.push_back(compose_aut(ba, s));
      std::sort(coset.begin(), coset.end());
      auto key = std::make_pair(std::make_pair(CC.data[f].from, CC.data[g].to), coset);
      auto it = index.find(key);
      if (it == index.end())
        throw std::logic_error("build_coset_category: composite coset not a morphism");
      CC.cat.compose_table[f][g] = it->second;
    }
  CC.cat.provenance = "coset category";
  CC.cat.validate();
  return CC;
}

struct EquivalenceVerdict {
  bool precondition_galois = false;
  bool precondition_ultrahomogeneous = false;
  bool well_defined = false;
  bool functorial = false;
  bool faithful_part = false;
  bool full_part = false;
  bool essentially_surjective = false;
  std::string note;
  bool equivalence() const {
    return precondition_galois && precondition_ultrahomogeneous && well_defined &&
           functorial && faithful_part && full_part && essentially_surjective;
  }
};

// Exhaustive ultrahomogeneity of u over the listed objects.
inline bool ultrahomogeneous_over(const std::vector<StructPtr>& c_objects, const StructPtr& u,
                                  const std::vector<Embedding>& aut) {
  for (const auto& a : c_objects)
    for (const auto& b : c_objects)
      for (const auto& j : enumerate_embeddings(a, b))
        for (const auto& chi1 : enumerate_embeddings(a, u))
          for (const auto& chi2 : enumerate_embeddings(b, u)) {
            bool found = false;
            for (const auto& alpha : aut) {
              bool match = true;
              for (int x = 0; x < a->size(); ++x)
                if (alpha(chi1(x)) != chi2(j(x))) { match = false; break; }
              if (match) { found = true; break; }
            }
            if (!found) return false;
          }
  return true;
}

// The comparison functor from the coset category to the opposite of the age
// truncation: on objects Aut/chi(f) |-> dom(f), on a coset chi(g)·alpha the
// unique z with f o z = alpha^-1 o g.
inline EquivalenceVerdict equivalence_audit(const StabilizerAssignment& S,
                                            const CosetCategory& CC,
                                            const FinCategory& c_as_fincat) {
  EquivalenceVerdict v;
  v.precondition_galois = galois_property_check(S).holds();
  v.precondition_ultrahomogeneous = ultrahomogeneous_over(S.c_objects, S.u, S.aut);
  if (!v.precondition_galois || !v.precondition_ultrahomogeneous) {
    v.note = !v.precondition_galois ? "Galois property fails" : "ambient object is not "
                                                                "ultrahomogeneous over C";
    return v;
  }
  int nm = static_cast<int>(CC.data.size());
  // object part: coset object i |-> c_index of S.objects[i]
  // arrow part
  std::vector<std::optional<std::vector<int>>> z_of(nm);
  auto invert_aut = [&](int a) {
    std::vector<int> m(S.u->size(), -1);
    for (int x = 0; x < S.u->size(); ++x) m[S.aut[a](x)] = x;
    return m;
  };
  v.well_defined = true;
  for (int m = 0; m < nm; ++m) {
    const auto& d = CC.data[m];
    const auto& f = S.objects[d.from].arrow;
    const auto& g = S.objects[d.to].arrow;
    // solve f o z = alpha^-1 o g over every representative of the coset; all
    // must give the same z
    std::optional<std::vector<int>> z_common;
    bool ok = true;
    for (int rep : d.coset) {
      auto ainv = invert_aut(rep);
      std::vector<int> pre(S.u->size(), -1);
      for (int x = 0; x < f.source()->size(); ++x) pre[f(x)] = x;
      std::vector<int> z(g.source()->size());
      for (int x = 0; x < g.source()->size(); ++x) {
        int target = ainv[g(x)];
        if (target < 0 || pre[target] < 0) { ok = false; break; }
        z[x] = pre[target];
      }
      if (!ok) break;
      if (!z_common) z_common = z;
      else if (*z_common != z) { ok = false; break; }
    }
    if (!ok || !z_common) {
      v.well_defined = false;
      v.note = "arrow part of the functor is not well defined on morphism " +
               std::to_string(m);
      return v;
    }
    Embedding ze(S.objects[d.to].arrow.source(), S.objects[d.from].arrow.source(), *z_common);
    if (!ze.valid()) {
      v.well_defined = false;
      v.note = "functor image is not an embedding on morphism " + std::to_string(m);
      return v;
    }
    z_of[m] = z_common;
  }
  // functoriality: identities map to identities, composites reverse
  v.functorial = true;
  for (int i = 0; i < static_cast<int>(CC.cat.identity.size()); ++i) {
    int e = CC.cat.identity[i];
    const auto& z = *z_of[e];
    for (std::size_t x = 0; x < z.size(); ++x)
      if (z[x] != static_cast<int>(x)) v.functorial = false;
  }
  for (int f = 0; f < nm && v.functorial; ++f)
    for (int g = 0; g < nm; ++g) {
      int h = CC.cat.compose_table[f][g];
      if (h < 0) continue;
      // F(g o f) = F(f) o F(g)  (contravariance)
      const auto& zf = *z_of[f];
      const auto& zg = *z_of[g];
      const auto& zh = *z_of[h];
      std::vector<int> want(zh.size());
      for (std::size_t x = 0; x < zg.size(); ++x) want[x] = zf[zg[x]];
      if (want != zh) { v.functorial = false; break; }
    }
  // faithfulness: distinct parallel cosets give distinct z
  v.faithful_part = true;
  for (int m1 = 0; m1 < nm && v.faithful_part; ++m1)
    for (int m2 = m1 + 1; m2 < nm; ++m2)
      if (CC.data[m1].from == CC.data[m2].from && CC.data[m1].to == CC.data[m2].to &&
          *z_of[m1] == *z_of[m2]) {
        v.faithful_part = false;
        break;
      }
  // fullness: every arrow dom(g) -> dom(f) of C arises from a coset
  v.full_part = true;
  int no = static_cast<int>(S.objects.size());
  for (int i = 0; i < no && v.full_part; ++i)
    for (int j = 0; j < no && v.full_part; ++j) {
      const auto& f = S.objects[i].arrow;
      const auto& g = S.objects[j].arrow;
      for (const auto& z : enumerate_embeddings(g.source(), f.source())) {
        // find alpha with alpha o f o z = g
        bool found_alpha = false;
        for (std::size_t a = 0; a < S.aut.size(); ++a) {
          bool match = true;
          for (int x = 0; x < g.source()->size(); ++x)
            if (S.aut[a](f(z(x))) != g(x)) { match = false; break; }
          if (!match) continue;
          // the coset stab(g)·alpha^-1 ... membership: find a morphism i -> j
          // whose z equals this one
          found_alpha = true;
          break;
        }
        if (!found_alpha) { v.full_part = false; break; }
        bool realized = false;
        for (int m = 0; m < nm; ++m)
          if (CC.data[m].from == i && CC.data[m].to == j && *z_of[m] == z.map()) {
            realized = true;
            break;
          }
        if (!realized) { v.full_part = false; break; }
      }
    }
  // essential surjectivity: every object of C is the domain of an anchor
  v.essentially_surjective = true;
  for (std::size_t c = 0; c < S.c_objects.size(); ++c) {
    bool covered = false;
    for (const auto& o : S.objects)
      if (o.c_index == static_cast<int>(c)) covered = true;
    if (!covered) v.essentially_surjective = false;
  }
  (void)c_as_fincat;
  std::ostringstream os;
  os << "functor audited on " << nm << " cosets over " << no << " objects";
  v.note = os.str();
  return v;
}

// Orbit-stabilizer identity: the size of each coset space equals the number
// of orbit-category objects sharing the domain.
inline bool index_identity_holds(const StabilizerAssignment& S, const CosetCategory& CC) {
  for (std::size_t i = 0; i < S.objects.size(); ++i) {
    long same_dom = 0;
    for (const auto& o : S.objects)
      if (o.c_index == S.objects[i].c_index) same_dom++;
    if (CC.coset_space_sizes[i] != same_dom) return false;
  }
  return true;
}

} // namespace forge

#endif
