#ifndef FORGE_FINCAT_HPP
#define FORGE_FINCAT_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "forge/age.hpp"
#include "forge/enumerate.hpp"

namespace forge {

// An explicitly tabulated finite category.  compose_table[f][g] is g o f when
// cod(f) = dom(g), -1 otherwise.
struct FinCategory {
  struct Mor {
    std::string name;
    int dom = 0;
    int cod = 0;
  };

  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  std::vector<int> identity;                   // per object
  std::vector<std::vector<int>> compose_table; // [f][g] = g o f
  std::string provenance;

  int compose(int f, int g) const { return compose_table[f][g]; } // g after f

  bool is_identity(int m) const {
    return identity[morphisms[m].dom] == m;
  }

  void validate() const {
    int nm = static_cast<int>(morphisms.size());
    if (static_cast<int>(identity.size()) != static_cast<int>(objects.size()))
      throw std::invalid_argument("category: identity list size mismatch");
    for (std::size_t o = 0; o < objects.size(); ++o) {
      int e = identity[o];
      if (morphisms[e].dom != static_cast<int>(o) || morphisms[e].cod != static_cast<int>(o))
        throw std::invalid_argument("category: identity endpoints wrong");
    }
    if (static_cast<int>(compose_table.size()) != nm)
      throw std::invalid_argument("category: composition table wrong size");
    for (int f = 0; f < nm; ++f) {
      if (static_cast<int>(compose_table[f].size()) != nm)
        throw std::invalid_argument("category: composition table wrong size");
      for (int g = 0; g < nm; ++g) {
        bool composable = morphisms[f].cod == morphisms[g].dom;
        int h = compose_table[f][g];
        if (!composable) {
          if (h != -1) throw std::invalid_argument("category: spurious composite");
          continue;
        }
        if (h < 0 || h >= nm)
          throw std::invalid_argument("category: partial composition table");
        if (morphisms[h].dom != morphisms[f].dom || morphisms[h].cod != morphisms[g].cod)
          throw std::invalid_argument("category: composite endpoints wrong");
      }
    }
    // unit laws
    for (int f = 0; f < nm; ++f) {
      if (compose_table[identity[morphisms[f].dom]][f] != f)
        throw std::invalid_argument("category: left unit law fails");
      if (compose_table[f][identity[morphisms[f].cod]] != f)
        throw std::invalid_argument("category: right unit law fails");
    }
    // associativity by full scan
    for (int f = 0; f < nm; ++f)
      for (int g = 0; g < nm; ++g) {
        if (morphisms[f].cod != morphisms[g].dom) continue;
        int gf = compose_table[f][g];
        for (int h = 0; h < nm; ++h) {
          if (morphisms[g].cod != morphisms[h].dom) continue;
          if (compose_table[gf][h] != compose_table[f][compose_table[g][h]])
            throw std::invalid_argument("category: associativity fails");
        }
      }
  }
};

inline FinCategory opposite(const FinCategory& C) {
  FinCategory D;
  D.objects = C.objects;
  D.identity = C.identity;
  D.provenance = C.provenance.empty() ? "opposite" : "opposite of " + C.provenance;
  D.morphisms.reserve(C.morphisms.size());
  for (const auto& m : C.morphisms) D.morphisms.push_back({m.name, m.cod, m.dom});
  int nm = static_cast<int>(C.morphisms.size());
  D.compose_table.assign(nm, std::vector<int>(nm, -1));
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      int h = C.compose_table[f][g];
      if (h >= 0) D.compose_table[g][f] = h;
    }
  return D;
}

struct OreVerdict {
  bool holds = true;
  // failing cospan: f : b -> a, g : c -> a with no completing span
  int f = -1, g = -1;
  long cospans_checked = 0;
};

// Right Ore condition: every cospan completes to a commuting square.
inline OreVerdict check_right_ore(const FinCategory& C) {
  OreVerdict v;
  int nm = static_cast<int>(C.morphisms.size());
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (C.morphisms[f].cod != C.morphisms[g].cod) continue;
      v.cospans_checked++;
      bool found = false;
      for (int p = 0; p < nm && !found; ++p) {
        if (C.morphisms[p].cod != C.morphisms[f].dom) continue;
        for (int q = 0; q < nm; ++q) {
          if (C.morphisms[q].cod != C.morphisms[g].dom) continue;
          if (C.morphisms[q].dom != C.morphisms[p].dom) continue;
          if (C.compose(p, f) == C.compose(q, g)) { found = true; break; }
        }
      }
      if (!found) {
        v.holds = false;
        v.f = f;
        v.g = g;
        return v;
      }
    }
  return v;
}

// Connected components of the underlying undirected morphism graph.
inline std::pair<bool, std::vector<int>> zigzag_connected(const FinCategory& C) {
  int no = static_cast<int>(C.objects.size());
  std::vector<int> parent(no);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : C.morphisms) parent[find(m.dom)] = find(m.cod);
  std::map<int, int> roots;
  std::vector<int> comp(no);
  for (int o = 0; o < no; ++o) {
    int r = find(o);
    auto it = roots.find(r);
    if (it == roots.end()) it = roots.emplace(r, static_cast<int>(roots.size())).first;
    comp[o] = it->second;
  }
  bool connected = no > 0 && roots.size() == 1;
  return {connected, comp};
}

inline int component_count(const FinCategory& C) {
  auto [conn, comp] = zigzag_connected(C);
  (void)conn;
  int c = 0;
  for (int x : comp) c = std::max(c, x + 1);
  return c;
}

struct Cocone {
  int apex = -1;
  int from_a = -1; // morphism a -> apex
  int from_b = -1; // morphism b -> apex
};

struct JepFromConnectednessVerdict {
  bool connected = false;
  bool jep = false;
  // counterexample pair when disconnected
  int obj_a = -1, obj_b = -1;
  std::vector<std::vector<Cocone>> cocones; // per object pair, when connected
  std::string note;
};

// Joint embedding on a finite category with amalgamation: walk a zig-zag
// between each pair and close it up square by square.
inline JepFromConnectednessVerdict jep_from_connectedness(const FinCategory& C) {
  if (C.objects.empty()) throw std::invalid_argument("jep_from_connectedness: empty category");
  {
    auto ore = check_right_ore(opposite(C));
    if (!ore.holds)
      throw std::invalid_argument(
          "jep_from_connectedness: amalgamation precondition fails on the input");
  }
  JepFromConnectednessVerdict v;
  auto [conn, comp] = zigzag_connected(C);
  v.connected = conn;
  int no = static_cast<int>(C.objects.size());
  if (!conn) {
    for (int a = 0; a < no && v.obj_a < 0; ++a)
      for (int b = a + 1; b < no; ++b)
        if (comp[a] != comp[b]) {
          v.obj_a = a;
          v.obj_b = b;
          break;
        }
    v.jep = false;
    v.note = "objects in distinct zig-zag components";
    return v;
  }
  // BFS parents over the undirected morphism graph
  int nm = static_cast<int>(C.morphisms.size());
  auto amalgamate = [&](int f, int g) -> std::pair<int, int> {
    // span f : a -> b, g : a -> c; returns (f' : b -> d, g' : c -> d)
    for (int fp = 0; fp < nm; ++fp) {
      if (C.morphisms[fp].dom != C.morphisms[f].cod) continue;
      for (int gp = 0; gp < nm; ++gp) {
        if (C.morphisms[gp].dom != C.morphisms[g].cod) continue;
        if (C.morphisms[gp].cod != C.morphisms[fp].cod) continue;
        if (C.compose(f, fp) == C.compose(g, gp)) return {fp, gp};
      }
    }
    throw std::logic_error("jep_from_connectedness: amalgam vanished mid-walk");
  };
  v.cocones.assign(no, std::vector<Cocone>(no));
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b) {
      // BFS path a ~~ b, edges usable in either direction
      std::vector<int> prev_obj(no, -1), prev_mor(no, -1);
      std::vector<char> fwd(no, 0), vis(no, 0);
      std::vector<int> queue = {a};
      vis[a] = 1;
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (int m = 0; m < nm; ++m) {
          int nxt = -1;
          bool forward = false;
          if (C.morphisms[m].dom == x && !vis[C.morphisms[m].cod]) {
            nxt = C.morphisms[m].cod;
            forward = true;
          } else if (C.morphisms[m].cod == x && !vis[C.morphisms[m].dom]) {
            nxt = C.morphisms[m].dom;
          }
          if (nxt < 0) continue;
          vis[nxt] = 1;
          prev_obj[nxt] = x;
          prev_mor[nxt] = m;
          fwd[nxt] = forward;
          queue.push_back(nxt);
        }
      }
      if (!vis[b]) throw std::logic_error("jep_from_connectedness: connectivity lied");
      // reconstruct path a = d0, d1, ..., dn = b
      std::vector<std::pair<int, bool>> edges; // (morphism, is_forward along path)
      for (int x = b; x != a; x = prev_obj[x]) edges.push_back({prev_mor[x], fwd[x]});
      std::reverse(edges.begin(), edges.end());
      // inductively close the zig-zag: cocone over (a, current node)
      int f_a = C.identity[a]; // a -> apex
      int f_d = C.identity[a]; // current node -> apex
      for (auto [m, forward] : edges) {
        if (forward) {
          // edge h : d_i -> d_{i+1}; amalgamate span (f_d : d_i -> apex, h)
          auto [s, t] = amalgamate(f_d, m);
          // new apex = cod(s); a -> new apex, d_{i+1} -> new apex
          f_a = C.compose(f_a, s);
          f_d = t;
        } else {
          // edge h : d_{i+1} -> d_i; precompose
          f_d = C.compose(m, f_d);
        }
      }
      Cocone cc;
      cc.apex = C.morphisms[f_a].cod;
      cc.from_a = f_a;
      cc.from_b = f_d;
      // sanity: endpoints
      if (C.morphisms[f_a].dom != a || C.morphisms[f_d].dom != b ||
          C.morphisms[f_d].cod != cc.apex)
        throw std::logic_error("jep_from_connectedness: cocone endpoints wrong");
      v.cocones[a][b] = cc;
    }
  v.jep = true;
  return v;
}

struct IdealSet {
  std::set<int> objects;
  bool downward_closed = true; // sieve: f : a -> b, b in I => a in I
  bool upward_closed = true;   // f : v -> u, v in I => u in I
};

// All subsets of objects closed both down and up along arrows; with the
// atomic topology these are exactly the subterminal candidates and coincide
// with unions of zig-zag components.
inline std::vector<IdealSet> enumerate_jat_ideals(const FinCategory& C) {
  {
    auto ore = check_right_ore(C);
    if (!ore.holds)
      throw std::invalid_argument(
          "enumerate_jat_ideals: the atomic topology needs the right Ore condition");
  }
  int no = static_cast<int>(C.objects.size());
  if (no > 20) throw std::invalid_argument("enumerate_jat_ideals: too many objects");
  std::vector<IdealSet> out;
  for (unsigned mask = 0; mask < (1u << no); ++mask) {
    bool ok = true;
    for (const auto& m : C.morphisms) {
      bool dom_in = (mask >> m.dom) & 1u, cod_in = (mask >> m.cod) & 1u;
      if (cod_in && !dom_in) { ok = false; break; } // sieve
      if (dom_in && !cod_in) { ok = false; break; } // atomic-cover closure
    }
    if (!ok) continue;
    IdealSet I;
    for (int o = 0; o < no; ++o)
      if ((mask >> o) & 1u) I.objects.insert(o);
    out.push_back(std::move(I));
  }
  // the count is forced by the component structure; keep that as a hard check
  long expect = 1l << component_count(C);
  if (static_cast<long>(out.size()) != expect)
    throw std::logic_error("enumerate_jat_ideals: count disagrees with components");
  return out;
}

// Sheaves on the empty site are trivial and on anything else are not.
inline bool triviality_verdict(const FinCategory& C) { return C.objects.empty(); }

// One existential-surjectivity sequent per non-identity arrow.
inline std::vector<std::string> emit_homogeneous_axioms(const FinCategory& C) {
  std::vector<std::string> out;
  for (std::size_t m = 0; m < C.morphisms.size(); ++m) {
    if (C.is_identity(static_cast<int>(m))) continue;
    const auto& mor = C.morphisms[m];
    out.push_back("⊤ ⊢_y (∃x∈" + C.objects[mor.dom] + ")(" + mor.name + "(x)=y)");
  }
  return out;
}

} // namespace forge

#endif
