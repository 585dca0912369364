#ifndef FORGE_FINCAT_GEN_HPP
#define FORGE_FINCAT_GEN_HPP

#include <random>

#include "forge/fincat.hpp"

namespace forge {

// Thin category of a preorder relation (reflexive-transitive closure taken).
inline FinCategory preorder_category(int n, const std::vector<std::pair<int, int>>& le,
                                     const std::string& provenance = "preorder") {
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = 1;
  for (auto [a, b] : le) leq[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = 1;
  FinCategory C;
  C.provenance = provenance;
  for (int i = 0; i < n; ++i) C.objects.push_back("o" + std::to_string(i));
  std::vector<std::vector<int>> mid(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq[i][j]) {
        mid[i][j] = static_cast<int>(C.morphisms.size());
        C.morphisms.push_back({"m" + std::to_string(i) + "_" + std::to_string(j), i, j});
      }
  C.identity.resize(n);
  for (int i = 0; i < n; ++i) C.identity[i] = mid[i][i];
  int nm = static_cast<int>(C.morphisms.size());
  C.compose_table.assign(nm, std::vector<int>(nm, -1));
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g)
      if (C.morphisms[f].cod == C.morphisms[g].dom)
        C.compose_table[f][g] = mid[C.morphisms[f].dom][C.morphisms[g].cod];
  return C;
}

// Free category on an acyclic quiver: morphisms are paths.
inline FinCategory path_category(int n, const std::vector<std::pair<int, int>>& edges,
                                 const std::string& provenance = "paths") {
  // edges must go from lower to higher vertex index (acyclicity)
  for (auto [a, b] : edges)
    if (a >= b) throw std::invalid_argument("path_category: edges must increase");
  FinCategory C;
  C.provenance = provenance;
  for (int i = 0; i < n; ++i) C.objects.push_back("o" + std::to_string(i));
  // enumerate all paths by BFS over edge sequences
  struct Path {
    int dom, cod;
    std::vector<int> edge_seq;
  };
  std::vector<Path> paths;
  std::map<std::vector<int>, int> path_index; // by edge sequence (ids offset by dom for empties)
  for (int i = 0; i < n; ++i) {
    paths.push_back({i, i, {}});
    path_index[{-1 - i}] = static_cast<int>(paths.size()) - 1; // sentinel key for identity
  }
  std::vector<std::size_t> frontier;
  for (std::size_t p = 0; p < paths.size(); ++p) frontier.push_back(p);
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t pi : frontier)
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].first != paths[pi].cod) continue;
        Path q = paths[pi];
        q.cod = edges[e].second;
        q.edge_seq.push_back(static_cast<int>(e));
        std::vector<int> key = q.edge_seq;
        key.insert(key.begin(), -1 - q.dom);
        if (path_index.count(key)) continue;
        path_index[key] = static_cast<int>(paths.size());
        paths.push_back(q);
        next.push_back(paths.size() - 1);
      }
    frontier = std::move(next);
  }
  for (const auto& p : paths) {
    std::string nm = p.edge_seq.empty() ? "id" + std::to_string(p.dom) : "p";
    for (int e : p.edge_seq) nm += "_" + std::to_string(e);
    C.morphisms.push_back({nm, p.dom, p.cod});
  }
  C.identity.resize(n);
  for (int i = 0; i < n; ++i) C.identity[i] = i;
  int nm = static_cast<int>(paths.size());
  C.compose_table.assign(nm, std::vector<int>(nm, -1));
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (paths[f].cod != paths[g].dom) continue;
      std::vector<int> seq = paths[f].edge_seq;
      seq.insert(seq.end(), paths[g].edge_seq.begin(), paths[g].edge_seq.end());
      std::vector<int> key = seq;
      key.insert(key.begin(), -1 - paths[f].dom);
      if (seq.empty()) key = {-1 - paths[f].dom};
      C.compose_table[f][g] = path_index.at(key);
    }
  return C;
}

// One-object category of a transformation monoid (maps {0..k-1} -> itself,
// closed under composition, containing the identity).
inline FinCategory monoid_category(const std::vector<std::vector<int>>& elements,
                                   const std::string& provenance = "monoid") {
  FinCategory C;
  C.provenance = provenance;
  C.objects.push_back("x");
  int nm = static_cast<int>(elements.size());
  int id_index = -1;
  for (int m = 0; m < nm; ++m) {
    C.morphisms.push_back({"e" + std::to_string(m), 0, 0});
    bool is_id = true;
    for (std::size_t i = 0; i < elements[m].size(); ++i)
      if (elements[m][i] != static_cast<int>(i)) is_id = false;
    if (is_id) id_index = m;
  }
  if (id_index < 0) throw std::invalid_argument("monoid_category: identity missing");
  C.identity = {id_index};
  C.compose_table.assign(nm, std::vector<int>(nm, -1));
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      // g o f as transformations
      std::vector<int> comp(elements[f].size());
      for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = elements[g][elements[f][i]];
      int found = -1;
      for (int h = 0; h < nm; ++h)
        if (elements[h] == comp) found = h;
      if (found < 0) throw std::invalid_argument("monoid_category: not closed");
      C.compose_table[f][g] = found;
    }
  return C;
}

// Disjoint union of categories.
inline FinCategory disjoint_union(const FinCategory& A, const FinCategory& B) {
  FinCategory C;
  C.provenance = "disjoint union";
  C.objects = A.objects;
  for (const auto& o : B.objects) C.objects.push_back(o + "'");
  int oo = static_cast<int>(A.objects.size());
  int mo = static_cast<int>(A.morphisms.size());
  C.morphisms = A.morphisms;
  for (const auto& m : B.morphisms)
    C.morphisms.push_back({m.name + "'", m.dom + oo, m.cod + oo});
  C.identity = A.identity;
  for (int i : B.identity) C.identity.push_back(i + mo);
  int nm = static_cast<int>(C.morphisms.size());
  C.compose_table.assign(nm, std::vector<int>(nm, -1));
  for (int f = 0; f < mo; ++f)
    for (int g = 0; g < mo; ++g) C.compose_table[f][g] = A.compose_table[f][g];
  for (int f = 0; f < nm - mo; ++f)
    for (int g = 0; g < nm - mo; ++g) {
      int h = B.compose_table[f][g];
      C.compose_table[f + mo][g + mo] = h < 0 ? -1 : h + mo;
    }
  return C;
}

// Category of an age truncation: canonical representatives up to the size
// bound with every embedding between them as a morphism.
inline FinCategory age_category(const AgeClass& age, int size_bound) {
  FinCategory C;
  C.provenance = age.name() + " representatives up to size " + std::to_string(size_bound);
  std::vector<StructPtr> objs = age.members_up_to(size_bound);
  struct MorData {
    Embedding e;
  };
  std::vector<MorData> mors;
  for (std::size_t a = 0; a < objs.size(); ++a)
    C.objects.push_back("s" + std::to_string(objs[a]->size()) + "_" + std::to_string(a));
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;
  for (std::size_t a = 0; a < objs.size(); ++a)
    for (std::size_t b = 0; b < objs.size(); ++b)
      for (const auto& e : enumerate_embeddings(objs[a], objs[b])) {
        int id = static_cast<int>(mors.size());
        index[{{static_cast<int>(a), static_cast<int>(b)}, e.map()}] = id;
        mors.push_back({e});
        C.morphisms.push_back({"f" + std::to_string(id), static_cast<int>(a),
                               static_cast<int>(b)});
      }
  C.identity.resize(objs.size());
  for (std::size_t a = 0; a < objs.size(); ++a) {
    std::vector<int> idm(objs[a]->size());
    for (int i = 0; i < objs[a]->size(); ++i) idm[i] = i;
    C.identity[a] = index.at({{static_cast<int>(a), static_cast<int>(a)}, idm});
  }
  int nm = static_cast<int>(mors.size());
  C.compose_table.assign(nm, std::vector<int>(nm, -1));
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (C.morphisms[f].cod != C.morphisms[g].dom) continue;
      Embedding comp = mors[f].e.then(mors[g].e);
      C.compose_table[f][g] =
          index.at({{C.morphisms[f].dom, C.morphisms[g].cod}, comp.map()});
    }
  return C;
}

// Deterministic generator mixing preorders (with and without tops), their
// disjoint unions, small path categories and transformation monoids.
inline std::vector<FinCategory> generate_categories(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::vector<FinCategory> out;
  auto rand_preorder = [&](int n, bool add_top) {
    std::vector<std::pair<int, int>> le;
    std::uniform_int_distribution<int> coin(0, 99);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && coin(rng) < 30) le.push_back({i, j});
    if (add_top)
      for (int i = 0; i < n; ++i) le.push_back({i, n});
    return preorder_category(add_top ? n + 1 : n, le,
                             add_top ? "preorder+top" : "preorder");
  };
  std::uniform_int_distribution<int> size(1, 4);
  int i = 0;
  while (static_cast<int>(out.size()) < count) {
    switch (i++ % 5) {
      case 0: out.push_back(rand_preorder(size(rng), true)); break;
      case 1: out.push_back(rand_preorder(size(rng), false)); break;
      case 2: {
        auto a = rand_preorder(size(rng), true);
        auto b = rand_preorder(size(rng), true);
        out.push_back(disjoint_union(a, b));
        break;
      }
      case 3: {
        int n = size(rng) + 1;
        std::vector<std::pair<int, int>> edges;
        std::uniform_int_distribution<int> coin(0, 99);
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if (coin(rng) < 35) edges.push_back({a, b});
        out.push_back(path_category(n, edges));
        break;
      }
      default: {
        // submonoid of maps on 2 points generated by a random element
        std::uniform_int_distribution<int> pick(0, 3);
        std::vector<std::vector<int>> gens = {{0, 1}};
        std::vector<std::vector<int>> all = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        std::vector<std::vector<int>> elems = {{0, 1}};
        std::vector<int> g = all[pick(rng)];
        if (std::find(elems.begin(), elems.end(), g) == elems.end()) elems.push_back(g);
        // close under composition
        bool grew = true;
        while (grew) {
          grew = false;
          for (std::size_t x = 0; x < elems.size(); ++x)
            for (std::size_t y = 0; y < elems.size(); ++y) {
              std::vector<int> c = {elems[y][elems[x][0]], elems[y][elems[x][1]]};
              if (std::find(elems.begin(), elems.end(), c) == elems.end()) {
                elems.push_back(c);
                grew = true;
              }
            }
        }
        out.push_back(monoid_category(elems));
        break;
      }
    }
  }
  for (auto& c : out) c.validate();
  return out;
}

} // namespace forge

#endif
