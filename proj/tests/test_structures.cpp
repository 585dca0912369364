#include "doctest.h"

#include <random>

#include "forge/ages_builtin.hpp"
#include "forge/canonical.hpp"

using namespace forge;

namespace {

SigPtr digraph_signature() {
  static SigPtr s = make_signature({{"A", 2}});
  return s;
}

FinStructure make_digraph(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<Tuple> t;
  for (auto [a, b] : arcs) t.push_back({a, b});
  return FinStructure(digraph_signature(), n, {t}, {}, {});
}

// Exhaustive reference: all injective maps checked against the embedding
// conditions one by one, independent of the search engine.
std::vector<std::vector<int>> brute_force_embeddings(const StructPtr& A, const StructPtr& B) {
  std::vector<std::vector<int>> out;
  int n = A->size(), m = B->size();
  std::vector<int> map(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Embedding e(A, B, map);
      if (e.valid()) out.push_back(map);
      return;
    }
    for (int t = 0; t < m; ++t) {
      bool used = false;
      for (int j = 0; j < i; ++j)
        if (map[j] == t) used = true;
      if (used) continue;
      map[i] = t;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::mt19937 rng(12345);

FinStructure random_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return make_graph(n, edges);
}

} // namespace

TEST_CASE("one vertex into the 2-vertex edgeless graph: both placements") {
  auto a = share(make_graph(1, {}));
  auto b = share(make_graph(2, {}));
  auto embs = enumerate_embeddings(a, b);
  CHECK(embs.size() == 2);
  CHECK(embs[0].map() == std::vector<int>{0});
  CHECK(embs[1].map() == std::vector<int>{1});
}

TEST_CASE("single directed edge into the directed 3-cycle") {
  auto e = share(make_digraph(2, {{0, 1}}));
  auto c3 = share(make_digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
  auto embs = enumerate_embeddings(e, c3);
  auto oracle = brute_force_embeddings(e, c3);
  CHECK(embs.size() == oracle.size());
  CHECK(embs.size() == 3);
  for (std::size_t i = 0; i < embs.size(); ++i) CHECK(embs[i].map() == oracle[i]);
}

TEST_CASE("two-element chain into the three-element chain") {
  auto c2 = share(make_chain(2));
  auto c3 = share(make_chain(3));
  auto embs = enumerate_embeddings(c2, c3);
  auto oracle = brute_force_embeddings(c2, c3);
  CHECK(embs.size() == 3);
  CHECK(embs.size() == oracle.size());
}

TEST_CASE("embeddings come out in lexicographic map order") {
  auto a = share(make_graph(2, {{0, 1}}));
  auto b = share(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  auto embs = enumerate_embeddings(a, b);
  for (std::size_t i = 1; i < embs.size(); ++i) CHECK(embs[i - 1].map() < embs[i].map());
}

TEST_CASE("isomorphism witnesses") {
  auto c3 = share(make_graph(3, {{0, 1}, {1, 2}, {2, 0}}));
  SUBCASE("triangle against itself") {
    auto w = are_isomorphic(c3, c3);
    REQUIRE(w.has_value());
    CHECK(w->map() == std::vector<int>{0, 1, 2});
  }
  SUBCASE("path of length 2 is not a triangle") {
    auto p3 = share(make_graph(3, {{0, 1}, {1, 2}}));
    CHECK(!are_isomorphic(p3, c3).has_value());
  }
  SUBCASE("relabelings of one random graph are isomorphic") {
    auto g = share(random_graph(5));
    std::vector<int> perm = {3, 1, 4, 0, 2};
    auto h = share(g->relabel(perm));
    auto w = are_isomorphic(g, h);
    REQUIRE(w.has_value());
    CHECK(w->valid());
    // round-trip: the witness composed with the inverse relabeling fixes g
    auto back = are_isomorphic(h, g);
    REQUIRE(back.has_value());
    CHECK(w->then(*back).source()->size() == 5);
  }
}

TEST_CASE("automorphism groups of the small standards") {
  CHECK(automorphisms(share(make_set(3))).size() == 6);
  CHECK(automorphisms(share(make_chain(3))).size() == 1);
  auto c4 = share(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  auto auts = automorphisms(c4);
  CHECK(auts.size() == 8);
  CHECK(auts.size() == brute_force_embeddings(c4, c4).size());
}

TEST_CASE("automorphisms form a group with the identity first") {
  for (int trial = 0; trial < 8; ++trial) {
    auto g = share(random_graph(4));
    auto auts = automorphisms(g);
    REQUIRE(!auts.empty());
    for (int i = 0; i < 4; ++i) CHECK(auts[0].map()[i] == i);
    auto contains = [&](const std::vector<int>& m) {
      for (const auto& a : auts)
        if (a.map() == m) return true;
      return false;
    };
    for (const auto& a : auts) {
      CHECK(contains(a.inverse().map()));
      for (const auto& b : auts) CHECK(contains(a.then(b).map()));
    }
  }
}

TEST_CASE("enumerate on (A, A) restricted to bijections equals the automorphisms") {
  auto g = share(random_graph(5));
  auto all = enumerate_embeddings(g, g);
  auto auts = automorphisms(g);
  REQUIRE(all.size() == auts.size()); // same size forces bijectivity
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].map() == auts[i].map());
}

TEST_CASE("identity and composition stay inside the embedding class") {
  auto g = share(random_graph(4));
  CHECK(Embedding::identity(g).valid());
  auto h = share(random_graph(6));
  for (const auto& e : enumerate_embeddings(g, h)) {
    CHECK(e.valid());
    for (const auto& f : enumerate_embeddings(h, h)) CHECK(e.then(f).valid());
  }
}

TEST_CASE("every returned embedding induces a copy of its source") {
  for (int trial = 0; trial < 10; ++trial) {
    auto a = share(random_graph(3));
    auto b = share(random_graph(5));
    for (const auto& e : enumerate_embeddings(a, b)) {
      std::vector<int> img(e.map());
      auto induced = share(b->induced(img));
      CHECK(are_isomorphic(a, induced).has_value());
    }
  }
}

TEST_CASE("embeddings of structures with functions respect the tables") {
  auto p2 = share(make_powerset_algebra(2));
  auto p3 = share(make_powerset_algebra(3));
  auto embs = enumerate_embeddings(p2, p3);
  auto oracle = brute_force_embeddings(p2, p3);
  CHECK(embs.size() == oracle.size());
  // an embedding of the 4-element algebra is fixed by the image of one atom
  CHECK(embs.size() == 6);
  for (const auto& e : embs) CHECK(e.valid());
}

TEST_CASE("signature mismatch is rejected") {
  auto g = share(make_graph(2, {}));
  auto s = share(make_set(2));
  CHECK_THROWS_AS(enumerate_embeddings(g, s), std::invalid_argument);
}

TEST_CASE("structure invariants are enforced") {
  CHECK_THROWS_AS(FinStructure(graph_signature(), 2, {{{0, 5}}}, {}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FinStructure(boolalg_signature(), 0, {}, {{}, {}, {}}, {}),
                  std::invalid_argument);
  // partial function table
  CHECK_THROWS_AS(FinStructure(boolalg_signature(), 2, {}, {{0}, {0, 1, 1, 1}, {1, 0}}, {0, 1}),
                  std::invalid_argument);
}

TEST_CASE("canonical forms separate and identify iso classes") {
  auto p3 = make_graph(3, {{0, 1}, {1, 2}});
  auto p3b = make_graph(3, {{1, 0}, {0, 2}}); // relabeled path
  auto k3 = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(canonical_form(p3) == canonical_form(p3b));
  CHECK(canonical_form(p3) != canonical_form(k3));
}
