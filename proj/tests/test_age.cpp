#include "doctest.h"

#include "forge/age_checks.hpp"
#include "forge/fincat_gen.hpp"

using namespace forge;

namespace {

SigPtr colored_point_signature() {
  static SigPtr s = make_signature({{"red", 1}, {"blue", 1}});
  return s;
}

FinStructure colored_point(bool red) {
  std::vector<Tuple> r, b;
  (red ? r : b).push_back({0});
  return FinStructure(colored_point_signature(), 1, {r, b}, {}, {});
}

// Two minimal incomparable members and nothing else: joint embedding is
// impossible, amalgamation is vacuous above the shared (empty) part.
ExtensionalAge two_colors_age() {
  return ExtensionalAge("twocolors", colored_point_signature(),
                        {share(colored_point(true)), share(colored_point(false))},
                        /*auto_close=*/false);
}

// Graphs truncated at two vertices: the edge and the non-edge cannot be
// amalgamated over a point inside the class.
ExtensionalAge tiny_graphs_age() {
  return ExtensionalAge("tinygraphs", graph_signature(),
                        {share(make_graph(2, {{0, 1}})), share(make_graph(2, {}))},
                        /*auto_close=*/true);
}

} // namespace

TEST_CASE("built-in enumerators produce the known counts, duplicate-free") {
  SimpleGraphsAge graphs;
  const long expected[] = {1, 1, 2, 4, 11, 34};
  for (int n = 0; n <= 5; ++n) {
    const auto& ms = graphs.members_of_size(n);
    CHECK(static_cast<long>(ms.size()) == expected[n]);
    for (const auto& m : ms) CHECK(graphs.contains(*m));
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j)
        CHECK(!are_isomorphic(ms[i], ms[j]).has_value());
  }
  LinearOrdersAge linords;
  CHECK(linords.members_of_size(5).size() == 1);
  PureSetsAge sets;
  CHECK(sets.members_of_size(7).size() == 1);
  BooleanAlgebrasAge bools;
  CHECK(bools.members_of_size(8).size() == 1);
  CHECK(bools.members_of_size(6).empty());
  CHECK(bools.members_of_size(1).empty());
}

TEST_CASE("membership is isomorphism-invariant (spot checks)") {
  SimpleGraphsAge graphs;
  auto g = make_graph(4, {{0, 1}, {2, 3}, {1, 2}});
  CHECK(graphs.contains(g));
  CHECK(graphs.contains(g.relabel({2, 0, 3, 1})));
  BooleanAlgebrasAge bools;
  auto p2 = make_powerset_algebra(2);
  CHECK(bools.contains(p2));
  CHECK(bools.contains(p2.relabel({3, 1, 2, 0})));
  // a non-member: "meet" replaced by a projection
  auto bad = FinStructure(boolalg_signature(), 2, {},
                          {{0, 0, 0, 0}, {0, 1, 1, 1}, {1, 0}}, {0, 1});
  CHECK(!bools.contains(bad));
}

TEST_CASE("enumerator exhaustion below the bound is an error") {
  SimpleGraphsAge graphs;
  CHECK_THROWS_AS(graphs.members_of_size(9), AgeError);
}

TEST_CASE("amalgamation holds within bound for the free classes") {
  SimpleGraphsAge graphs;
  auto v = check_amalgamation(graphs, 3, 6);
  CHECK(v.outcome == Outcome::Holds);
  CHECK(v.spans_checked > 0);
  CHECK(v.witnesses_found == v.spans_checked);

  LinearOrdersAge linords;
  auto w = check_amalgamation(linords, 3, 6);
  CHECK(w.outcome == Outcome::Holds);
}

TEST_CASE("amalgamation failure carries a replayable counterexample") {
  auto tiny = tiny_graphs_age();
  auto v = check_amalgamation(tiny, 2, 2);
  REQUIRE(v.outcome == Outcome::Fails);
  REQUIRE(v.counterexample.has_value());
  // re-running the amalgam search on the counterexample finds nothing
  CHECK(!find_amalgam(tiny, *v.counterexample, 2));
  // the span really is a span
  CHECK(v.counterexample->f.valid());
  CHECK(v.counterexample->g.valid());
}

TEST_CASE("joint embedding on the built-ins and on the two-color fixture") {
  SimpleGraphsAge graphs;
  CHECK(check_jep(graphs, 3, 6).outcome == Outcome::Holds);
  PureSetsAge sets;
  CHECK(check_jep(sets, 3, 6).outcome == Outcome::Holds);
  auto colors = two_colors_age();
  auto v = check_jep(colors, 1, 1);
  REQUIRE(v.outcome == Outcome::Fails);
  REQUIRE(v.counterexample.has_value());
  // ... while amalgamation never even sees a span joining the two colors
  CHECK(check_amalgamation(colors, 1, 1).outcome == Outcome::Holds);
}

TEST_CASE("weakly initial objects") {
  SimpleGraphsAge graphs;
  auto w = has_weakly_initial(graphs, 4);
  REQUIRE(w.has_value());
  CHECK((*w)->size() == 0);

  BooleanAlgebrasAge bools;
  auto b = has_weakly_initial(bools, 16);
  REQUIRE(b.has_value());
  CHECK((*b)->size() == 2);

  auto colors = two_colors_age();
  CHECK(!has_weakly_initial(colors, 1).has_value());
}

TEST_CASE("weakly initial plus amalgamation implies joint embedding within bound") {
  SimpleGraphsAge graphs;
  bool wi = has_weakly_initial(graphs, 3).has_value();
  bool ap = check_amalgamation(graphs, 3, 6).outcome == Outcome::Holds;
  bool jep = check_jep(graphs, 3, 6).outcome == Outcome::Holds;
  CHECK(wi);
  CHECK(ap);
  CHECK((!wi || !ap || jep));
}

TEST_CASE("dominating families") {
  SimpleGraphsAge graphs;
  SUBCASE("all arrows between representatives up to 4 dominate up to 4") {
    std::vector<Embedding> F;
    auto reps = graphs.members_up_to(4);
    for (const auto& a : reps)
      for (const auto& b : reps)
        for (const auto& e : enumerate_embeddings(a, b)) F.push_back(e);
    auto v = check_dominating(graphs, F, 4);
    CHECK(v.outcome == Outcome::Holds);
  }
  SUBCASE("the empty family fails cofinality") {
    auto v = check_dominating(graphs, {}, 2);
    CHECK(v.outcome == Outcome::Fails);
    CHECK(!v.cofinality_violation.empty());
  }
  SUBCASE("the identity on one vertex alone fails absorption") {
    auto k1 = graphs.members_of_size(1)[0];
    std::vector<Embedding> F = {Embedding::identity(k1)};
    auto v = check_dominating(graphs, F, 2);
    CHECK(v.outcome == Outcome::Fails);
    CHECK(!v.absorption_violation.empty());
  }
}

TEST_CASE("bounded amalgamation agrees with the dual Ore condition on truncations") {
  // identical search spaces: spans over representatives with witnesses inside
  // the truncation vs cospans in the opposite category
  SimpleGraphsAge graphs;
  PureSetsAge sets;
  BooleanAlgebrasAge bools;
  const AgeClass* ages[] = {&graphs, &sets, &bools};
  int bounds[] = {2, 3, 2};
  for (int i = 0; i < 3; ++i) {
    auto cat = age_category(*ages[i], bounds[i]);
    cat.validate();
    bool ore = check_right_ore(opposite(cat)).holds;
    bool ap = check_amalgamation(*ages[i], bounds[i], bounds[i]).outcome == Outcome::Holds;
    CHECK(ore == ap);
  }
}

TEST_CASE("verdicts are deterministic") {
  SimpleGraphsAge graphs;
  auto v1 = check_amalgamation(graphs, 2, 4);
  auto v2 = check_amalgamation(graphs, 2, 4);
  CHECK(v1.outcome == v2.outcome);
  CHECK(v1.spans_checked == v2.spans_checked);
  CHECK(v1.witnesses_found == v2.witnesses_found);
}

TEST_CASE("extensional classes enforce their closure flag") {
  // auto-close completes the list
  ExtensionalAge closed("closed", graph_signature(), {share(make_graph(2, {{0, 1}}))},
                        /*auto_close=*/true);
  CHECK(closed.members_of_size(1).size() == 1);
  // reject mode refuses an unclosed list
  CHECK_THROWS_AS(ExtensionalAge("open", graph_signature(),
                                 {share(make_graph(2, {{0, 1}}))},
                                 /*auto_close=*/false),
                  AgeError);
}
