#include <doctest.h>

#include "pilekit/json_io.hpp"
#include "pilekit/verify.hpp"

using namespace pilekit;

TEST_CASE("group JSON round trip and identity-zero enforcement") {
  auto d4 = dihedral_group(4);
  auto back = group_from_json(group_to_json(*d4));
  CHECK(same_table(*back, *d4));
  CHECK(back->name() == "D4");

  json shifted{{"order", 2}, {"mul", {{1, 0}, {0, 1}}}};
  CHECK_THROWS_WITH_AS(group_from_json(shifted),
                       doctest::Contains("NoIdentity"), Error);

  json mismatch{{"order", 3}, {"mul", {{0, 1}, {1, 0}}}};
  CHECK_THROWS_AS(group_from_json(mismatch), Error);
}

TEST_CASE("workspace resolves catalog names") {
  Workspace ws(2);
  CHECK(ws.resolve_group(json("C4"))->order() == 4);
  CHECK(ws.resolve_group(json("Q8"))->order() == 8);
  CHECK(ws.resolve_group(json("C16"))->order() == 16);
  CHECK_THROWS_AS(ws.resolve_group(json("NoSuchGroup")), Error);
  Workspace ws3(3);
  CHECK(ws3.resolve_group(json("He3"))->order() == 27);
}

TEST_CASE("pile and morphism JSON round trip") {
  Workspace ws(2);
  auto c2 = cyclic_group(2);
  json pj{{"group", "C2"},
          {"space", {{"size", 2}, {"action", {{0, 1}, {1, 0}}}}}};
  Pile p = ws.resolve_pile(pj);
  CHECK(p.space->size() == 2);
  Pile back = ws.resolve_pile(pile_to_json(p));
  CHECK(same_pile(p, back));

  PileMorphism id = PileMorphism::identity(p);
  PileMorphism m = morphism_from_json(morphism_to_json(id), p, p);
  CHECK(m.space_map() == id.space_map());
  (void)c2;
}

TEST_CASE("presentation JSON round trip") {
  Workspace ws(2);
  Presentation p;
  p.factors = {cyclic_group(2), cyclic_group(4)};
  p.factor_labels = {"a", "b"};
  p.free_letters = 2;
  p.free_labels = {"t", "u"};
  p.relators.push_back(Word{Letter::free(0, -1), Letter::factor(0, 1),
                            Letter::free(0, 1), Letter::factor(1, 3)});
  Presentation back = presentation_from_json(presentation_to_json(p), ws);
  CHECK(back.factors.size() == 2);
  CHECK(back.free_letters == 2);
  REQUIRE(back.relators.size() == 1);
  CHECK(back.relators[0] == p.relators[0]);
  for (const auto& e : catalog_p3(2))
    CHECK(hom_count(back, e.group) == hom_count(p, e.group));
}

TEST_CASE("partition JSON") {
  Workspace ws(2);
  auto s = ws.resolve_gset(
      json{{"group", "C2"}, {"size", 2}, {"action", {{0, 1}, {1, 0}}}});
  Partition p = partition_from_json(json{{"blocks", {{0, 1}}}}, s);
  CHECK(p.block_count() == 1);
  CHECK(partition_to_json(p).at("blocks").size() == 1);
  CHECK_THROWS_AS(
      partition_from_json(json{{"blocks", {{0}}}}, s), Error);
}

TEST_CASE("EP bundle round trip") {
  Workspace ws(2);
  json ep{{"G",
           {{"group", "C2"},
            {"space", {{"size", 2}, {"action", {{0, 1}, {1, 0}}}}}}},
          {"B",
           {{"group", "C2"},
            {"space", {{"size", 2}, {"action", {{0, 1}, {1, 0}}}}}}},
          {"A",
           {{"group", "C2"},
            {"space", {{"size", 2}, {"action", {{0, 1}, {1, 0}}}}}}},
          {"phi", {{"group_map", {0, 1}}, {"space_map", {0, 1}}}},
          {"alpha", {{"group_map", {0, 1}}, {"space_map", {0, 1}}}}};
  PileEmbeddingProblem problem = pile_ep_from_json(ep, ws);
  auto s = solve_pile_ep_bruteforce(problem);
  CHECK(s.solution.has_value());
  json back = pile_ep_to_json(problem);
  CHECK(back.contains("phi"));
}

TEST_CASE("reports serialize deterministically") {
  SuiteOptions opts;
  opts.count = 3;
  opts.seed = 42;
  opts.timestamp = false;
  Report a = run_suite("cartesian-rigid", opts);
  Report b = run_suite("cartesian-rigid", opts);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.failed == 0);
}

TEST_CASE("unknown suites are rejected") {
  SuiteOptions opts;
  CHECK_THROWS_WITH_AS(run_suite("no-such-suite", opts),
                       doctest::Contains("UnknownSuite"), Error);
}
