#include <doctest.h>

#include <random>

#include "pilekit/catalog.hpp"
#include "pilekit/embedding.hpp"

using namespace pilekit;

namespace {

Pile regular_pile(GroupPtr g) {
  std::vector<std::vector<int>> act(g->order(), std::vector<int>(g->order()));
  for (int t = 0; t < g->order(); ++t)
    for (Elem e = 0; e < g->order(); ++e) act[t][e] = g->mul(t, e);
  auto s = GSet::validate(g, act);
  return Pile(g, s);
}

Pile fixed_point_pile(GroupPtr g) {
  std::vector<std::vector<int>> act(1, std::vector<int>(g->order(), 0));
  return Pile(g, GSet::validate(g, act));
}

Pile trivial_pile() {
  auto c1 = cyclic_group(1);
  return Pile(c1, GSet::validate(c1, {{0}}));
}

}  // namespace

TEST_CASE("solve_pair_ep") {
  auto c2 = cyclic_group(2);
  auto c1 = cyclic_group(1);
  SUBCASE("alpha the identity: gamma equals phi") {
    PairEmbeddingProblem ep(c2, {whole_subgroup(c2)},
                            GroupHom::identity(c2), GroupHom::identity(c2),
                            {whole_subgroup(c2)}, {whole_subgroup(c2)});
    auto s = solve_pair_ep(ep);
    REQUIRE(s.solution.has_value());
    CHECK(s.solution->map() == std::vector<Elem>{0, 1});
  }
  SUBCASE("trivial source: the trivial solution") {
    PairEmbeddingProblem ep(c1, {}, GroupHom::trivial(c1, c2),
                            GroupHom::identity(c2), {}, {});
    auto s = solve_pair_ep(ep);
    REQUIRE(s.solution.has_value());
    CHECK(s.solution->map() == std::vector<Elem>{0});
  }
  SUBCASE("lexicographically first of several solutions") {
    // A trivial, B = C2, both maps trivial into A: trivial and identity
    // both solve; the trivial one comes first
    PairEmbeddingProblem ep(c2, {whole_subgroup(c2)},
                            GroupHom::trivial(c2, c1),
                            GroupHom::trivial(c2, c1),
                            {whole_subgroup(c2)}, {whole_subgroup(c1)});
    auto s = solve_pair_ep(ep);
    REQUIRE(s.solution.has_value());
    CHECK(s.solution->map() == std::vector<Elem>{0, 0});
    CHECK(s.candidates_examined == 1);
  }
  SUBCASE("problems without local lifts are rejected") {
    // family C2 cannot lift through a trivial familyB over A = C2
    auto mk = [&] {
      return PairEmbeddingProblem(c2, {whole_subgroup(c2)},
                                  GroupHom::identity(c2),
                                  GroupHom::identity(c2),
                                  {trivial_subgroup(c2)},
                                  {whole_subgroup(c2)});
    };
    CHECK_THROWS_WITH_AS(mk(), doctest::Contains("InvalidProblem"), Error);
  }
}

TEST_CASE("complete_to_pile_morphism") {
  auto c2 = cyclic_group(2);
  SUBCASE("single fixed point mapping into a stabilized point") {
    Pile src = fixed_point_pile(c2);
    Pile dst = fixed_point_pile(c2);
    Pile tp = trivial_pile();
    PileMorphism phi(src, tp, GroupHom::trivial(c2, tp.group), {0});
    PileMorphism alpha(dst, tp, GroupHom::trivial(c2, tp.group), {0});
    auto res = complete_to_pile_morphism(GroupHom::identity(c2), src, dst,
                                         phi, alpha);
    REQUIRE(res.morphism.has_value());
    CHECK(res.morphism->on_point(0) == 0);
  }
  SUBCASE("no stabilized target point: NoWitness with the violating point") {
    Pile src = fixed_point_pile(c2);
    Pile dst = regular_pile(c2);  // trivial stabilizers only
    Pile tp = trivial_pile();
    PileMorphism phi(src, tp, GroupHom::trivial(c2, tp.group), {0});
    PileMorphism alpha(dst, tp, GroupHom::trivial(c2, tp.group), {0, 0});
    auto res = complete_to_pile_morphism(GroupHom::identity(c2), src, dst,
                                         phi, alpha);
    CHECK_FALSE(res.morphism.has_value());
    CHECK(res.no_witness_point == 0);
  }
  SUBCASE("equivariant assignment along a free orbit") {
    Pile src = regular_pile(c2);
    Pile dst = regular_pile(c2);
    Pile tp = trivial_pile();
    PileMorphism phi(src, tp, GroupHom::trivial(c2, tp.group), {0, 0});
    PileMorphism alpha(dst, tp, GroupHom::trivial(c2, tp.group), {0, 0});
    auto res = complete_to_pile_morphism(GroupHom::identity(c2), src, dst,
                                         phi, alpha);
    REQUIRE(res.morphism.has_value());
    CHECK(res.morphism->on_point(1) ==
          dst.space->act(res.morphism->on_point(0), 1));
  }
}

TEST_CASE("solve_pile_ep_bruteforce") {
  auto c2 = cyclic_group(2);
  SUBCASE("alpha the identity: the solution is phi itself") {
    Pile reg = regular_pile(c2);
    Pile fp = fixed_point_pile(c2);
    // phi: fp <- nothing; use phi from reg to reg, alpha = id
    PileMorphism phi = PileMorphism::identity(reg);
    PileEmbeddingProblem ep(phi, PileMorphism::identity(reg));
    auto s = solve_pile_ep_bruteforce(ep);
    REQUIRE(s.solution.has_value());
    CHECK(s.solution->group_map().map() == phi.group_map().map());
    CHECK(s.solution->space_map() == phi.space_map());
    (void)fp;
  }
  SUBCASE("trivial groups, singleton spaces") {
    Pile tp = trivial_pile();
    PileEmbeddingProblem ep(PileMorphism::identity(tp),
                            PileMorphism::identity(tp));
    auto s = solve_pile_ep_bruteforce(ep);
    CHECK(s.solution.has_value());
  }
  SUBCASE("an unsolvable problem reports the candidates examined") {
    // lifting the identity C2 -> C2 through C4 -> C2 is impossible
    auto c4 = cyclic_group(4);
    Pile g = regular_pile(c2);
    Pile b = regular_pile(c4);
    Pile a = regular_pile(c2);
    PileMorphism phi = PileMorphism::identity(g);
    PileMorphism alpha(b, a, GroupHom(c4, c2, {0, 1, 0, 1}), {0, 1, 0, 1});
    PileEmbeddingProblem ep(phi, alpha);
    auto s = solve_pile_ep_bruteforce(ep);
    CHECK_FALSE(s.solution.has_value());
    CHECK(s.candidates_examined == 2);
  }
}

TEST_CASE("solve_basic_pile_ep") {
  auto c2 = cyclic_group(2);
  SUBCASE("single factor over the identity cover") {
    Pile a = fixed_point_pile(c2);
    PileMorphism alpha = PileMorphism::identity(a);
    auto rigid = check_rigid(alpha);
    REQUIRE(rigid.ok());
    BasicPile basic({{"x", c2}}, 0, 2);
    BasicPhi phi;
    phi.factor_homs.push_back(GroupHom::identity(c2));
    phi.label_points.push_back(0);
    BasicSolution s = solve_basic_pile_ep(basic, phi, a, alpha, *rigid.value);
    CHECK(s.factor_homs[0].map() == std::vector<Elem>{0, 1});
    CHECK(s.label_points[0] == 0);
  }
  SUBCASE("free generator takes the first preimage") {
    auto c4 = cyclic_group(4);
    Pile a = regular_pile(c2);
    Pile b = regular_pile(c4);
    PileMorphism alpha(b, a, GroupHom(c4, c2, {0, 1, 0, 1}), {0, 1, 0, 1});
    auto rigid = check_rigid(alpha);
    REQUIRE(rigid.ok());
    BasicPile basic({}, 1, 2);
    BasicPhi phi;
    phi.free_images.push_back(1);
    BasicSolution s = solve_basic_pile_ep(basic, phi, a, alpha, *rigid.value);
    CHECK(s.free_images[0] == 1);  // the first alpha-preimage of 1 in C4
  }
  SUBCASE("trivial target forces the trivial factor map") {
    Pile a = trivial_pile();
    Pile b = regular_pile(c2);
    PileMorphism alpha(b, a, GroupHom::trivial(c2, a.group), {0, 0});
    auto rigid = check_rigid(alpha);
    REQUIRE(rigid.ok());
    BasicPile basic({{"x", c2}}, 0, 2);
    BasicPhi phi;
    phi.factor_homs.push_back(GroupHom::trivial(c2, a.group));
    phi.label_points.push_back(0);
    BasicSolution s = solve_basic_pile_ep(basic, phi, a, alpha, *rigid.value);
    CHECK(s.factor_homs[0].map() == std::vector<Elem>{0, 0});
  }
  SUBCASE("a non-p-group factor is rejected") {
    CHECK_THROWS_WITH_AS(BasicPile({{"x", symmetric_group(3)}}, 0, 2),
                         doctest::Contains("InvalidProblem"), Error);
  }
}

TEST_CASE("quotient_ep_transfer") {
  auto c2 = cyclic_group(2);
  SUBCASE("trivial subgroup: nothing changes") {
    Pile reg = regular_pile(c2);
    PileEmbeddingProblem ep(PileMorphism::identity(reg),
                            PileMorphism::identity(reg));
    TransferredProblem t = quotient_ep_transfer(ep, trivial_subgroup(c2));
    CHECK(same_pile(t.quotient, reg));
  }
  SUBCASE("kernel containing all stabilizers trivializes the family") {
    auto d4 = dihedral_group(4);
    auto ext = standard_extension(d4, {{"a", Subgroup(d4, {0, 2})}});
    Pile src = ext.pile;
    QuotientPile q = quotient_pile(src, normal_closure(d4, {2}));
    PileEmbeddingProblem ep(q.projection, PileMorphism::identity(q.pile));
    TransferredProblem t = quotient_ep_transfer(ep, whole_subgroup(d4));
    for (Point p = 0; p < t.quotient.space->size(); ++p)
      CHECK(stabilizer(*t.quotient.space, p).order() == 1);
  }
  SUBCASE("solutions factor through the transfer") {
    auto c4 = cyclic_group(4);
    auto ext = standard_extension(c4, {{"a", Subgroup(c4, {0, 2})}});
    Pile src = ext.pile;
    QuotientPile q = quotient_pile(src, Subgroup(c4, {0, 2}));
    PileEmbeddingProblem ep(q.projection, PileMorphism::identity(q.pile));
    TransferredProblem t = quotient_ep_transfer(ep, Subgroup(c4, {0, 2}));
    // the transported problem is solvable and composes back
    PileEmbeddingProblem ep2(t.phi_factored, PileMorphism::identity(q.pile));
    auto s = solve_pile_ep_bruteforce(ep2);
    REQUIRE(s.solution.has_value());
    for (Elem e = 0; e < c4->order(); ++e)
      CHECK(s.solution->on_elem(t.projection.on_elem(e)) ==
            q.projection.on_elem(e));
  }
  SUBCASE("phi that does not kill the closure cannot transfer") {
    auto d4 = dihedral_group(4);
    auto ext = standard_extension(d4, {{"a", Subgroup(d4, {0, 2})}});
    Pile src = ext.pile;
    PileEmbeddingProblem ep(PileMorphism::identity(src),
                            PileMorphism::identity(src));
    CHECK_THROWS_WITH_AS(quotient_ep_transfer(ep, whole_subgroup(d4)),
                         doctest::Contains("DoesNotFactor"), Error);
  }
}

TEST_CASE("pile solvability implies pair solvability on disjoint stabilizers") {
  // the finite shadow of the pile-vs-group projectivity proposition
  std::mt19937_64 rng(23);
  auto cat = catalog_p3(2);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 12; ++trial) {
    GroupPtr g = cat[rng() % cat.size()].group;
    GroupPtr bg = cat[rng() % cat.size()].group;
    // G acts on a standard extension with pairwise disjoint stabilizers:
    // one orbit of a subgroup H where distinct points have distinct
    // conjugates intersecting trivially; free orbits always qualify
    Pile gp = regular_pile(g);
    Pile bp = regular_pile(bg);
    // alpha: quotient of bp by a normal subgroup acting freely
    std::vector<Subgroup> candidates;
    for (const auto& n : all_normal_subgroups(bg)) candidates.push_back(n);
    const Subgroup& k = candidates[rng() % candidates.size()];
    QuotientPile qa = quotient_pile(bp, k);
    if (!check_rigid(qa.projection).ok()) continue;
    const auto& homs = enumerate_homs(g, qa.pile.group);
    if (homs.empty()) continue;
    const GroupHom& hg = homs[rng() % homs.size()];
    // complete to a pile morphism if possible
    Pile tp = trivial_pile();
    PileMorphism phi_t(gp, tp, GroupHom::trivial(g, tp.group),
                       std::vector<Point>(gp.space->size(), 0));
    PileMorphism alpha_t(qa.pile, tp,
                         GroupHom::trivial(qa.pile.group, tp.group),
                         std::vector<Point>(qa.pile.space->size(), 0));
    auto made = complete_to_pile_morphism(hg, gp, qa.pile, phi_t, alpha_t);
    if (!made.morphism) continue;
    PileEmbeddingProblem ep(*made.morphism, qa.projection);
    auto pile_sol = solve_pile_ep_bruteforce(ep);
    if (!pile_sol.solution) continue;
    ++checked;
    // project to the pair problem and solve it
    std::vector<Subgroup> family, family_b, family_a;
    for (Point t = 0; t < gp.space->size(); ++t)
      family.emplace_back(g, stabilizer(*gp.space, t).members());
    for (Point y = 0; y < bp.space->size(); ++y)
      family_b.emplace_back(bg, stabilizer(*bp.space, y).members());
    for (Point x = 0; x < qa.pile.space->size(); ++x)
      family_a.emplace_back(qa.pile.group,
                            stabilizer(*qa.pile.space, x).members());
    PairEmbeddingProblem pair(g, family, made.morphism->group_map(),
                              qa.projection.group_map(), family_b, family_a);
    auto pair_sol = solve_pair_ep(pair);
    CHECK(pair_sol.solution.has_value());
  }
  CHECK(checked >= 5);
}
