#include <doctest.h>

#include "pilekit/catalog.hpp"
#include "pilekit/pile.hpp"

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

}  // namespace

TEST_CASE("check_morphism") {
  auto c2 = cyclic_group(2);
  Pile reg = regular_pile(c2);
  SUBCASE("identity is valid") {
    auto m = check_morphism(reg, reg, GroupHom::identity(c2), {0, 1});
    CHECK(m.ok());
  }
  SUBCASE("constant map to a fixed point with trivial group map") {
    Pile fp = fixed_point_pile(c2);
    auto m = check_morphism(reg, fp, GroupHom::trivial(c2, c2), {0, 0});
    CHECK(m.ok());
  }
  SUBCASE("swap-breaking map is not equivariant") {
    auto m = check_morphism(reg, reg, GroupHom::identity(c2), {0, 0});
    REQUIRE_FALSE(m.ok());
    CHECK(m.failure->code == "NotEquivariant");
  }
}

TEST_CASE("check_epi") {
  auto c4 = cyclic_group(4);
  Pile reg = regular_pile(c4);
  SUBCASE("identity has the pointwise witness") {
    auto e = check_epi(PileMorphism::identity(reg));
    REQUIRE(e.ok());
    CHECK(e.value->witness == std::vector<Point>{0, 1, 2, 3});
  }
  SUBCASE("quotient projections are epimorphisms") {
    QuotientPile q = quotient_pile(reg, Subgroup(c4, {0, 2}));
    CHECK(q.pile.group->order() == 2);
    CHECK(q.pile.space->size() == 2);
    CHECK(check_epi(q.projection).ok());
  }
  SUBCASE("inclusion of a proper subpile fails on points") {
    // one fixed point into a two-fixed-point pile
    auto c2 = cyclic_group(2);
    Pile one = fixed_point_pile(c2);
    std::vector<std::vector<int>> two_fixed{{0, 0}, {1, 1}};
    Pile two(c2, GSet::validate(c2, two_fixed));
    PileMorphism inc(one, two, GroupHom::identity(c2), {0});
    auto e = check_epi(inc);
    REQUIRE_FALSE(e.ok());
    CHECK(e.failure->code == "NotSurjectiveOnPoints");
  }
}

TEST_CASE("check_rigid") {
  auto c2 = cyclic_group(2);
  SUBCASE("identity epi is rigid") {
    Pile reg = regular_pile(c2);
    CHECK(check_rigid(PileMorphism::identity(reg)).ok());
  }
  SUBCASE("collapsing a stabilizer is not rigid") {
    Pile fp = fixed_point_pile(c2);
    QuotientPile q = quotient_pile(fp, whole_subgroup(c2));
    auto r = check_rigid(q.projection);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failure->code == "StabilizerNotInjective");
  }
  SUBCASE("free kernel action gives a rigid quotient") {
    Pile reg = regular_pile(cyclic_group(4));
    QuotientPile q =
        quotient_pile(reg, Subgroup(cyclic_group(4), {0, 2}));
    // N = {0,2} meets the trivial stabilizers trivially
    QuotientPile q2 = quotient_pile(reg, Subgroup(reg.group, {0, 2}));
    CHECK(check_rigid(q2.projection).ok());
    (void)q;
  }
  SUBCASE("stabilizer landing below the target stabilizer is flagged") {
    // Y has a trivial-stabilizer point over a fixed point of X
    auto c2b = cyclic_group(2);
    std::vector<std::vector<int>> mixed{{0, 1}, {1, 0}, {2, 2}};
    Pile y(c2b, GSet::validate(c2b, mixed));
    Pile x = fixed_point_pile(c2b);
    PileMorphism m(y, x, GroupHom::identity(c2b), {0, 0, 0});
    auto e = check_epi(m);
    REQUIRE(e.ok());
    auto r = check_rigid(m, *e.value);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failure->code == "StabilizerNotOnto");
  }
}

TEST_CASE("standard_extension") {
  auto c2 = cyclic_group(2);
  auto c4 = cyclic_group(4);
  SUBCASE("whole subgroup gives one fixed point") {
    auto ext = standard_extension(c2, {{"t", whole_subgroup(c2)}});
    CHECK(ext.pile.space->size() == 1);
    CHECK(stabilizer(*ext.pile.space, 0).order() == 2);
  }
  SUBCASE("trivial subgroup gives the regular orbit") {
    auto ext = standard_extension(c2, {{"t", trivial_subgroup(c2)}});
    CHECK(ext.pile.space->size() == 2);
    CHECK(stabilizer(*ext.pile.space, 0).order() == 1);
  }
  SUBCASE("index-two subgroup of C4") {
    auto ext = standard_extension(c4, {{"t", Subgroup(c4, {0, 2})}});
    CHECK(ext.pile.space->size() == 2);
    for (Point t = 0; t < 2; ++t)
      CHECK(stabilizer(*ext.pile.space, t).members() ==
            std::vector<Elem>{0, 2});
  }
  SUBCASE("base points carry exactly the given subgroups") {
    auto d4 = dihedral_group(4);
    std::vector<std::pair<std::string, Subgroup>> reps;
    for (const auto& s : all_subgroups(d4))
      reps.emplace_back("x" + std::to_string(reps.size()), s);
    auto ext = standard_extension(d4, reps);
    REQUIRE(ext.base_points.size() == reps.size());
    auto orbits = ext.pile.space->orbits();
    CHECK(orbits.size() == reps.size());
    for (size_t i = 0; i < reps.size(); ++i)
      CHECK(stabilizer(*ext.pile.space, ext.base_points[i]).members() ==
            reps[i].second.members());
  }
}

TEST_CASE("quotient_pile") {
  auto c4 = cyclic_group(4);
  Pile reg = regular_pile(c4);
  SUBCASE("trivial kernel: isomorphic pile") {
    QuotientPile q = quotient_pile(reg, trivial_subgroup(c4));
    CHECK(same_pile(q.pile, reg));
  }
  SUBCASE("full kernel: one point per orbit, trivial group") {
    QuotientPile q = quotient_pile(reg, whole_subgroup(c4));
    CHECK(q.pile.group->order() == 1);
    CHECK(q.pile.space->size() == 1);
  }
  SUBCASE("C4 regular by the order-2 subgroup") {
    QuotientPile q = quotient_pile(reg, Subgroup(c4, {0, 2}));
    CHECK(q.pile.group->order() == 2);
    CHECK(q.pile.space->size() == 2);
    CHECK(check_rigid(q.projection).ok());
  }
}

TEST_CASE("tilde_closure") {
  auto c2 = cyclic_group(2);
  SUBCASE("free action: trivial") {
    Pile reg = regular_pile(c2);
    CHECK(tilde_closure(reg, whole_subgroup(c2)).order() == 1);
  }
  SUBCASE("fixed point with full kernel") {
    Pile fp = fixed_point_pile(c2);
    CHECK(tilde_closure(fp, whole_subgroup(c2)).order() == 2);
  }
  SUBCASE("subgroup containing all stabilizers") {
    auto d4 = dihedral_group(4);
    auto ext = standard_extension(d4, {{"a", Subgroup(d4, {0, 2})}});
    auto t = tilde_closure(ext.pile, whole_subgroup(d4));
    CHECK(t.members() == normal_closure(d4, {2}).members());
  }
}

TEST_CASE("fiber_product") {
  auto c2 = cyclic_group(2);
  Pile reg = regular_pile(c2);
  Pile fp = fixed_point_pile(cyclic_group(1));
  SUBCASE("identity second leg: isomorphic to the first source") {
    PileMorphism alpha = PileMorphism::identity(reg);
    FiberProduct f = fiber_product(alpha, PileMorphism::identity(reg));
    CHECK(f.pile.group->order() == 2);
    CHECK(f.pile.space->size() == 2);
    // the projection onto the first source is an isomorphism
    CHECK(f.to_first.group_map().is_injective());
    CHECK(f.to_first.group_map().is_surjective());
    CHECK(check_rigid(f.to_first).ok());
  }
  SUBCASE("C2 x_1 C2 over the trivial pile") {
    PileMorphism alpha(reg, fp, GroupHom::trivial(c2, fp.group), {0, 0});
    PileMorphism phi0(reg, fp, GroupHom::trivial(c2, fp.group), {0, 0});
    FiberProduct f = fiber_product(alpha, phi0);
    CHECK(f.pile.group->order() == 4);
    CHECK(f.pile.space->size() == 4);
  }
  SUBCASE("mismatched targets are rejected") {
    PileMorphism alpha = PileMorphism::identity(reg);
    PileMorphism other = PileMorphism::identity(fp);
    CHECK_THROWS_WITH_AS(fiber_product(alpha, other),
                         doctest::Contains("MismatchedTarget"), Error);
  }
}

TEST_CASE("connect") {
  auto c4 = cyclic_group(4);
  Pile reg = regular_pile(c4);
  QuotientPile q = quotient_pile(reg, Subgroup(c4, {0, 2}));
  SUBCASE("psi = identity gives back phi") {
    PileMorphism alpha = connect(q.projection, PileMorphism::identity(reg));
    CHECK(alpha.group_map().map() == q.projection.group_map().map());
    CHECK(alpha.space_map() == q.projection.space_map());
  }
  SUBCASE("factoring through the quotient") {
    // phi: reg -> trivial pile factors through the quotient pile
    Pile triv = fixed_point_pile(cyclic_group(1));
    PileMorphism phi(reg, triv, GroupHom::trivial(c4, triv.group),
                     {0, 0, 0, 0});
    PileMorphism alpha = connect(phi, q.projection);
    for (Elem e = 0; e < q.pile.group->order(); ++e)
      CHECK(alpha.on_elem(e) == 0);
  }
  SUBCASE("kernel violation is reported with a witness") {
    // phi injective, psi collapsing
    PileMorphism phi = PileMorphism::identity(reg);
    CHECK_THROWS_WITH_AS(connect(phi, q.projection),
                         doctest::Contains("KernelNotContained"), Error);
  }
  SUBCASE("solutions through an epi are unique") {
    Pile triv = fixed_point_pile(cyclic_group(1));
    PileMorphism phi(reg, triv, GroupHom::trivial(c4, triv.group),
                     {0, 0, 0, 0});
    PileMorphism alpha = connect(phi, q.projection);
    // enumerate all morphisms from the quotient pile to the trivial pile
    int matching = 0;
    for (const auto& h : enumerate_homs(q.pile.group, triv.group)) {
      std::vector<Point> sm(q.pile.space->size(), 0);
      auto cand = check_morphism(q.pile, triv, h, sm);
      if (!cand.ok()) continue;
      bool commutes = true;
      for (Elem e = 0; e < c4->order(); ++e)
        if (cand.value->on_elem(q.projection.on_elem(e)) != phi.on_elem(e))
          commutes = false;
      for (Point t = 0; t < reg.space->size(); ++t)
        if (cand.value->on_point(q.projection.on_point(t)) !=
            phi.on_point(t))
          commutes = false;
      if (commutes) ++matching;
    }
    CHECK(matching == 1);
  }
}

TEST_CASE("decompose") {
  auto d4 = dihedral_group(4);
  auto ext = standard_extension(
      d4, {{"a", Subgroup(d4, {0, 2})}, {"b", trivial_subgroup(d4)}});
  Pile src = ext.pile;
  // phi onto the quotient pile by the center
  QuotientPile q = quotient_pile(src, Subgroup(d4, {0, 2}));
  SUBCASE("trivial bound: injective group map") {
    Decomposition d =
        decompose(q.projection, trivial_subgroup(d4),
                  Partition::one_block(src.space));
    CHECK(d.psi.group_map().is_injective());
    CHECK(check_epi(d.psi).ok());
    // alpha connects
    for (Elem e = 0; e < d4->order(); ++e)
      CHECK(d.alpha.on_elem(d.psi.on_elem(e)) == q.projection.on_elem(e));
  }
  SUBCASE("singleton partition: injective space map") {
    Decomposition d = decompose(q.projection, whole_subgroup(d4),
                                Partition::singletons(src.space));
    std::vector<bool> seen(d.through.space->size(), false);
    for (Point t = 0; t < src.space->size(); ++t) {
      CHECK_FALSE(seen[d.psi.on_point(t)]);
      seen[d.psi.on_point(t)] = true;
    }
  }
  SUBCASE("postconditions on a generic instance") {
    Partition x(src.space, {{0, 1, 2, 3}, {4, 5}, {6, 7, 8, 9, 10, 11}});
    Decomposition d = decompose(q.projection, whole_subgroup(d4), x);
    CHECK(check_epi(d.psi).ok());
    // kernel inside n0 (the whole group: trivially true); fibers refine x
    for (Point a = 0; a < src.space->size(); ++a)
      for (Point b = 0; b < src.space->size(); ++b)
        if (d.psi.on_point(a) == d.psi.on_point(b))
          CHECK(x.block_of(a) == x.block_of(b));
    // fibers refine phi's fibers
    for (Point a = 0; a < src.space->size(); ++a)
      for (Point b = 0; b < src.space->size(); ++b)
        if (d.psi.on_point(a) == d.psi.on_point(b))
          CHECK(q.projection.on_point(a) == q.projection.on_point(b));
    // and alpha . psi = phi on both legs
    for (Elem e = 0; e < d4->order(); ++e)
      CHECK(d.alpha.on_elem(d.psi.on_elem(e)) == q.projection.on_elem(e));
    for (Point t = 0; t < src.space->size(); ++t)
      CHECK(d.alpha.on_point(d.psi.on_point(t)) == q.projection.on_point(t));
  }
}

TEST_CASE("separate_fibers") {
  auto c2 = cyclic_group(2);
  SUBCASE("injective point map: the source itself works") {
    Pile reg = regular_pile(c2);
    FiberSeparation f = separate_fibers(PileMorphism::identity(reg));
    for (Point a = 0; a < f.through.space->size(); ++a)
      for (Point b = 0; b < f.through.space->size(); ++b) {
        if (f.phi0.on_point(a) == f.phi0.on_point(b)) continue;
        auto sa = stabilizer(*f.through.space, a);
        auto sb = stabilizer(*f.through.space, b);
        auto meet = intersect(sa, sb);
        for (Elem e : meet.members()) CHECK(f.phi0.on_elem(e) == 0);
      }
  }
  SUBCASE("free action collapsed to a point") {
    Pile reg = regular_pile(c2);
    Pile triv = fixed_point_pile(cyclic_group(1));
    PileMorphism phi(reg, triv, GroupHom::trivial(c2, triv.group), {0, 0});
    FiberSeparation f = separate_fibers(phi);
    CHECK(check_epi(f.phi_hat).ok());
  }
  SUBCASE("overlapping stabilizers are rejected") {
    Pile fp(c2, GSet::validate(c2, {{0, 0}, {1, 1}}));
    Pile triv = fixed_point_pile(cyclic_group(1));
    PileMorphism phi(fp, triv, GroupHom::trivial(c2, triv.group), {0, 0});
    CHECK_THROWS_WITH_AS(separate_fibers(phi),
                         doctest::Contains("StabilizersNotDisjoint"), Error);
  }
}
