#include <doctest.h>

#include <random>

#include "pilekit/catalog.hpp"
#include "pilekit/presentation.hpp"

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

// the naive counting oracle: full product over factor homs and letter
// tuples, every relator evaluated directly
unsigned long long naive_count(const Presentation& p, const GroupPtr& q) {
  std::vector<std::vector<GroupHom>> fh;
  for (const auto& f : p.factors) fh.push_back(enumerate_homs(f, q));
  std::vector<size_t> fidx(p.factors.size(), 0);
  unsigned long long total = 0;
  auto eval = [&](const std::vector<Elem>& letters) {
    for (const Word& w : p.relators) {
      Elem acc = 0;
      for (const Letter& l : w) {
        Elem v = l.kind == Letter::Kind::FactorElem
                     ? fh[l.a][fidx[l.a]](l.b)
                     : (l.b == 1 ? letters[l.a] : q->inv(letters[l.a]));
        acc = q->mul(acc, v);
      }
      if (acc != 0) return false;
    }
    return true;
  };
  std::function<void(size_t)> factors = [&](size_t f) {
    if (f == p.factors.size()) {
      std::vector<Elem> letters(p.free_letters, 0);
      std::function<void(int)> go = [&](int l) {
        if (l == p.free_letters) {
          if (eval(letters)) ++total;
          return;
        }
        for (Elem v = 0; v < q->order(); ++v) {
          letters[l] = v;
          go(l + 1);
        }
      };
      go(0);
      return;
    }
    for (fidx[f] = 0; fidx[f] < fh[f].size(); ++fidx[f]) factors(f + 1);
  };
  factors(0);
  return total;
}

}  // namespace

TEST_CASE("free_product") {
  Presentation c2 = presentation_of_group(cyclic_group(2));
  SUBCASE("single part is itself") {
    Presentation p = free_product({c2});
    CHECK(p.factors.size() == 1);
    CHECK(p.free_letters == 0);
  }
  SUBCASE("two trivial parts") {
    Presentation t = presentation_of_group(cyclic_group(1));
    Presentation p = free_product({t, t});
    CHECK(hom_count(p, cyclic_group(8)) == 1);
  }
  SUBCASE("C2 * C2 has two factors and no relators") {
    Presentation p = free_product({c2, c2});
    CHECK(p.factors.size() == 2);
    CHECK(p.relators.empty());
    CHECK(hom_count(p, cyclic_group(4)) == 4);
  }
}

TEST_CASE("hom_count basics") {
  Presentation c2 = presentation_of_group(cyclic_group(2));
  CHECK(hom_count(c2, cyclic_group(2)) == 2);
  Presentation letter = free_letters_presentation(1);
  for (int n : {1, 2, 3, 8})
    CHECK(hom_count(letter, cyclic_group(n)) ==
          static_cast<unsigned long long>(n));
}

TEST_CASE("hom_count with unit propagation matches the naive oracle") {
  std::mt19937_64 rng(11);
  auto cat = catalog_p3(2);
  for (int trial = 0; trial < 30; ++trial) {
    Presentation p;
    int nf = 1 + rng() % 2;
    for (int f = 0; f < nf; ++f) {
      const auto& e = cat[rng() % 4 + 1];  // orders 2 and 4
      p.factors.push_back(e.group);
      p.factor_labels.push_back(e.name);
    }
    p.free_letters = 1 + rng() % 2;
    int nrel = rng() % 3;
    for (int r = 0; r < nrel; ++r) {
      Word w;
      int len = 1 + rng() % 4;
      for (int i = 0; i < len; ++i) {
        if (rng() % 2 == 0) {
          int f = rng() % nf;
          w.push_back(Letter::factor(f, rng() % p.factors[f]->order()));
        } else {
          w.push_back(Letter::free(rng() % p.free_letters,
                                   rng() % 2 == 0 ? 1 : -1));
        }
      }
      p.relators.push_back(std::move(w));
    }
    for (const auto& q : {cyclic_group(2), cyclic_group(4),
                          dihedral_group(4)})
      CHECK(hom_count(p, q) == naive_count(p, q));
  }
}

TEST_CASE("build_hnn") {
  auto c2 = cyclic_group(2);
  SUBCASE("no stable letters: the base alone") {
    Presentation p = build_hnn(c2, {});
    CHECK(p.factors.size() == 1);
    CHECK(p.free_letters == 0);
  }
  SUBCASE("trivial associated subgroup: a free letter, no relators") {
    Presentation p =
        build_hnn(c2, {StableLetter{"t", trivial_subgroup(c2), {0}}});
    CHECK(p.free_letters == 1);
    CHECK(p.relators.empty());
  }
  SUBCASE("identity phi on C2: the centralizing relator") {
    Presentation p =
        build_hnn(c2, {StableLetter{"t", whole_subgroup(c2), {0, 1}}});
    REQUIRE(p.relators.size() == 1);
    // counts match Hom(C2 x C, Q) truncated at exponent 8: C2 x C8
    auto direct = presentation_of_group(
        direct_product(cyclic_group(2), cyclic_group(8)));
    for (const auto& e : catalog_p3(2))
      CHECK(hom_count(p, e.group) == hom_count(direct, e.group));
  }
  SUBCASE("non-injective phi is rejected") {
    CHECK_THROWS_WITH_AS(
        build_hnn(c2, {StableLetter{"t", whole_subgroup(c2), {0, 0}}}),
        doctest::Contains("PhiNotInjective"), Error);
  }
}

TEST_CASE("build_hnn_prime") {
  auto c2 = cyclic_group(2);
  SUBCASE("no stable letters: G * L") {
    Presentation p = build_hnn_prime(c2, {}, GroupHom::identity(c2), c2);
    CHECK(p.factors.size() == 2);
    CHECK(p.relators.empty());
  }
  SUBCASE("rho must embed the listed subgroups") {
    CHECK_THROWS_WITH_AS(
        build_hnn_prime(c2, {StableLabel{"t", whole_subgroup(c2)}},
                        GroupHom::trivial(c2, c2), c2),
        doctest::Contains("RhoNotInjectiveOn"), Error);
  }
  SUBCASE("trivial G: L * F(T0)") {
    auto c1 = cyclic_group(1);
    Presentation p = build_hnn_prime(
        c1, {StableLabel{"a", whole_subgroup(c1)},
             StableLabel{"b", whole_subgroup(c1)}},
        GroupHom::trivial(c1, c2), c2);
    CHECK(p.free_letters == 2);
    for (const auto& e : catalog_p3(2)) {
      auto expect = hom_count(free_product({presentation_of_group(c2),
                                            free_letters_presentation(2)}),
                              e.group);
      CHECK(hom_count(p, e.group) == expect);
    }
  }
}

TEST_CASE("build_phnn") {
  auto c2 = cyclic_group(2);
  SUBCASE("empty space: G * L with no relators") {
    Pile empty(c2, GSet::validate(c2, {}));
    Presentation p = build_phnn(empty, GroupHom::identity(c2));
    CHECK(p.factors.size() == 2);
    CHECK(p.free_letters == 0);
    CHECK(p.relators.empty());
  }
  SUBCASE("trivial group acting on n points: L * F(n)") {
    auto c1 = cyclic_group(1);
    Pile pts(c1, GSet::validate(c1, {{0}, {1}, {2}}));
    Presentation p = build_phnn(pts, GroupHom::trivial(c1, c2));
    Presentation expect = free_product(
        {presentation_of_group(c2), free_letters_presentation(3)});
    for (const auto& e : catalog_p3(2))
      CHECK(hom_count(p, e.group) == hom_count(expect, e.group));
  }
  SUBCASE("C2 regular, rho = id: eliminating a letter leaves C2 * C2 * F(1)") {
    Pile reg = regular_pile(c2);
    Presentation p = build_phnn(reg, GroupHom::identity(c2));
    Presentation expect = free_product(
        {presentation_of_group(c2), presentation_of_group(c2),
         free_letters_presentation(1)});
    for (const auto& e : catalog_p3(2))
      CHECK(hom_count(p, e.group) == hom_count(expect, e.group));
  }
  SUBCASE("rho must embed every point stabilizer") {
    Pile fp = fixed_point_pile(c2);
    CHECK_THROWS_WITH_AS(build_phnn(fp, GroupHom::trivial(c2, c2)),
                         doctest::Contains("RhoNotInjectiveOn"), Error);
  }
}

TEST_CASE("hnn_to_phnn_kernel") {
  auto c2 = cyclic_group(2);
  SUBCASE("trivial action: words restate the existing relations") {
    Pile fp = fixed_point_pile(c2);
    auto words = hnn_to_phnn_kernel(fp, {0}, GroupHom::identity(c2));
    CHECK(words.size() == 2);  // one per group element
    // appending them to the full HNN' does not change the profile
    Presentation full = build_hnn_prime(
        c2, {StableLabel{"t0", whole_subgroup(c2)}},
        GroupHom::identity(c2), c2);
    Presentation phnn = build_phnn(fp, GroupHom::identity(c2));
    for (const auto& e : catalog_p3(2))
      CHECK(hom_count(quotient_by_closure(full, words), e.group) ==
            hom_count(phnn, e.group));
  }
  SUBCASE("regular action with all points as letters") {
    Pile reg = regular_pile(c2);
    auto words = hnn_to_phnn_kernel(reg, {0, 1}, GroupHom::identity(c2));
    CHECK(words.size() == 4);
    int nontrivial = 0;
    for (const Word& w : words) {
      // a word is nontrivial when it links two distinct letters
      int first = -1;
      bool links = false;
      for (const Letter& l : w)
        if (l.kind == Letter::Kind::Free) {
          if (first < 0)
            first = l.a;
          else if (l.a != first)
            links = true;
        }
      if (links) ++nontrivial;
    }
    CHECK(nontrivial == 2);  // one per non-identity group element per point
  }
  SUBCASE("a transversal must cover every orbit") {
    Pile reg = regular_pile(c2);
    CHECK_THROWS_WITH_AS(hnn_to_phnn_kernel(reg, {}, GroupHom::identity(c2)),
                         doctest::Contains("NotTransversal"), Error);
  }
}

TEST_CASE("quotient_by_closure and mod_l_quotient") {
  auto c2 = cyclic_group(2);
  SUBCASE("no words: unchanged") {
    Presentation p = presentation_of_group(c2);
    CHECK(quotient_by_closure(p, {}).relators.empty());
  }
  SUBCASE("killing the free letters of L * F(n) leaves L") {
    Presentation p = free_product(
        {presentation_of_group(c2), free_letters_presentation(2)});
    std::vector<Word> words{{Letter::free(0, 1)}, {Letter::free(1, 1)}};
    Presentation q = quotient_by_closure(p, words);
    for (const auto& e : catalog_p3(2))
      CHECK(hom_count(q, e.group) ==
            hom_count(presentation_of_group(c2), e.group));
  }
  SUBCASE("mod-L on the one-fixed-point pHNN gives one free letter") {
    Pile fp = fixed_point_pile(c2);
    Presentation phnn = build_phnn(fp, GroupHom::identity(c2));
    Presentation modl = mod_l_quotient(phnn, 1);
    for (const auto& e : catalog_p3(2))
      CHECK(hom_count(modl, e.group) ==
            static_cast<unsigned long long>(e.group->order()));
  }
  SUBCASE("bad factor index") {
    Presentation p = presentation_of_group(c2);
    CHECK_THROWS_WITH_AS(mod_l_quotient(p, 5),
                         doctest::Contains("BadFactorIndex"), Error);
  }
  SUBCASE("invalid words are rejected") {
    Presentation p = presentation_of_group(c2);
    CHECK_THROWS_WITH_AS(
        quotient_by_closure(p, {{Letter::free(0, 1)}}),
        doctest::Contains("InvalidWord"), Error);
  }
}

TEST_CASE("induced_hom") {
  auto c2 = cyclic_group(2);
  Pile reg = regular_pile(c2);
  GroupHom id = GroupHom::identity(c2);
  SUBCASE("identity everywhere") {
    PresentationHom h = induced_hom(PhnnData{reg, id}, PhnnData{reg, id},
                                    PileMorphism::identity(reg), id);
    CHECK(h.factor_maps.size() == 2);
    CHECK(h.free_images.size() == 2);
    CHECK(h.free_images[0] == Word{Letter::free(0, 1)});
  }
  SUBCASE("quotient pile morphism induces a map onto the quotient pHNN") {
    auto c4 = cyclic_group(4);
    Pile reg4 = regular_pile(c4);
    QuotientPile q = quotient_pile(reg4, Subgroup(c4, {0, 2}));
    GroupHom rho4 = GroupHom::identity(c4);
    GroupHom rho2 = GroupHom::identity(q.pile.group);
    PresentationHom h = induced_hom(
        PhnnData{reg4, rho4}, PhnnData{q.pile, rho2}, q.projection,
        q.projection.group_map());
    CHECK(h.free_images.size() == 4);
  }
  SUBCASE("non-commuting square is rejected") {
    CHECK_THROWS_WITH_AS(
        induced_hom(PhnnData{reg, id}, PhnnData{reg, id},
                    PileMorphism::identity(reg), GroupHom::trivial(c2, c2)),
        doctest::Contains("SquareDoesNotCommute"), Error);
  }
}

TEST_CASE("hom_count is multiplicative over free products") {
  std::mt19937_64 rng(5);
  auto cat = catalog_p3(2);
  for (int trial = 0; trial < 10; ++trial) {
    Presentation a = presentation_of_group(cat[rng() % cat.size()].group);
    Presentation b = free_product(
        {presentation_of_group(cat[rng() % 5].group),
         free_letters_presentation(static_cast<int>(rng() % 2))});
    Presentation ab = free_product({a, b});
    for (const auto& e : cat)
      CHECK(hom_count(ab, e.group) ==
            hom_count(a, e.group) * hom_count(b, e.group));
  }
}

TEST_CASE("hom_profile") {
  auto cat = catalog_p3(2);
  SUBCASE("trivial presentation counts one everywhere") {
    auto prof = hom_profile(presentation_of_group(cyclic_group(1)), cat);
    for (const auto& [name, count] : prof.entries) CHECK(count == 1);
  }
  SUBCASE("appending a trivial factor keeps the profile") {
    Presentation p = presentation_of_group(dihedral_group(4));
    Presentation q =
        free_product({p, presentation_of_group(cyclic_group(1))});
    CHECK(first_profile_mismatch(hom_profile(p, cat), hom_profile(q, cat)) ==
          -1);
  }
}
