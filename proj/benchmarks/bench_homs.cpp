#include <benchmark/benchmark.h>

#include "pilekit/catalog.hpp"

using namespace pilekit;

static void BM_EnumerateHoms(benchmark::State& state) {
  auto d4 = dihedral_group(4);
  auto q8 = generalized_quaternion(2);
  for (auto _ : state) {
    auto hs = enumerate_homs(d4, q8);
    benchmark::DoNotOptimize(hs.size());
  }
}
BENCHMARK(BM_EnumerateHoms);

static void BM_HomCountPhnn(benchmark::State& state) {
  auto c4 = cyclic_group(4);
  auto ext = standard_extension(c4, {{"a", Subgroup(c4, {0, 2})},
                                     {"b", trivial_subgroup(c4)}});
  Presentation phnn = build_phnn(ext.pile, GroupHom::identity(c4));
  auto q = dihedral_group(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hom_count(phnn, q));
  }
}
BENCHMARK(BM_HomCountPhnn);

static void BM_HomProfileCatalog(benchmark::State& state) {
  auto c2 = cyclic_group(2);
  Presentation p = free_product({presentation_of_group(dihedral_group(4)),
                                 presentation_of_group(c2),
                                 free_letters_presentation(1)});
  auto cat = catalog_p3(2);
  for (auto _ : state) {
    auto prof = hom_profile(p, cat);
    benchmark::DoNotOptimize(prof.entries.size());
  }
}
BENCHMARK(BM_HomProfileCatalog);
