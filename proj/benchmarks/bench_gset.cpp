#include <benchmark/benchmark.h>

#include "pilekit/catalog.hpp"
#include "pilekit/gset.hpp"

using namespace pilekit;

static void BM_AlignedPartition(benchmark::State& state) {
  auto d4 = dihedral_group(4);
  auto ext = standard_extension(d4, {{"a", Subgroup(d4, {0, 2})},
                                     {"b", Subgroup(d4, {0, 4})},
                                     {"c", trivial_subgroup(d4)}});
  Partition p = Partition::one_block(ext.pile.space);
  for (auto _ : state) {
    auto a = stabilizer_aligned_g_partition(p);
    benchmark::DoNotOptimize(a.partition.block_count());
  }
}
BENCHMARK(BM_AlignedPartition);

static void BM_RefineToGPartition(benchmark::State& state) {
  auto q8 = generalized_quaternion(2);
  std::vector<std::vector<int>> act(8, std::vector<int>(8));
  for (int t = 0; t < 8; ++t)
    for (Elem e = 0; e < 8; ++e) act[t][e] = q8->mul(t, e);
  auto s = GSet::validate(q8, act);
  Partition p(s, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  for (auto _ : state) {
    auto r = refine_to_g_partition(p);
    benchmark::DoNotOptimize(r.block_count());
  }
}
BENCHMARK(BM_RefineToGPartition);

BENCHMARK_MAIN();
