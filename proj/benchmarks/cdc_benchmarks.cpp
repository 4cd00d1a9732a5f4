#include <benchmark/benchmark.h>

#include <random>

#include "cdc/bounds.hpp"
#include "cdc/constructions.hpp"

namespace {

void BM_FieldMul(benchmark::State& state) {
  const cdc::Field f = cdc::Field::of_order(static_cast<std::uint64_t>(state.range(0)));
  std::mt19937 rng(1);
  std::vector<cdc::Field::Repr> xs(1024);
  for (auto& x : xs) x = rng() % f.order();
  cdc::Field::Repr acc = 1;
  for (auto _ : state) {
    for (auto x : xs) acc = f.add(f.mul(acc, x), 1);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * xs.size());
}
BENCHMARK(BM_FieldMul)->Arg(2)->Arg(256)->Arg(65536);

void BM_FieldMulNoTables(benchmark::State& state) {
  const cdc::Field f = cdc::Field::create(2, 24, cdc::kExtensionFieldCap);
  std::mt19937 rng(1);
  std::vector<cdc::Field::Repr> xs(256);
  for (auto& x : xs) x = rng() % f.order();
  cdc::Field::Repr acc = 1;
  for (auto _ : state) {
    for (auto x : xs) acc = f.add(f.mul(acc, x), 1);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * xs.size());
}
BENCHMARK(BM_FieldMulNoTables);

void BM_Rank(benchmark::State& state) {
  const cdc::Field f = cdc::Field::of_order(static_cast<std::uint64_t>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  std::mt19937 rng(2);
  cdc::Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, rng() % f.order());
  for (auto _ : state) benchmark::DoNotOptimize(cdc::rank(m));
}
BENCHMARK(BM_Rank)->Args({2, 16})->Args({2, 64})->Args({16, 32});

void BM_Gf2PackedRank(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (auto& r : rows) r = rng();
    benchmark::DoNotOptimize(cdc::gf2_rank(rows));
  }
}
BENCHMARK(BM_Gf2PackedRank)->Arg(8)->Arg(64);

void BM_DelsarteDistribution(benchmark::State& state) {
  const auto m = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdc::delsarte_rank_distribution({2, m, 6, 2}).total());
}
BENCHMARK(BM_DelsarteDistribution)->Arg(8)->Arg(40);

void BM_GabidulinEnumerate(benchmark::State& state) {
  const cdc::Field f = cdc::Field::prime(2);
  for (auto _ : state) benchmark::DoNotOptimize(cdc::mrd_code(f, 4, 4, 2).size());
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_GabidulinEnumerate)->Unit(benchmark::kMillisecond);

void BM_BuildParallelLinkage(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdc::build_parallel_linkage({2, 4, 4, 4, 4, 0, cdc::Orientation::Forward}).code.size());
  }
}
BENCHMARK(BM_BuildParallelLinkage)->Unit(benchmark::kMillisecond);

void BM_VerifyParallelLinkage(benchmark::State& state) {
  const auto built = cdc::build_parallel_linkage({2, 4, 4, 4, 4, 0, cdc::Orientation::Forward});
  const cdc::VerifyOptions opts{cdc::FullCheck{}, static_cast<unsigned>(state.range(0)), {}};
  for (auto _ : state) benchmark::DoNotOptimize(cdc::verify_cdc(built.code, 4, opts).ok);
  state.SetItemsProcessed(state.iterations() * 4622ll * 4621 / 2);
}
BENCHMARK(BM_VerifyParallelLinkage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1)->UseRealTime();

void BM_VerifyGenericField(benchmark::State& state) {
  const auto built = cdc::build_parallel_linkage({3, 2, 2, 2, 3, 1, cdc::Orientation::Forward});
  for (auto _ : state) benchmark::DoNotOptimize(cdc::verify_cdc(built.code, 2).ok);
  state.counters["words"] = static_cast<double>(built.code.size());
}
BENCHMARK(BM_VerifyGenericField)->Unit(benchmark::kMillisecond);

void BM_BestBound(benchmark::State& state) {
  const auto reg = cdc::KnownValueRegistry::shipped();
  const cdc::CdcParams p{2, static_cast<std::uint32_t>(state.range(0)), 4, 4};
  for (auto _ : state) benchmark::DoNotOptimize(cdc::best_bound(p, reg).value);
}
BENCHMARK(BM_BestBound)->Arg(13)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
