#include <benchmark/benchmark.h>

#include "icsheaf/axioms.hpp"
#include "icsheaf/bundled.hpp"

using namespace icsheaf;

namespace {

const Field kQ = Field::rationals();

const BundledSpace& space(const std::string& name) {
  static std::map<std::string, BundledSpace> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_bundled(name, ICSHEAF_BENCH_CACHE)).first;
  return it->second;
}

void BM_ResolveConstant(benchmark::State& state, const std::string& name) {
  const auto& b = space(name);
  SheafComplex c = from_sheaf(make_local_system(kQ, SimplexSet::all(b.complex), 1), 0);
  for (auto _ : state) benchmark::DoNotOptimize(resolve(kQ, c).size());
}

void BM_BuildIc(benchmark::State& state, const std::string& name) {
  const auto& b = space(name);
  for (auto _ : state) benchmark::DoNotOptimize(build_ic(kQ, b.stratification, b.local).ic().size());
}

void BM_StalkTable(benchmark::State& state, const std::string& name) {
  const auto& b = space(name);
  InjectiveComplex ic = build_ic(kQ, b.stratification, b.local).ic();
  for (auto _ : state) benchmark::DoNotOptimize(ic.stalk_table(kQ).size());
}

void BM_CheckAx2(benchmark::State& state, const std::string& name) {
  const auto& b = space(name);
  InjectiveComplex ic = build_ic(kQ, b.stratification, b.local).ic();
  for (auto _ : state) benchmark::DoNotOptimize(check_ax2(kQ, ic, b.stratification).pass);
}

void BM_Filtration(benchmark::State& state, const std::string& name) {
  const auto& b = space(name);
  for (auto _ : state) benchmark::DoNotOptimize(compute_open_filtration(b.stratification).n);
}

int register_all() {
  for (const auto& name : bundled_names()) {
    benchmark::RegisterBenchmark(("resolve_constant/" + name).c_str(), BM_ResolveConstant, name);
    benchmark::RegisterBenchmark(("build_ic/" + name).c_str(), BM_BuildIc, name)->Unit(benchmark::kMillisecond);
    benchmark::RegisterBenchmark(("stalk_table/" + name).c_str(), BM_StalkTable, name)->Unit(benchmark::kMillisecond);
    benchmark::RegisterBenchmark(("check_ax2/" + name).c_str(), BM_CheckAx2, name)->Unit(benchmark::kMillisecond);
    benchmark::RegisterBenchmark(("filtration/" + name).c_str(), BM_Filtration, name);
  }
  return 0;
}

const int registered = register_all();

}  // namespace
BENCHMARK_MAIN();
