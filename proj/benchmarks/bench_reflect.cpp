#include <benchmark/benchmark.h>

#include "reflect/comparator.hpp"
#include "reflect/normal_form.hpp"
#include "reflect/rules.hpp"

namespace {

using namespace reflect;

void BM_Saturate(benchmark::State& state) {
  const Universe u(enumerate_patterns(static_cast<std::size_t>(state.range(0))));
  std::size_t facts = 0;
  for (auto _ : state) {
    const FactBase fb = saturate(u);
    facts = fb.size();
    benchmark::DoNotOptimize(facts);
  }
  state.counters["universe"] = static_cast<double>(u.size());
  state.counters["facts"] = static_cast<double>(facts);
}
BENCHMARK(BM_Saturate)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_ToTwoNF(benchmark::State& state) {
  std::vector<Pattern> ps;
  for (const Pattern& p : enumerate_patterns(static_cast<std::size_t>(state.range(0)))) {
    if (!contains_sigma_sigma(p)) ps.push_back(p);
  }
  for (auto _ : state) {
    for (const Pattern& p : ps) benchmark::DoNotOptimize(to_two_nf(p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ps.size()));
}
BENCHMARK(BM_ToTwoNF)->Arg(6)->Arg(8);

void BM_CompareLinear(benchmark::State& state) {
  const std::vector<Pattern> ps = enumerate_patterns(8, true);
  CompareOptions o;
  o.use_prover = false;
  for (auto _ : state) {
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
      benchmark::DoNotOptimize(compare(ps[i], ps[i + 1], o));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ps.size() - 1));
}
BENCHMARK(BM_CompareLinear);

void BM_CompareOpenBranch(benchmark::State& state) {
  const Pattern a = parse("s(s&pp)"), b = parse("ss");
  for (auto _ : state) benchmark::DoNotOptimize(compare(a, b));
}
BENCHMARK(BM_CompareOpenBranch)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
