// Serial reference against OpenMP kernels. Argument 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "bell/catalog.hpp"
#include "bell/equivalence.hpp"
#include "bell/local_polytope.hpp"
#include "bell/qubit.hpp"
#include "bell/robustness.hpp"
#include "bell/search.hpp"

using namespace bell;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

std::vector<BellFunctional> random_batch(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Coeff> d(-3, 3);
  std::vector<BellFunctional> out;
  for (std::size_t i = 0; i < n; ++i) {
    BellFunctional f(Scenario(4, 4));
    for (auto& v : f.alice_marg) v = d(rng);
    for (auto& v : f.bob_marg) v = d(rng);
    for (auto& v : f.corr) v = d(rng);
    out.push_back(std::move(f));
  }
  return out;
}

void BM_LocalBounds(benchmark::State& st) {
  const auto batch = random_batch(20000);
  for (auto _ : st) benchmark::DoNotOptimize(local_bounds(batch, exec_of(st)));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(batch.size()));
}

void BM_CanonicalForm(benchmark::State& st) {
  const auto& f = catalog_get("I4422_7").functional;
  for (auto _ : st) benchmark::DoNotOptimize(canonical_form(f, exec_of(st)));
}

void BM_Seesaw(benchmark::State& st) {
  SeesawOptions o;
  o.restarts = 16;
  o.seed = 1;
  o.exec = exec_of(st);
  const auto& f = catalog_get("A5").functional;
  for (auto _ : st) benchmark::DoNotOptimize(seesaw_maximize(f, o).value);
}

void BM_EtaThreshold(benchmark::State& st) {
  EtaOptions o;
  o.seesaw.restarts = 8;
  o.seesaw.seed = 1;
  o.seesaw.exec = exec_of(st);
  const auto& f = catalog_get("I3322").functional;
  for (auto _ : st) benchmark::DoNotOptimize(eta_threshold_symmetric(f, M_PI / 4, o));
}

void BM_RandomSearch(benchmark::State& st) {
  SearchConfig c;
  c.mode = SearchMode::random;
  c.sample_count = 20000;
  c.seed = 1;
  c.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(run_search(c).tight_count);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(c.sample_count));
}

} // namespace

BENCHMARK(BM_LocalBounds)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalForm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Seesaw)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EtaThreshold)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
