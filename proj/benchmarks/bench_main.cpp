#include <degenkit/curves.hpp>
#include <degenkit/galois.hpp>
#include <degenkit/monodromy.hpp>
#include <degenkit/normal_form.hpp>
#include <degenkit/random.hpp>

#include <benchmark/benchmark.h>

using namespace degenkit;

namespace {

void BM_SmithNormalForm(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(rng, n, n, 50);
  for (auto _ : state) benchmark::DoNotOptimize(smith_invariants(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_ComposeTrait(benchmark::State& state) {
  Rng rng(2);
  const DegenDatum d = random_datum(rng, {6, 4, 9});
  const TraitProfile t = random_transversal_profile(rng, d.branch_count());
  for (auto _ : state) benchmark::DoNotOptimize(component_group(compose_trait(d, t).pairing));
}
BENCHMARK(BM_ComposeTrait);

void BM_Analyze(benchmark::State& state) {
  Rng rng(3);
  const DegenDatum d = random_datum(rng, {6, 4, 9});
  for (auto _ : state) benchmark::DoNotOptimize(analyze(d));
}
BENCHMARK(BM_Analyze);

void BM_BuildRepAndStar(benchmark::State& state) {
  Rng rng(4);
  const DegenDatum d = random_datum(rng);
  for (auto _ : state) {
    const GaloisRep rep = build_rep(d, 3);
    benchmark::DoNotOptimize(star_condition(rep));
  }
}
BENCHMARK(BM_BuildRepAndStar);

void BM_ClosedPointBound(benchmark::State& state) {
  Rng rng(5);
  const DegenDatum d = random_datum(rng);
  for (auto _ : state) benchmark::DoNotOptimize(closed_point_bound(d, 2));
}
BENCHMARK(BM_ClosedPointBound);

void BM_CurveEquivalences(benchmark::State& state) {
  Rng rng(6);
  const DualGraph g = random_graph(rng, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(curve_equivalences(g));
}
BENCHMARK(BM_CurveEquivalences)->Arg(8)->Arg(16);

}  // namespace

// The packaged benchmark_main archive is LTO bytecode tied to one compiler
// release, so the entry point is provided here.
BENCHMARK_MAIN();
