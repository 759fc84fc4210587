#include <benchmark/benchmark.h>

#include "sol/constructions.hpp"
#include "sol/parser.hpp"
#include "sol/sweep.hpp"

using namespace sol;

namespace {

const Formula& comprehension_instance() {
  static const Formula f = comprehension(
      PredAbstraction({"x", "y"}, parse_formula("P(x,y) & Q(y,a)", {{"a"}, {}, {}})));
  return f;
}

const Formula& dedekind() {
  static const Formula f = dedekind_finiteness();
  return f;
}

void reference(benchmark::State& state, const Formula& f) {
  const SymbolTable t = SymbolTable::of(f);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_validity_reference(f, t, static_cast<int>(state.range(0))));
}

void compiled(benchmark::State& state, const Formula& f, bool parallel) {
  const SymbolTable t = SymbolTable::of(f);
  const SweepOptions opt{kDefaultBudget, parallel, true};
  for (auto _ : state)
    benchmark::DoNotOptimize(check_validity(f, t, static_cast<int>(state.range(0)), opt));
}

void BM_ComprehensionReference(benchmark::State& s) { reference(s, comprehension_instance()); }
void BM_ComprehensionSerial(benchmark::State& s) { compiled(s, comprehension_instance(), false); }
void BM_ComprehensionParallel(benchmark::State& s) { compiled(s, comprehension_instance(), true); }
void BM_DedekindReference(benchmark::State& s) { reference(s, dedekind()); }
void BM_DedekindSerial(benchmark::State& s) { compiled(s, dedekind(), false); }
void BM_DedekindParallel(benchmark::State& s) { compiled(s, dedekind(), true); }

void BM_SeparatorSerial(benchmark::State& state) {
  for (auto _ : state) {
    try {
      find_branching_separator(static_cast<int>(state.range(0)), {kDefaultBudget, false, true});
    } catch (const NotFound&) {
    }
  }
}
void BM_SeparatorParallel(benchmark::State& state) {
  for (auto _ : state) {
    try {
      find_branching_separator(static_cast<int>(state.range(0)), {kDefaultBudget, true, true});
    } catch (const NotFound&) {
    }
  }
}

}  // namespace

BENCHMARK(BM_ComprehensionReference)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComprehensionSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComprehensionParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DedekindReference)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DedekindSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DedekindParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeparatorSerial)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeparatorParallel)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
