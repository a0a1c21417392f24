#include <benchmark/benchmark.h>

#include "mca/algebra.hpp"
#include "mca/cores.hpp"
#include "mca/frame_laws.hpp"
#include "mca/generators.hpp"
#include "mca/machine.hpp"

using namespace mca;

namespace {

/// n̄ n̄ s z, with s·x = <0|x 0>: applies s n^n times.
Expr numeral_power(std::int64_t n) {
  const Code c = church(static_cast<std::uint64_t>(n));
  return apps(Expr::lit(c), Expr::lit(c), Expr::lit(Code::closure(1, Expr::app(Expr::var(0), Expr::var(1)))),
              Expr::lit(proj1()));
}

void BM_EvalPartial(benchmark::State& state) {
  const Expr e = numeral_power(state.range(0));
  PartialEffect eff;
  for (auto _ : state) benchmark::DoNotOptimize(observe(eff, eval(eff, e), {}, 1u << 24));
}
BENCHMARK(BM_EvalPartial)->Arg(2)->Arg(3)->Arg(4);

void BM_Machine(benchmark::State& state) {
  const Expr e = numeral_power(state.range(0));
  std::uint64_t steps = 0;
  for (auto _ : state) {
    const auto r = run_machine(e, 1u << 24);
    steps = r.steps;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_Machine)->Arg(2)->Arg(3)->Arg(4);

void BM_EvalPowerFlips(benchmark::State& state) {
  // #flip applied k times in sequence: 2^k branches before deduplication.
  Expr e = Expr::lit(proj1());
  for (int i = 0; i < state.range(0); ++i) {
    e = apps(Expr::app(Expr::lit(Code::prim(PrimKind::Flip)), e), Expr::lit(proj1()), Expr::lit(proj2()));
  }
  PowerEffect eff;
  for (auto _ : state) benchmark::DoNotOptimize(observe(eff, eval(eff, e), {}, 1u << 24));
}
BENCHMARK(BM_EvalPowerFlips)->Arg(4)->Arg(8)->Arg(12);

void BM_Bracket(benchmark::State& state) {
  Rng rng(1);
  std::vector<Expr> bodies;
  for (int i = 0; i < 64; ++i) bodies.push_back(random_expr(rng, 4, static_cast<std::uint32_t>(state.range(0)), basic_codes()));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bracket(3, bodies[i++ % bodies.size()]));
}
BENCHMARK(BM_Bracket)->Arg(4)->Arg(6);

void BM_ParsePrint(benchmark::State& state) {
  Rng rng(2);
  const std::string text = print(random_closed_term(rng, 8, basic_codes()));
  for (auto _ : state) benchmark::DoNotOptimize(print(parse(text)));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParsePrint);

template <class C>
void run_ef(benchmark::State& state, C (*make)()) {
  const C core = make();
  for (auto _ : state) {
    core.frame.clear_memo();
    benchmark::DoNotOptimize(check_ef_laws(core.frame, core.pools, {20, 4000, 3}));
  }
}

PartialCore make_partial() { return partial_core(); }
StateCore make_state() { return state_core(false); }
CpsCore make_cps() { return cps_core(true); }

void BM_EfPartial(benchmark::State& state) { run_ef(state, make_partial); }
void BM_EfState(benchmark::State& state) { run_ef(state, make_state); }
void BM_EfCps(benchmark::State& state) { run_ef(state, make_cps); }
BENCHMARK(BM_EfPartial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EfState)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EfCps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
