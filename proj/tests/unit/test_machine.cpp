#include "doctest.h"

#include <fstream>
#include <sstream>

#include "mca/algebra.hpp"
#include "mca/cores.hpp"
#include "mca/effects.hpp"
#include "mca/generators.hpp"
#include "mca/machine.hpp"
#include "oracle.hpp"

using namespace mca;

namespace {

Expr lit(const Code& c) { return Expr::lit(c); }

bool mentions_kont(const Code& c) { return (c.prim_mask() & prim_bit(PrimKind::Kont)) != 0; }

}  // namespace

TEST_SUITE("machine") {

TEST_CASE("a literal returns in two steps") {
  const auto r = run_machine(lit(proj1()), 100, true);
  CHECK(r.status == MachineStatus::Final);
  CHECK(r.value == proj1());
  CHECK(r.steps == 2);
  CHECK(r.trace.size() == 3);
  CHECK(r.trace.front().kind == MachineState::Kind::Eval);
  CHECK(r.trace.back().kind == MachineState::Kind::Final);
}

TEST_CASE("identity applied to a value") {
  // Six fuel-charged rules, then the halting transition.
  const auto r = run_machine(parse("<0|0> <1|0>"), 100, true);
  CHECK(r.value == Code::closure(1, Expr::var(0)));
  CHECK(r.fuel_used == 6);
  CHECK(r.steps == 7);
  CHECK(r.trace.size() == r.steps + 1);
}

TEST_CASE("divergence exhausts fuel") {
  const auto r = run_machine(Expr::app(lit(loop_code()), lit(proj1())), 5000);
  CHECK(r.status == MachineStatus::FuelExhausted);
  CHECK_FALSE(r.value.has_value());
}

TEST_CASE("primitives without machine rules get stuck") {
  const auto r = run_machine(parse("#flip <0|0>"), 100);
  CHECK(r.status == MachineStatus::Stuck);
  CHECK_FALSE(r.stuck_reason.empty());
}

TEST_CASE("golden trace of S K K applied to zero") {
  const auto r = run_machine(parse("S K K <1|1>"), 10000, true);
  REQUIRE(r.status == MachineStatus::Final);
  CHECK(r.value == church(0));
  CHECK(r.trace.size() == r.steps + 1);
  std::ifstream in(MCA_GOLDEN_DIR "/skk_zero.trace");
  REQUIRE(in);
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(format_trace(r.trace) == golden.str());
}

TEST_CASE("machine, evaluator and reference reducer agree on pure terms") {
  Rng rng(31);
  const auto pool = basic_codes();
  constexpr std::uint64_t fuel = 10000;
  int finished = 0;
  for (int i = 0; i < 1000; ++i) {
    const Expr e = random_closed_term(rng, 5, pool);
    const auto m = run_machine(e, fuel);
    const auto o = oracle::run(e, fuel);
    const auto ev = observe(PartialEffect{}, eval(PartialEffect{}, e), {}, fuel);
    CAPTURE(print(e));
    REQUIRE(m.status != MachineStatus::Stuck);
    CHECK((m.status == MachineStatus::Final) == o.value.has_value());
    CHECK(ev.exhausted() == !o.value.has_value());
    if (m.status != MachineStatus::Final) continue;
    ++finished;
    CHECK(m.value == o.value);
    CHECK(**ev.value == *o.value);
    CHECK(m.fuel_used == o.used);
  }
  CHECK(finished > 800);
}

TEST_CASE("control terms agree with the CPS evaluator under halt") {
  Rng rng(33);
  auto leaves = basic_codes();
  leaves.push_back(Code::prim(PrimKind::Cc));
  leaves.push_back(cc_throw());
  leaves.push_back(cc_identity());
  CpsEffect eff;
  int with_cc = 0;
  for (int i = 0; i < 600 && with_cc < 150; ++i) {
    const Expr e = random_closed_term(rng, 5, leaves);
    if (!(e.prim_mask() & prim_bit(PrimKind::Cc))) continue;
    const auto m = run_machine(e, 10000);
    const auto c = observe(eff, eval(eff, e), Continuation::halt(), 10000);
    CAPTURE(print(e));
    REQUIRE(m.status != MachineStatus::Stuck);
    CHECK((m.status == MachineStatus::Final) == !c.exhausted());
    if (m.status != MachineStatus::Final) continue;
    ++with_cc;
    REQUIRE(c.value->is_code());
    const Code x = std::get<Code>(c.value->value);
    if (mentions_kont(x)) {
      CHECK(mentions_kont(*m.value));
    } else {
      CHECK(*m.value == x);
    }
  }
  CHECK(with_cc >= 100);
}

}  // TEST_SUITE
