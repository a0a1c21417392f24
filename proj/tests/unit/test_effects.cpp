#include "doctest.h"

#include "mca/algebra.hpp"
#include "mca/cores.hpp"
#include "mca/effects.hpp"
#include "mca/generators.hpp"
#include "mca/separator.hpp"

using namespace mca;

namespace {

constexpr std::uint64_t kFuel = 10000;

template <class E>
typename E::Observation run(const E& eff, const typename E::Comp& m, const typename E::Context& ctx) {
  auto o = observe(eff, m, ctx, kFuel);
  REQUIRE_FALSE(o.exhausted());
  return *o.value;
}

Code prim(PrimKind k) { return Code::prim(k); }
Expr lit(const Code& c) { return Expr::lit(c); }

}  // namespace

TEST_SUITE("effects") {

TEST_CASE("flip returns both projections, whatever its argument") {
  PowerEffect eff;
  const std::set<Code> both{proj1(), proj2()};
  CHECK(run(eff, apply(eff, prim(PrimKind::Flip), church(0)), {}) == both);
  CHECK(run(eff, apply(eff, prim(PrimKind::Flip), s_code()), {}) == both);
  // Each branch applied to a and b selects one of them.
  const Code a = church(1), b = church(2);
  const Expr e = apps(Expr::app(lit(prim(PrimKind::Flip)), lit(proj1())), lit(a), lit(b));
  CHECK(run(eff, eval(eff, e), {}) == std::set<Code>{a, b});
}

TEST_CASE("fail has no result and absorbs bind") {
  PowerEffect power;
  const auto failed = apply(power, prim(PrimKind::Fail), proj1());
  CHECK(run(power, failed, {}).empty());
  CHECK(run(power, power.bind(failed, [power](const Code& x) { return power.ret(x); }), {}).empty());
  PartialEffect partial;
  CHECK_FALSE(run(partial, apply(partial, prim(PrimKind::Fail), proj1()), {}).has_value());
  CHECK_FALSE(Separator::no_fail(power.supported_prims()).contains(prim(PrimKind::Fail)));
  CHECK(Separator::all(power.supported_prims()).contains(prim(PrimKind::Fail)));
}

TEST_CASE("get and inc on the counter") {
  StateEffect eff;
  using Obs = StateEffect::Observation;
  const Code c = k_code();
  CHECK(run(eff, apply(eff, prim(PrimKind::Get), c), 3) == Obs{{3, church(3)}});
  CHECK(run(eff, apply(eff, prim(PrimKind::Inc), c), 0) == Obs{{1, c}});
  // inc; inc; get from 0, stepped by hand: (<0|0>, 1), (<0|0>, 2), (2̄, 2).
  const Expr demo = parse("#get (#inc (#inc <0|0>))");
  CHECK(run(eff, eval(eff, demo), 0) == Obs{{2, church(2)}});
  CHECK(run(eff, eval(eff, demo), 5) == Obs{{7, church(7)}});
}

TEST_CASE("the counter never decreases") {
  StateEffect eff;
  Rng rng(21);
  auto leaves = basic_codes();
  leaves.push_back(prim(PrimKind::Get));
  leaves.push_back(prim(PrimKind::Inc));
  int nonempty = 0;
  for (int i = 0; i < 300; ++i) {
    const Expr e = random_closed_term(rng, 4, leaves);
    for (std::uint64_t s : {0u, 2u, 5u}) {
      const auto o = observe(eff, eval(eff, e), s, kFuel);
      if (o.exhausted()) continue;
      for (const auto& [s2, x] : *o.value) {
        ++nonempty;
        CHECK(s2 >= s);
      }
    }
  }
  CHECK(nonempty > 300);
}

TEST_CASE("search reads the parameter") {
  const Param even("even", {{church(0), true}, {church(2), true}}, false);
  ReaderEffect eff({even});
  CHECK(run(eff, apply(eff, prim(PrimKind::Search), church(1)), even) == proj1());
  CHECK(run(eff, apply(eff, prim(PrimKind::Search), church(2)), even) == proj2());
}

TEST_CASE("cc captures the continuation and K_u reinstates it") {
  CpsEffect eff;
  const Continuation halt = Continuation::halt();
  const Continuation hit = Continuation::constant("hit", Answer::token("hit"));
  // cc·<0|0> under u answers u(K_u): a captured continuation code under halt.
  const Answer captured = run(eff, apply(eff, prim(PrimKind::Cc), Code::closure(0, Expr::var(0))), halt);
  REQUIRE(captured.is_code());
  const Code ku = std::get<Code>(captured.value);
  CHECK(ku.is_prim());
  CHECK(ku.kind() == PrimKind::Kont);
  // K_u·c under any u′ answers u(c).
  const Code kh = make_kont(hit, kDictionaryKontBase);
  CHECK(run(eff, apply(eff, kh, proj1()), halt) == Answer::token("hit"));
  CHECK(run(eff, apply(eff, make_kont(halt, kDictionaryKontBase + 1), proj1()), hit) == Answer::code(proj1()));
  // Throwing to the captured continuation returns the argument.
  CHECK(run(eff, apply(eff, cc_throw(), church(2)), halt) == Answer::code(church(2)));
  CHECK(run(eff, apply(eff, cc_identity(), church(2)), halt) == Answer::code(church(2)));
  CHECK(run(eff, apply(eff, cc_throw(), church(2)), hit) == Answer::token("hit"));
}

TEST_CASE("pure terms behave the same under every effect") {
  Rng rng(23);
  const auto pool = basic_codes();
  PartialEffect partial;
  PowerEffect power;
  StateEffect state;
  ReaderEffect reader({Param("p", {}, false)});
  CpsEffect cps;
  for (int i = 0; i < 200; ++i) {
    const Expr e = random_closed_term(rng, 4, pool);
    const auto p = observe(partial, eval(partial, e), {}, 2000);
    const auto w = observe(power, eval(power, e), {}, 2000);
    const auto s = observe(state, eval(state, e), 4, 2000);
    const auto r = observe(reader, eval(reader, e), reader.probes()[0], 2000);
    const auto c = observe(cps, eval(cps, e), Continuation::halt(), 2000);
    REQUIRE(p.exhausted() == w.exhausted());
    REQUIRE(p.exhausted() == c.exhausted());
    if (p.exhausted()) continue;
    const Code x = **p.value;
    CHECK(*w.value == std::set<Code>{x});
    CHECK(*s.value == StateEffect::Observation{{4, x}});
    CHECK(**r.value == x);
    CHECK(*c.value == Answer::code(x));
  }
}

TEST_CASE("monad laws hold for every effect") {
  Rng rng(25);
  auto pool = basic_codes();
  std::vector<Code> fns;
  for (int i = 0; i < 60; ++i) fns.push_back(random_closure(rng, 2, 4, pool));
  fns.push_back(prim(PrimKind::Fail));
  SUBCASE("partial") { CHECK(check_monad_laws(PartialEffect{}, pool, fns, kFuel).passed()); }
  SUBCASE("power") {
    auto f = fns;
    f.push_back(prim(PrimKind::Flip));
    CHECK(check_monad_laws(PowerEffect{}, pool, f, kFuel).passed());
  }
  SUBCASE("state") {
    auto f = fns;
    f.push_back(prim(PrimKind::Inc));
    f.push_back(prim(PrimKind::Get));
    CHECK(check_monad_laws(StateEffect{}, pool, f, kFuel).passed());
  }
  SUBCASE("reader") {
    auto f = fns;
    f.push_back(prim(PrimKind::Search));
    ReaderEffect eff({Param("p", {{church(1), true}}, false), Param("q", {}, true)});
    CHECK(check_monad_laws(eff, pool, f, kFuel).passed());
  }
  SUBCASE("cps") {
    std::vector<Code> f(fns.begin(), fns.end() - 1);
    f.push_back(prim(PrimKind::Cc));
    f.push_back(cc_throw());
    CHECK(check_monad_laws(CpsEffect(default_dictionary()), pool, f, kFuel).passed());
  }
}

TEST_CASE("primitives outside an effect are rejected") {
  PartialEffect partial;
  CHECK_THROWS_AS(run(partial, apply(partial, prim(PrimKind::Flip), proj1()), {}), UnsupportedPrimitive);
  StateEffect state;
  CHECK_THROWS_AS(run(state, apply(state, prim(PrimKind::Cc), proj1()), 0), UnsupportedPrimitive);
}

TEST_CASE("effect names round-trip") {
  for (auto k : {EffectKind::Partial, EffectKind::Power, EffectKind::State, EffectKind::Reader, EffectKind::Cps}) {
    CHECK(effect_from_name(effect_name(k)) == k);
  }
  CHECK_FALSE(effect_from_name("io").has_value());
}

}  // TEST_SUITE
