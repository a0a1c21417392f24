#include "doctest.h"

#include <array>

#include "mca/algebra.hpp"
#include "mca/effects.hpp"
#include "mca/generators.hpp"
#include "oracle.hpp"

using namespace mca;

namespace {

constexpr std::uint64_t kFuel = 10000;

std::optional<Code> run_partial(const Expr& e, std::uint64_t fuel = kFuel) {
  const auto o = observe(PartialEffect{}, eval(PartialEffect{}, e), {}, fuel);
  if (o.exhausted()) return std::nullopt;
  return *o.value;
}

std::optional<Code> run_apply(const Code& f, const Code& a) {
  const auto o = observe(PartialEffect{}, apply(PartialEffect{}, f, a), {}, kFuel);
  if (o.exhausted()) return std::nullopt;
  return *o.value;
}

Expr lit(const Code& c) { return Expr::lit(c); }

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("application of closures") {
  const Code c = church(3);
  const Code k = Code::closure(1, Expr::var(0));
  CHECK(run_apply(k, c) == Code::closure(0, lit(c)));
  CHECK(run_apply(Code::closure(0, Expr::var(0)), c) == c);
}

TEST_CASE("evaluation of literals and applications") {
  const Code c = proj2();
  CHECK(run_partial(lit(c)) == c);
  CHECK(run_partial(parse("<0|0> <1|0>")) == Code::closure(1, Expr::var(0)));
}

TEST_CASE("the loop code exhausts every budget") {
  for (std::uint64_t fuel : {10u, 100u, 1000u, 20000u}) {
    CHECK_FALSE(run_partial(Expr::app(lit(loop_code()), lit(proj1())), fuel).has_value());
  }
}

TEST_CASE("S and K axioms on concrete codes") {
  const Code c1 = church(1), c2 = proj2(), c3 = church(2);
  CHECK(run_apply(k_code(), c1) == k1(c1));
  CHECK(run_apply(k1(c1), c2) == c1);
  CHECK(run_apply(s_code(), c1) == s1(c1));
  CHECK(run_apply(s1(c1), c2) == s2(c1, c2));
  const Expr rhs = Expr::app(Expr::app(lit(c1), lit(c3)), Expr::app(lit(c2), lit(c3)));
  CHECK(run_apply(s2(c1, c2), c3) == oracle::run(rhs, kFuel).value);
}

TEST_CASE("n-ary K and S") {
  CHECK(nary_k(1) == lit(k_code()));
  const Code a = church(2), b = proj1();
  // K₀ = S K K is the identity.
  CHECK(run_partial(Expr::app(nary_k(0), lit(a))) == a);
  // Kₙ c x₁ … xₙ = c
  for (std::uint32_t n = 1; n <= 4; ++n) {
    Expr e = Expr::app(nary_k(n), lit(a));
    for (std::uint32_t i = 0; i < n; ++i) e = Expr::app(e, lit(b));
    CHECK(run_partial(e) == a);
  }
  // S₂ f g x y = (f x y)(g x y), against the oracle on sampled codes.
  Rng rng(3);
  const auto pool = basic_codes();
  int decided = 0;
  for (int i = 0; i < 200; ++i) {
    const Code f = pick(rng, pool), g = pick(rng, pool), x = pick(rng, pool), y = pick(rng, pool);
    const auto lhs = run_partial(apps(nary_s(2), lit(f), lit(g), lit(x), lit(y)));
    const auto rhs = oracle::run(Expr::app(apps(lit(f), lit(x), lit(y)), apps(lit(g), lit(x), lit(y))), kFuel);
    if (!lhs || !rhs.value) continue;
    ++decided;
    CHECK(*lhs == *rhs.value);
  }
  CHECK(decided > 100);
}

TEST_CASE("bracket abstraction examples") {
  CHECK(print(bracket(0, Expr::var(0)), {.sk_names = true}) == "S K K");
  CHECK(bracket(0, lit(church(1))) == Expr::app(lit(k_code()), lit(church(1))));
  CHECK(print(bracket(1, Expr::var(0)), {.sk_names = true}) == "K");
  // <2|(0 2)(1 2)> is S itself.
  const Expr e = parse("(0 2)(1 2)");
  const Code c1 = church(2), c2 = k_code(), c3 = proj2();
  CHECK(run_partial(apps(bracket(2, e), lit(c1), lit(c2), lit(c3))) ==
        oracle::run(apps(lit(Code::closure(2, e)), lit(c1), lit(c2), lit(c3)), kFuel).value);
}

TEST_CASE("bracket abstraction agrees with the closure on random bodies") {
  Rng rng(5);
  const auto pool = basic_codes();
  int decided = 0;
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::uint32_t>(i % 4);
    const Expr body = random_expr(rng, n + 1, 4, pool);
    const Expr compiled = bracket(n, body);
    CHECK(compiled.bound() == 0);
    CHECK(compiled.prim_mask() == 0);
    Expr lhs = compiled;
    Expr rhs = lit(Code::closure(n, body));
    for (std::uint32_t j = 0; j <= n; ++j) {
      const Code a = pick(rng, pool);
      lhs = Expr::app(lhs, lit(a));
      rhs = Expr::app(rhs, lit(a));
    }
    const auto expected = oracle::run(rhs, kFuel);
    const auto got = run_partial(lhs, 20 * kFuel);
    if (!expected.value || !got) continue;
    ++decided;
    CAPTURE(print(body));
    CHECK(*got == *expected.value);
  }
  CHECK(decided >= 200);
}

TEST_CASE("evaluation agrees with the reference reducer, fuel included") {
  Rng rng(7);
  const auto pool = basic_codes();
  for (int i = 0; i < 500; ++i) {
    const Expr e = random_closed_term(rng, 5, pool);
    const auto expected = oracle::run(e, 2000);
    Run run(2000);
    std::optional<Code> got;
    try {
      got = eval(PartialEffect{}, e)({}, run);
    } catch (const FuelExhausted&) {
    }
    CAPTURE(print(e));
    CHECK(got == expected.value);
    if (got) CHECK(run.used() == expected.used);
  }
}

TEST_CASE("S1 partial application step") {
  Rng rng(9);
  const auto pool = basic_codes();
  for (int i = 0; i < 100; ++i) {
    const Code c1 = pick(rng, pool), c2 = pick(rng, pool);
    CHECK(run_apply(s_code(), c1) == s1(c1));
    CHECK(run_apply(s1(c1), c2) == s2(c1, c2));
  }
}

TEST_CASE("generated MCA, S/K and monad law suites pass") {
  Rng rng(13);
  const auto pool = basic_codes();
  std::vector<Code> closures, args;
  for (int i = 0; i < 500; ++i) {
    closures.push_back(random_closure(rng, 3, 6, pool));
    args.push_back(pick(rng, pool));
  }
  std::vector<std::array<Code, 3>> triples;
  for (int i = 0; i < 200; ++i) triples.push_back({pick(rng, pool), pick(rng, pool), pick(rng, pool)});

  SUBCASE("partial") {
    PartialEffect eff;
    CHECK(check_mca_laws(eff, closures, args, kFuel).passed());
    CHECK(check_sk_axioms(eff, triples, kFuel).passed());
    CHECK(check_monad_laws(eff, args, closures, kFuel).passed());
  }
  SUBCASE("power with #flip among the arguments") {
    PowerEffect eff;
    auto with_flip = args;
    with_flip[0] = Code::prim(PrimKind::Flip);
    with_flip[7] = Code::prim(PrimKind::Flip);
    CHECK(check_mca_laws(eff, closures, with_flip, kFuel).passed());
    CHECK(check_monad_laws(eff, with_flip, closures, kFuel).passed());
  }
}

TEST_CASE("Church numerals") {
  CHECK(church(0) == Code::closure(1, Expr::var(1)));
  // n̄ · #inc · x under the counter increments n times.
  StateEffect eff;
  for (std::uint64_t n = 0; n < 6; ++n) {
    const Expr e = apps(lit(church(n)), lit(Code::prim(PrimKind::Inc)), lit(proj1()));
    const auto o = observe(eff, eval(eff, e), 0, kFuel);
    REQUIRE_FALSE(o.exhausted());
    CHECK(*o.value == StateEffect::Observation{{n, proj1()}});
  }
  // n̄ s z with s·x = <0|x 0>: n nested wrappers around z.
  const Code s = parse_code("<1|0 1>");
  const auto two = run_partial(apps(lit(church(2)), lit(s), lit(proj2())));
  REQUIRE(two.has_value());
  CHECK(print(*two) == "<0|<0|<1|1> 0> 0>");
}

}  // TEST_SUITE
