#include "doctest.h"

#include "mca/effects.hpp"
#include "mca/generators.hpp"
#include "mca/syntax.hpp"

using namespace mca;

namespace {

Expr v(std::uint32_t i) { return Expr::var(i); }

}  // namespace

TEST_SUITE("syntax") {

TEST_CASE("parse builds the expected trees") {
  CHECK(parse("0") == v(0));
  CHECK(parse("<1|0>") == Expr::lit(Code::closure(1, v(0))));
  const Expr body = Expr::app(Expr::app(v(0), v(2)), Expr::app(v(1), v(2)));
  CHECK(parse("<2|(0 2)(1 2)>") == Expr::lit(Code::closure(2, body)));
  CHECK(parse("0 1 2") == apps(v(0), v(1), v(2)));
  CHECK(parse("0 (1 2)") == Expr::app(v(0), Expr::app(v(1), v(2))));
  CHECK(parse("  ( 0 )  ") == v(0));
}

TEST_CASE("S and K atoms are the combinator closures") {
  CHECK(parse_code("S") == s_code());
  CHECK(parse_code("K") == k_code());
  CHECK(print(s_code()) == "<2|0 2 (1 2)>");
  CHECK(print(k_code()) == "<1|0>");
  CHECK(print(parse("S K K"), {.sk_names = true}) == "S K K");
}

TEST_CASE("primitives parse by name") {
  CHECK(parse_code("#flip") == Code::prim(PrimKind::Flip));
  CHECK(parse_code("#cc").kind() == PrimKind::Cc);
  CHECK(parse_code("#search").kind() == PrimKind::Search);
  CHECK_THROWS_AS(parse("#nope"), ParseError);
  CHECK_THROWS_AS(parse("#k:3"), ParseError);
}

TEST_CASE("malformed input reports a position") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("<1|0"), ParseError);
  CHECK_THROWS_AS(parse("(0"), ParseError);
  CHECK_THROWS_AS(parse("0)"), ParseError);
  try {
    parse("<0|1>");
    FAIL("escaping level accepted");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("substitution follows the level table") {
  const Code c = Code::closure(1, v(0));
  CHECK(subst(v(0), c) == Expr::lit(c));
  CHECK(subst(v(3), c) == v(2));
  CHECK(subst(Expr::app(v(0), v(1)), c) == Expr::app(Expr::lit(c), v(0)));
  const Expr lit = Expr::lit(s_code());
  CHECK(subst(lit, c) == lit);
}

TEST_CASE("scope_check") {
  const Code c = Code::closure(1, v(0));
  CHECK(scope_check(v(0), 1));
  CHECK_FALSE(scope_check(v(1), 1));
  CHECK(scope_check(Expr::app(v(2), Expr::lit(c)), 3));
  CHECK(scope_check(Expr::lit(c), 0));
  CHECK_THROWS_AS(Code::closure(0, v(1)), ScopeError);
}

TEST_CASE("printing is canonical and left-associative") {
  CHECK(print(v(0)) == "0");
  CHECK(print(Code::closure(0, Expr::app(v(0), v(0)))) == "<0|0 0>");
  CHECK(print(apps(v(0), v(1), v(2))) == "0 1 2");
  CHECK(print(Expr::app(v(0), Expr::app(v(1), v(2)))) == "0 (1 2)");
  CHECK(print(church(2)) == "<1|0 (0 1)>");
}

TEST_CASE("code equality is structural") {
  CHECK(Code::closure(1, v(0)) == Code::closure(1, v(0)));
  CHECK_FALSE(Code::closure(1, v(0)) == Code::closure(2, v(0)));
  CHECK_FALSE(Code::closure(1, v(0)) == Code::closure(1, v(1)));
  CHECK(Code::prim(PrimKind::Cc, 4) == Code::prim(PrimKind::Cc, 4));
  CHECK_FALSE(Code::prim(PrimKind::Cc, 4) == Code::prim(PrimKind::Cc, 5));
  CHECK_FALSE(Code::prim(PrimKind::Flip) == Code::prim(PrimKind::Fail));
}

TEST_CASE("print then parse is the identity on random terms") {
  Rng rng(11);
  std::vector<Code> leaves = basic_codes();
  leaves.push_back(Code::prim(PrimKind::Flip));
  leaves.push_back(Code::prim(PrimKind::Get));
  for (int i = 0; i < 500; ++i) {
    const auto scope = static_cast<std::uint32_t>(i % 4);
    const Expr e = random_expr(rng, scope, 5, leaves);
    CAPTURE(print(e));
    CHECK(parse(print(e)) == e);
    CHECK(scope_check(e, scope));
    const Code c = random_closure(rng, 3, 5, leaves);
    CHECK(parse_code(print(c)) == c);
  }
}

TEST_CASE("substitution lowers the scope by one") {
  Rng rng(12);
  const auto leaves = basic_codes();
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::uint32_t>(1 + i % 4);
    const Expr e = random_expr(rng, n, 5, leaves);
    const Expr s = subst(e, pick(rng, leaves));
    CHECK(scope_check(s, n - 1));
    CHECK(s.bound() <= (e.bound() == 0 ? 0 : e.bound() - 1));
  }
}

}  // TEST_SUITE
