#include "mca/algebra.hpp"

namespace mca {

Expr apply_expr(const Code& f, const std::vector<Code>& args) {
  Expr e = Expr::lit(f);
  for (const Code& a : args) e = Expr::app(std::move(e), Expr::lit(a));
  return e;
}

Code k1(const Code& c1) { return Code::closure(0, Expr::lit(c1)); }

Code s1(const Code& c1) {
  return Code::closure(1, Expr::app(Expr::app(Expr::lit(c1), Expr::var(1)), Expr::app(Expr::var(0), Expr::var(1))));
}

Code s2(const Code& c1, const Code& c2) {
  return Code::closure(
      0, Expr::app(Expr::app(Expr::lit(c1), Expr::var(0)), Expr::app(Expr::lit(c2), Expr::var(0))));
}

namespace {

Expr S() { return Expr::lit(s_code()); }
Expr K() { return Expr::lit(k_code()); }

}  // namespace

Expr b_comb() { return apps(S(), Expr::app(K(), S()), K()); }

Expr nary_k(std::uint32_t n) {
  if (n == 0) return apps(S(), K(), K());
  Expr k = K();
  for (std::uint32_t i = 2; i <= n; ++i) k = apps(b_comb(), K(), std::move(k));
  return k;
}

Expr nary_s(std::uint32_t n) {
  if (n == 0) return apps(S(), K(), K());
  Expr s = S();
  for (std::uint32_t i = 2; i <= n; ++i) s = apps(b_comb(), S(), Expr::app(b_comb(), std::move(s)));
  return s;
}

Expr bracket(std::uint32_t n, const Expr& e) {
  if (e.bound() > n + 1) throw ScopeError("bracket: " + print(e) + " is not in E_" + std::to_string(n + 1));
  switch (e.tag()) {
    case Expr::Tag::Var:
      if (e.level() == 0) return nary_k(n);
      // λ*_{m+1}(j+1) = K • λ*_m(j)
      return Expr::app(K(), bracket(n - 1, Expr::var(e.level() - 1)));
    case Expr::Tag::Lit:
      return Expr::app(nary_k(n + 1), e);
    case Expr::Tag::App:
      return apps(nary_s(n + 1), bracket(n, e.fun()), bracket(n, e.arg()));
  }
  return e;
}

}  // namespace mca
