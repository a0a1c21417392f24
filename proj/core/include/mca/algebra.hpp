#pragma once

// Effect-parameterized application and call-by-value evaluation, the S/K
// presentation and bracket abstraction.
//
// Fuel accounting mirrors the abstract machine: evaluating a literal costs one
// transition, an application three (push the argument, switch to it, apply),
// and applying #cc one more.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mca/computation.hpp"
#include "mca/report.hpp"
#include "mca/syntax.hpp"
#include "mca/term.hpp"

namespace mca {

template <class E>
typename E::Comp apply(const E& eff, const Code& f, const Code& a);

/// ν(e) for closed e. The result is lazy; fuel is spent when it is observed.
template <class E>
typename E::Comp eval(const E& eff, const Expr& e) {
  using Comp = typename E::Comp;
  if (e.bound() != 0) throw ScopeError("eval of an open expression: " + print(e));
  switch (e.tag()) {
    case Expr::Tag::Lit:
      return tick<Comp>(1, eff.ret(e.code()));
    case Expr::Tag::App:
      return Comp([eff, e](const typename E::Context& ctx, Run& run) {
        run.charge(3);
        Comp m = eff.bind(eval(eff, e.fun()), [eff, arg = e.arg()](const Code& cf) {
          return eff.bind(eval(eff, arg), [eff, cf](const Code& ca) { return apply(eff, cf, ca); });
        });
        return m(ctx, run);
      });
    case Expr::Tag::Var:
      break;
  }
  throw ScopeError("eval of a variable");
}

/// <n+1|e>·a = ret <n|e[a]>,  <0|e>·a = ν(e[a]),  primitives per effect.
template <class E>
typename E::Comp apply(const E& eff, const Code& f, const Code& a) {
  if (f.is_closure()) {
    if (f.remaining() > 0) return eff.ret(Code::closure(f.remaining() - 1, subst(f.body(), a)));
    return eval(eff, subst(f.body(), a));
  }
  return eff.apply_prim(f, a, [eff](const Code& g, const Code& b) { return apply(eff, g, b); });
}

/// f a₁ … aₖ as an expression over literals.
Expr apply_expr(const Code& f, const std::vector<Code>& args);

// ---- S/K presentation

/// <0|c1>, the result of K·c1.
Code k1(const Code& c1);
/// <1|(c1 1) (0 1)>, the result of S·c1.
Code s1(const Code& c1);
/// <0|(c1 0) (c2 0)>, the result of S1(c1)·c2.
Code s2(const Code& c1, const Code& c2);

/// B = S (K S) K.
Expr b_comb();
/// K₀ = S K K, K₁ = K, K_{n+2} = B K K_{n+1}.
Expr nary_k(std::uint32_t n);
/// S₀ = S K K, S₁ = S, S_{n+2} = B S (B S_{n+1}).
Expr nary_s(std::uint32_t n);

/// λ*ₙ(e) for e ∈ E_{n+1}: a closed S/K term behaving like <n|e>.
Expr bracket(std::uint32_t n, const Expr& e);

// ---- law checks

template <class E>
bool same(const E& eff, const typename E::Comp& a, const typename E::Comp& b, std::uint64_t fuel) {
  return computations_equal(eff, a, b, fuel);
}

template <class E>
std::string describe(const E& eff, const typename E::Comp& m, std::uint64_t fuel) {
  std::string out;
  for (const auto& ctx : eff.probes()) {
    auto o = observe(eff, m, ctx, fuel);
    if (!out.empty()) out += "; ";
    const std::string where = eff.show_context(ctx);
    if (!where.empty()) out += where + ": ";
    out += o.exhausted() ? std::string("fuel exhausted") : eff.show(*o.value);
  }
  return out;
}

/// <n+1|e>·a = ret <n|e[a]> and <0|e>·a = ν(e[a]), compared by observation.
template <class E>
Report check_mca_laws(const E& eff, const std::vector<Code>& closures, const std::vector<Code>& args,
                      std::uint64_t fuel) {
  Report report("mca");
  auto& curried = report.law("closure-partial-application");
  auto& saturated = report.law("closure-saturated-application");
  for (std::size_t i = 0; i < closures.size(); ++i) {
    const Code& f = closures[i];
    if (!f.is_closure()) continue;
    const Code& a = args[i % args.size()];
    const Expr body = subst(f.body(), a);
    auto lhs = apply(eff, f, a);
    if (f.remaining() > 0) {
      auto rhs = eff.ret(Code::closure(f.remaining() - 1, body));
      curried.record(same(eff, lhs, rhs, fuel), [&] { return print(f) + " · " + print(a); });
    } else {
      auto rhs = eval(eff, body);
      saturated.record(same(eff, lhs, rhs, fuel), [&] { return print(f) + " · " + print(a); });
    }
  }
  return report;
}

/// The five S/K axioms, with S₁ and S₂ built directly rather than by application.
template <class E>
Report check_sk_axioms(const E& eff, const std::vector<std::array<Code, 3>>& triples, std::uint64_t fuel) {
  Report report("sk");
  auto& ax_k = report.law("K·c1 = ret K1(c1)");
  auto& ax_k1 = report.law("K1(c1)·c2 = ret c1");
  auto& ax_s = report.law("S·c1 = ret S1(c1)");
  auto& ax_s1 = report.law("S1(c1)·c2 = ret S2(c1,c2)");
  auto& ax_s2 = report.law("S2(c1,c2)·c3 = ν((c1 c3)(c2 c3))");
  for (const auto& [c1, c2, c3] : triples) {
    auto show = [&] { return print(c1) + ", " + print(c2) + ", " + print(c3); };
    ax_k.record(same(eff, apply(eff, k_code(), c1), eff.ret(k1(c1)), fuel), show);
    ax_k1.record(same(eff, apply(eff, k1(c1), c2), eff.ret(c1), fuel), show);
    ax_s.record(same(eff, apply(eff, s_code(), c1), eff.ret(s1(c1)), fuel), show);
    ax_s1.record(same(eff, apply(eff, s1(c1), c2), eff.ret(s2(c1, c2)), fuel), show);
    const Expr rhs = Expr::app(Expr::app(Expr::lit(c1), Expr::lit(c3)), Expr::app(Expr::lit(c2), Expr::lit(c3)));
    ax_s2.record(same(eff, apply(eff, s2(c1, c2), c3), eval(eff, rhs), fuel), show);
  }
  return report;
}

/// Left unit, right unit and associativity, with Kleisli arrows x ↦ g·x.
template <class E>
Report check_monad_laws(const E& eff, const std::vector<Code>& codes, const std::vector<Code>& fns,
                        std::uint64_t fuel) {
  Report report("monad");
  auto& left = report.law("bind(ret c, k) = k(c)");
  auto& right = report.law("bind(m, ret) = m");
  auto& assoc = report.law("bind(bind(m, f), g) = bind(m, x ↦ bind(f x, g))");
  using Comp = typename E::Comp;
  auto arrow = [&eff](const Code& g) -> Kleisli<Comp> {
    return [eff, g](const Code& x) { return apply(eff, g, x); };
  };
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const Code& c = codes[i];
    const Code& g1 = fns[i % fns.size()];
    const Code& g2 = fns[(i * 7 + 3) % fns.size()];
    auto show = [&] { return print(c) + ", " + print(g1) + ", " + print(g2); };
    left.record(same(eff, eff.bind(eff.ret(c), arrow(g1)), apply(eff, g1, c), fuel), show);
    const Comp m = apply(eff, g1, c);
    right.record(same(eff, eff.bind(m, [eff](const Code& x) { return eff.ret(x); }), m, fuel), show);
    auto f = arrow(g2);
    auto g = arrow(g1);
    const Comp lhs = eff.bind(eff.bind(m, f), g);
    const Comp rhs = eff.bind(m, [eff, f, g](const Code& x) { return eff.bind(f(x), g); });
    assoc.record(same(eff, lhs, rhs, fuel), show);
  }
  return report;
}

}  // namespace mca
