#include "mca/generators.hpp"

#include "mca/effects.hpp"
#include "mca/syntax.hpp"

namespace mca {

namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Expr leaf(Rng& rng, std::uint32_t scope, const std::vector<Code>& leaves) {
  if (scope > 0 && (leaves.empty() || coin(rng, 0.6))) {
    return Expr::var(std::uniform_int_distribution<std::uint32_t>(0, scope - 1)(rng));
  }
  if (leaves.empty()) return Expr::lit(proj1());
  return Expr::lit(pick(rng, leaves));
}

}  // namespace

Expr random_expr(Rng& rng, std::uint32_t scope, std::uint32_t depth, const std::vector<Code>& leaves) {
  if (depth == 0 || coin(rng, 0.3)) return leaf(rng, scope, leaves);
  return Expr::app(random_expr(rng, scope, depth - 1, leaves), random_expr(rng, scope, depth - 1, leaves));
}

Code random_closure(Rng& rng, std::uint32_t max_remaining, std::uint32_t depth, const std::vector<Code>& leaves) {
  const auto n = std::uniform_int_distribution<std::uint32_t>(0, max_remaining)(rng);
  std::vector<Code> pool = leaves;
  if (depth >= 3 && coin(rng, 0.5)) pool.push_back(random_closure(rng, 1, depth / 2, leaves));
  return Code::closure(n, random_expr(rng, n + 1, depth, pool));
}

Expr random_closed_term(Rng& rng, std::uint32_t depth, const std::vector<Code>& leaves) {
  if (depth == 0 || coin(rng, 0.25)) {
    if (!leaves.empty() && coin(rng, 0.5)) return Expr::lit(pick(rng, leaves));
    return Expr::lit(random_closure(rng, 2, std::min<std::uint32_t>(depth + 1, 4), leaves));
  }
  return Expr::app(random_closed_term(rng, depth - 1, leaves), random_closed_term(rng, depth - 1, leaves));
}

std::vector<Code> basic_codes() {
  return {proj1(),
          proj2(),
          Code::closure(0, Expr::var(0)),
          k_code(),
          s_code(),
          church(0),
          church(1),
          church(2),
          Code::closure(2, Expr::var(1)),
          Code::closure(0, Expr::app(Expr::var(0), Expr::var(0)))};
}

Code loop_code() {
  const Code omega = Code::closure(0, Expr::app(Expr::var(0), Expr::var(0)));
  return Code::closure(0, Expr::app(Expr::lit(omega), Expr::lit(omega)));
}

}  // namespace mca
