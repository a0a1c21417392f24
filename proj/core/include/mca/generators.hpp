#pragma once

// Seeded random generation of expressions, closures and code pools.

#include <cstdint>
#include <random>
#include <vector>

#include "mca/term.hpp"

namespace mca {

using Rng = std::mt19937_64;

/// A random expression in E_scope of depth ≤ depth. Leaves are variables
/// (when scope > 0) or literals drawn from `leaves`.
Expr random_expr(Rng& rng, std::uint32_t scope, std::uint32_t depth, const std::vector<Code>& leaves);

/// <n|e> with n ≤ max_remaining and e ∈ E_{n+1} of depth ≤ depth. Literal
/// leaves are taken from `leaves` or are themselves small random closures.
Code random_closure(Rng& rng, std::uint32_t max_remaining, std::uint32_t depth, const std::vector<Code>& leaves);

/// A closed application tree over random closures and `leaves`.
Expr random_closed_term(Rng& rng, std::uint32_t depth, const std::vector<Code>& leaves);

/// Small pure codes used as argument pools: projections, numerals, S, K, …
std::vector<Code> basic_codes();

/// <0|<0|0 0> <0|0 0>>: applying it to anything diverges.
Code loop_code();

template <class T>
T pick(Rng& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

}  // namespace mca
