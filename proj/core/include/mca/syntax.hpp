#pragma once

// Surface syntax: parsing, canonical printing, substitution and scope checks.
//
//   term := atom | term atom
//   atom := NAT | '<' NAT '|' term '>' | '#' IDENT | '(' term ')' | 'S' | 'K'

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mca/term.hpp"

namespace mca {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// The combinator codes S = <2|0 2 (1 2)> and K = <1|0>.
const Code& s_code();
const Code& k_code();

Expr parse(std::string_view text);
/// Parses a term that must be a single code literal (e.g. `<1|0>` or `#flip`).
Code parse_code(std::string_view text);

struct PrintOptions {
  /// Print the S and K closures as the atoms `S` and `K`.
  bool sk_names = false;
};

std::string print(const Expr& e, PrintOptions opts = {});
std::string print(const Code& c, PrintOptions opts = {});

bool scope_check(const Expr& e, std::uint32_t n);

/// e[c]: level 0 becomes c, level i+1 becomes i. Closed subterms are shared, not
/// copied. Scope is re-established by Code::closure, which rejects escaping levels.
Expr subst(const Expr& e, const Code& c);

}  // namespace mca
