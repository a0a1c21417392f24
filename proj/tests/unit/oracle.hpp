#pragma once

// A reference reducer for pure terms, written against the raw term structure
// only. It shares no code with the library's evaluator or machine and serves
// as the oracle for differential tests.

#include <cstdint>
#include <optional>

#include "mca/term.hpp"

namespace oracle {

using mca::Code;
using mca::Expr;

/// e[c] by direct recursion on the tree.
inline Expr substitute(const Expr& e, const Code& c) {
  switch (e.tag()) {
    case Expr::Tag::Var:
      return e.level() == 0 ? Expr::lit(c) : Expr::var(e.level() - 1);
    case Expr::Tag::Lit:
      return e;
    case Expr::Tag::App:
      return Expr::app(substitute(e.fun(), c), substitute(e.arg(), c));
  }
  return e;
}

struct OutOfFuel {};

/// Big-step call-by-value reduction. Costs: literal 1, application 3.
class Reducer {
 public:
  explicit Reducer(std::uint64_t fuel) : fuel_(fuel) {}

  Code reduce(const Expr& e) {
    if (e.is_lit()) {
      spend(1);
      return e.code();
    }
    spend(3);
    const Code f = reduce(e.fun());
    const Code a = reduce(e.arg());
    return apply(f, a);
  }

  Code apply(const Code& f, const Code& a) {
    if (f.remaining() > 0) return Code::closure(f.remaining() - 1, substitute(f.body(), a));
    return reduce(substitute(f.body(), a));
  }

  std::uint64_t used() const { return used_; }

 private:
  void spend(std::uint64_t n) {
    if (n > fuel_) throw OutOfFuel{};
    fuel_ -= n;
    used_ += n;
  }
  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
};

struct Result {
  std::optional<Code> value;
  std::uint64_t used = 0;
};

inline Result run(const Expr& e, std::uint64_t fuel) {
  Reducer r(fuel);
  try {
    Code c = r.reduce(e);
    return {c, r.used()};
  } catch (const OutOfFuel&) {
    return {std::nullopt, r.used()};
  }
}

}  // namespace oracle
