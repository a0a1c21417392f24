#pragma once

// Finite complete Heyting prealgebras. Equality is never assumed: two elements
// are equivalent when each is below the other.
//
// An instance H provides Element, leq, top, bottom, meet, join, impl, inf,
// elements() and show().

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mca/report.hpp"

namespace mca {

/// {⊥ < ⊤}, truth values of a single proposition.
struct TwoPoint {
  using Element = bool;

  bool leq(bool a, bool b) const { return !a || b; }
  bool top() const { return true; }
  bool bottom() const { return false; }
  bool meet(bool a, bool b) const { return a && b; }
  bool join(bool a, bool b) const { return a || b; }
  bool impl(bool a, bool b) const { return !a || b; }
  bool inf(const std::vector<bool>& xs) const;
  std::vector<bool> elements() const { return {false, true}; }
  std::string show(bool a) const { return a ? "⊤" : "⊥"; }
};

/// A finite preorder on {0, …, n-1}, n ≤ 64, stored as up-sets per point.
class Poset {
 public:
  /// Reflexive-transitive closure of the covering pairs (lo, hi).
  static Poset from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers);
  static Poset chain(std::size_t n);

  std::size_t size() const { return up_.size(); }
  bool le(std::size_t x, std::size_t y) const { return (up_[x] >> y) & 1u; }
  /// Bitmask of {y | x ≤ y}.
  std::uint64_t up(std::size_t x) const { return up_[x]; }
  std::uint64_t all() const;

 private:
  std::vector<std::uint64_t> up_;
};

/// Upward-closed subsets of a finite preorder under inclusion, with the
/// Alexandrov implication: impl(U, V) = {x | ∀y ≥ x. y ∈ U ⇒ y ∈ V}.
class UpperSets {
 public:
  using Element = std::uint64_t;

  explicit UpperSets(Poset poset) : poset_(std::move(poset)) {}

  bool leq(Element a, Element b) const { return (a & ~b) == 0; }
  Element top() const { return poset_.all(); }
  Element bottom() const { return 0; }
  Element meet(Element a, Element b) const { return a & b; }
  Element join(Element a, Element b) const { return a | b; }
  Element impl(Element a, Element b) const;
  Element inf(const std::vector<Element>& xs) const;
  /// Every upper set; exponential, intended for small posets.
  std::vector<Element> elements() const;
  std::string show(Element a) const;

  bool is_upper(Element a) const;
  /// The least upper set containing the point x.
  Element principal(std::size_t x) const { return poset_.up(x); }
  const Poset& poset() const { return poset_; }

 private:
  Poset poset_;
};

/// Future-stable predicates on states: upper sets of the chain 0 ≤ 1 ≤ … ≤ N.
/// States beyond N behave like N.
class StatePred : public UpperSets {
 public:
  explicit StatePred(std::uint64_t max_state);

  std::uint64_t max_state() const { return poset().size() - 1; }
  bool at(Element a, std::uint64_t state) const;
  /// {σ | σ ≥ from}; from > N gives ⊥.
  Element from(std::uint64_t state) const;
  std::string show(Element a) const;
};

/// Exhaustive check of the prealgebra axioms over h.elements().
template <class H>
Report check_heyting_laws(const H& h, std::string suite = "heyting") {
  Report report(std::move(suite));
  const auto xs = h.elements();
  auto equiv = [&](auto a, auto b) { return h.leq(a, b) && h.leq(b, a); };
  auto show = [&](auto a) { return h.show(a); };
  auto& refl = report.law("reflexivity");
  auto& trans = report.law("transitivity");
  auto& bounds = report.law("bottom ≤ a ≤ top");
  auto& glb = report.law("meet is a greatest lower bound");
  auto& empty_inf = report.law("inf of the empty family is top");
  auto& single_inf = report.law("inf of a singleton is equivalent to it");
  auto& units = report.law("impl(top, a) ≡ a and meet(a, top) ≡ a");
  auto& resid = report.law("residuation: meet(a, b) ≤ c iff a ≤ impl(b, c)");
  empty_inf.record(equiv(h.inf({}), h.top()), [] { return std::string("inf {}"); });
  for (const auto& a : xs) {
    refl.record(h.leq(a, a), [&] { return show(a); });
    bounds.record(h.leq(h.bottom(), a) && h.leq(a, h.top()), [&] { return show(a); });
    single_inf.record(equiv(h.inf({a}), a), [&] { return show(a); });
    units.record(equiv(h.impl(h.top(), a), a) && equiv(h.meet(a, h.top()), a), [&] { return show(a); });
    for (const auto& b : xs) {
      const auto m = h.meet(a, b);
      for (const auto& c : xs) {
        auto triple = [&] { return show(a) + ", " + show(b) + ", " + show(c); };
        if (h.leq(a, b) && h.leq(b, c)) trans.record(h.leq(a, c), triple);
        const bool lower = h.leq(m, a) && h.leq(m, b);
        const bool greatest = !(h.leq(c, a) && h.leq(c, b)) || h.leq(c, m);
        glb.record(lower && greatest, triple);
        resid.record(h.leq(h.meet(a, b), c) == h.leq(a, h.impl(b, c)), triple);
      }
    }
  }
  return report;
}

/// A deliberately wrong implication (impl = meet), used as a negative control.
template <class H>
struct BrokenImpl : H {
  explicit BrokenImpl(H h = H()) : H(std::move(h)) {}
  typename H::Element impl(typename H::Element a, typename H::Element b) const { return H::meet(a, b); }
};

}  // namespace mca
