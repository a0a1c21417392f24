#pragma once

// Propositions over codes, the evidence relation φ₁ ≤ₑ φ₂ :=
// ∀c. φ₁(c) ≤ after r ← e·c. φ₂(r), and the program constructs witnessing
// the evidenced-frame structure.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mca/algebra.hpp"
#include "mca/modality.hpp"
#include "mca/separator.hpp"

namespace mca {

// ---------------------------------------------------------------- evidence builders

Code ev_id();
/// <0|e2 (e1 0)>
Code ev_comp(const Code& e1, const Code& e2);
Code ev_top();
/// <1|1 (e1 0) (e2 0)>
Code ev_pair(const Code& e1, const Code& e2);
/// <0|0 p̂1>
Code ev_fst();
/// <0|0 p̂2>
Code ev_snd();
/// <1|e (<2|2 0 1> 0 1)>
Code ev_curry(const Code& e);
/// <0|id (0 p̂1) (0 p̂2)>
Code ev_eval();
/// <0|e (0 p̂1) (0 p̂2)>
Code ev_uncurry(const Code& e);
/// <0|0 a b>: the pair of two values, projected by p̂1 / p̂2.
Code tuple(const Code& a, const Code& b);
/// <0|u>: ignores its argument and returns u.
Code constant_code(const Code& u);

// ---------------------------------------------------------------- propositions

template <class Elem>
class Prop {
 public:
  enum class Kind { Base, Top, Bot, Conj, UImpl };

  static Prop base(std::map<Code, Elem> table, Elem fallback, std::string name = {}) {
    return Prop(Node{Kind::Base, FinPred<Elem>{std::move(table), fallback}, {}, std::move(name)});
  }
  static Prop top() { return Prop(Node{Kind::Top, {}, {}, "⊤"}); }
  static Prop bot() { return Prop(Node{Kind::Bot, {}, {}, "⊥"}); }
  static Prop conj(Prop a, Prop b) { return Prop(Node{Kind::Conj, {}, {std::move(a), std::move(b)}, {}}); }
  /// p ⊃ {q₁, …}; the family holds at most eight members.
  static Prop uimpl(Prop p, std::vector<Prop> family) {
    if (family.size() > 8) throw std::invalid_argument("implication families hold at most 8 propositions");
    std::vector<Prop> kids{std::move(p)};
    for (auto& q : family) kids.push_back(std::move(q));
    return Prop(Node{Kind::UImpl, {}, std::move(kids), {}});
  }

  Kind kind() const { return node_->kind; }
  bool is_base() const { return kind() == Kind::Base; }
  const FinPred<Elem>& fin() const { return node_->fin; }
  const Prop& left() const { return node_->kids.at(0); }
  const Prop& right() const { return node_->kids.at(1); }
  const Prop& premise() const { return node_->kids.at(0); }
  std::vector<Prop> family() const { return {node_->kids.begin() + 1, node_->kids.end()}; }
  const std::string& name() const { return node_->name; }
  const void* identity() const { return node_.get(); }

  /// Codes named by Base nodes reachable from here.
  std::vector<Code> supports() const {
    std::vector<Code> out;
    collect(out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const Prop& a, const Prop& b) { return a.node_ == b.node_; }

 private:
  struct Node {
    Kind kind;
    FinPred<Elem> fin;
    std::vector<Prop> kids;
    std::string name;
  };
  explicit Prop(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  void collect(std::vector<Code>& out) const {
    if (kind() == Kind::Base) {
      for (const auto& [c, v] : fin().table) out.push_back(c);
    }
    for (const auto& k : node_->kids) k.collect(out);
  }

  std::shared_ptr<const Node> node_;
};

template <class H>
std::string show_prop(const H& h, const Prop<typename H::Element>& p) {
  using K = typename Prop<typename H::Element>::Kind;
  switch (p.kind()) {
    case K::Base:
      if (!p.name().empty()) return p.name();
      return "base" + show_pred(h, p.fin());
    case K::Top:
      return "⊤";
    case K::Bot:
      return "⊥";
    case K::Conj:
      return "(" + show_prop(h, p.left()) + " ∧ " + show_prop(h, p.right()) + ")";
    case K::UImpl: {
      std::string out = "(" + show_prop(h, p.premise()) + " ⊃ [";
      bool first = true;
      for (const auto& q : p.family()) {
        if (!first) out += ", ";
        first = false;
        out += show_prop(h, q);
      }
      return out + "])";
    }
  }
  return "?";
}

// ---------------------------------------------------------------- verdicts

struct Verdict {
  enum class Kind { ExactPass, SampledPass, Fail, Indeterminate };
  Kind kind = Kind::ExactPass;
  std::optional<Code> witness;
  std::size_t probes = 0;

  bool passed() const { return kind == Kind::ExactPass || kind == Kind::SampledPass; }
  bool exact() const { return kind == Kind::ExactPass; }
};

std::string_view verdict_name(Verdict::Kind k);

/// Combines verdicts of a conjunction of checks: any failure wins, then
/// indeterminacy, then sampling.
Verdict combine(const Verdict& a, const Verdict& b);

struct FrameOptions {
  std::uint64_t fuel = 4000;
  /// Canonical probe codes for quantifiers that cannot be decided exactly.
  std::vector<Code> probe_codes;
  /// How many universe codes are paired up into tuple probes.
  std::size_t tuple_width = 8;
};

std::vector<Code> default_probe_codes();

// ---------------------------------------------------------------- frame

template <class E, class H>
class Frame {
 public:
  using Element = typename H::Element;
  using P = Prop<Element>;
  using Comp = typename E::Comp;

  struct Value {
    Element value;
    bool exact;
  };

  Frame(Modality<E, H> mod, Separator sep, FrameOptions opts = {})
      : mod_(std::move(mod)), sep_(std::move(sep)), opts_(std::move(opts)) {
    if (opts_.probe_codes.empty()) opts_.probe_codes = default_probe_codes();
  }

  const Modality<E, H>& modality() const { return mod_; }
  const Separator& separator() const { return sep_; }
  const H& omega() const { return mod_.omega; }
  const FrameOptions& options() const { return opts_; }

  /// p(c), with `exact` false when a quantifier inside was sampled.
  Value eval(const P& p, const Code& c, Run& run) const {
    using K = typename P::Kind;
    switch (p.kind()) {
      case K::Base:
        return {p.fin().at(c), true};
      case K::Top:
        return {omega().top(), true};
      case K::Bot:
        return {omega().bottom(), true};
      default:
        break;
    }
    const MemoKey key{p, c};
    if (auto it = memo_->find(key); it != memo_->end()) return it->second;
    Value v = p.kind() == K::Conj ? eval_conj(p, c, run) : eval_uimpl(p, c, run);
    memo_->emplace(key, v);
    return v;
  }

  /// p as a predicate for the modality; clears *exact when a sampled value is used.
  Pred<Element> pred(const P& p, std::shared_ptr<bool> exact) const {
    return {[this, p, exact](const Code& c, Run& run) {
              const Value v = eval(p, c, run);
              if (!v.exact) *exact = false;
              return v.value;
            },
            p.supports()};
  }

  /// after r ← e·c. p(r)
  Value after_apply(const Code& e, const Code& c, const P& p, Run& run) const {
    auto exact = std::make_shared<bool>(true);
    const Element v = mod_(apply(mod_.eff, e, c), pred(p, exact), run);
    return {v, *exact};
  }

  /// The evidence relation p1 ≤ₑ p2. e must belong to the separator.
  Verdict check_evidence(const P& p1, const Code& e, const P& p2, const std::vector<Code>& extra_probes = {}) const {
    if (!sep_.contains(e)) {
      throw std::invalid_argument(print(e) + " is not in the separator '" + sep_.name() + "'");
    }
    return check_evidence_unchecked(p1, e, p2, extra_probes);
  }

  /// The evidence relation for an arbitrary code, bypassing the separator.
  Verdict check_evidence_unchecked(const P& p1, const Code& e, const P& p2,
                                   const std::vector<Code>& extra_probes = {}) const {
    bool exact = true;
    const std::vector<Code> dom = domain(p1, p2, extra_probes, exact);
    Verdict out;
    bool indeterminate = false;
    for (const Code& c : dom) {
      Run run(opts_.fuel);
      try {
        const Value v1 = eval(p1, c, run);
        ++out.probes;
        if (omega().leq(v1.value, omega().bottom())) {
          exact = exact && v1.exact;
          continue;
        }
        const Value v2 = after_apply(e, c, p2, run);
        exact = exact && v1.exact && v2.exact;
        if (!omega().leq(v1.value, v2.value)) {
          out.kind = Verdict::Kind::Fail;
          out.witness = c;
          return out;
        }
      } catch (const FuelExhausted&) {
        indeterminate = true;
      }
    }
    if (indeterminate) {
      out.kind = Verdict::Kind::Indeterminate;
    } else {
      out.kind = exact ? Verdict::Kind::ExactPass : Verdict::Kind::SampledPass;
    }
    return out;
  }

  /// Codes over which ∀c is checked for p1 ≤ p2. Exact when p1 is ⊥ or a Base
  /// proposition with default ⊥: then only its support can matter.
  std::vector<Code> domain(const P& p1, const P& p2, const std::vector<Code>& extra, bool& exact) const {
    using K = typename P::Kind;
    if (p1.kind() == K::Bot) return {};
    if (p1.is_base() && omega().leq(p1.fin().fallback, omega().bottom())) {
      std::vector<Code> out;
      for (const auto& [c, v] : p1.fin().table) {
        if (!omega().leq(v, omega().bottom())) out.push_back(c);
      }
      return out;
    }
    exact = false;
    // Supports first, so the tuple probes pair up the codes the propositions name.
    std::vector<Code> universe = p1.supports();
    for (const Code& c : p2.supports()) universe.push_back(c);
    for (const Code& c : opts_.probe_codes) universe.push_back(c);
    stable_dedupe(universe);
    std::vector<Code> out = universe;
    const std::size_t w = std::min(opts_.tuple_width, universe.size());
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = 0; j < w; ++j) out.push_back(tuple(universe[i], universe[j]));
    }
    for (const Code& c : extra) out.push_back(c);
    dedupe(out);
    return out;
  }

  void clear_memo() const { memo_->clear(); }

 private:
  struct MemoKey {
    P prop;
    Code code;
    bool operator==(const MemoKey& o) const { return prop == o.prop && code == o.code; }
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
      return std::hash<const void*>{}(k.prop.identity()) * 31 + k.code.hash();
    }
  };

  static void stable_dedupe(std::vector<Code>& xs) {
    std::set<Code> seen;
    std::vector<Code> out;
    for (Code& c : xs) {
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
    xs = std::move(out);
  }

  static void dedupe(std::vector<Code>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }

  // (p₁ ∧ p₂)(e) = after(e·p̂1, p₁) ⊓ after(e·p̂2, p₂)
  Value eval_conj(const P& p, const Code& e, Run& run) const {
    const Value a = after_apply(e, proj1(), p.left(), run);
    const Value b = after_apply(e, proj2(), p.right(), run);
    return {omega().meet(a.value, b.value), a.exact && b.exact};
  }

  // (q ⊃ F)(e) = ⨅_{φ ∈ F} ⨅_c (q(c) ⊐ after(e·c, φ))
  Value eval_uimpl(const P& p, const Code& e, Run& run) const {
    using K = typename P::Kind;
    const P& q = p.premise();
    const auto family = p.family();
    Element acc = omega().top();
    bool exact = true;
    if (family.empty() || q.kind() == K::Bot) return {acc, true};
    std::vector<Code> dom;
    if (q.is_base() && omega().leq(q.fin().fallback, omega().bottom())) {
      for (const auto& [c, v] : q.fin().table) {
        if (!omega().leq(v, omega().bottom())) dom.push_back(c);
      }
    } else {
      exact = false;
      dom = q.supports();
      for (const Code& c : opts_.probe_codes) dom.push_back(c);
      dedupe(dom);
    }
    for (const Code& c : dom) {
      const Value qc = eval(q, c, run);
      exact = exact && qc.exact;
      if (omega().leq(qc.value, omega().bottom())) continue;
      for (const P& phi : family) {
        const Value r = after_apply(e, c, phi, run);
        exact = exact && r.exact;
        acc = omega().meet(acc, omega().impl(qc.value, r.value));
      }
    }
    return {acc, exact};
  }

  Modality<E, H> mod_;
  Separator sep_;
  FrameOptions opts_;
  std::shared_ptr<std::unordered_map<MemoKey, Value, MemoHash>> memo_ =
      std::make_shared<std::unordered_map<MemoKey, Value, MemoHash>>();
};

// ---------------------------------------------------------------- tripos

/// φ ≤_I ψ witnessed by a single e, uniformly in i ∈ I.
template <class E, class H>
Verdict tripos_leq(const Frame<E, H>& frame, const std::vector<Prop<typename H::Element>>& phi,
                   const std::vector<Prop<typename H::Element>>& psi, const Code& e,
                   const std::vector<Code>& extra_probes = {}) {
  if (phi.size() != psi.size()) throw std::invalid_argument("tripos_leq: families over different index sets");
  Verdict out;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    out = combine(out, frame.check_evidence(phi[i], e, psi[i], extra_probes));
  }
  return out;
}

/// T(f)(φ) = j ↦ φ(f(j)) for f : J → I given as a table.
template <class Elem>
std::vector<Prop<Elem>> tripos_reindex(const std::vector<std::size_t>& f, const std::vector<Prop<Elem>>& phi) {
  std::vector<Prop<Elem>> out;
  out.reserve(f.size());
  for (std::size_t j : f) out.push_back(phi.at(j));
  return out;
}

}  // namespace mca
