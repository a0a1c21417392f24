#pragma once

// M-modalities: "after x ← m. φ(x)", one per effect, and executable checks of
// their laws (After-Return, After-Bind, Internal Monotonicity), the derived
// lemmas, naturality and separator progress.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mca/algebra.hpp"
#include "mca/effects.hpp"
#include "mca/order.hpp"
#include "mca/report.hpp"
#include "mca/separator.hpp"
#include "mca/syntax.hpp"

namespace mca {

/// A predicate on codes. `support` lists the codes it singles out; the CPS
/// modality quantifies over them when approximating ⨅ over all codes.
template <class Elem>
struct Pred {
  std::function<Elem(const Code&, Run&)> fn;
  std::vector<Code> support;

  Elem operator()(const Code& c, Run& run) const { return fn(c, run); }
};

/// A finite-support predicate: explicit values on a table, a default elsewhere.
template <class Elem>
struct FinPred {
  std::map<Code, Elem> table;
  Elem fallback;

  Elem at(const Code& c) const {
    auto it = table.find(c);
    return it == table.end() ? fallback : it->second;
  }

  Pred<Elem> pred(std::vector<Code> extra_support = {}) const {
    std::vector<Code> support = std::move(extra_support);
    for (const auto& [c, v] : table) support.push_back(c);
    return {[self = *this](const Code& c, Run&) { return self.at(c); }, std::move(support)};
  }
};

template <class E, class H>
struct Modality {
  using Element = typename H::Element;
  using Comp = typename E::Comp;
  using After = std::function<Element(const Comp&, const Pred<Element>&, Run&)>;
  using AfterBind = std::function<Element(const Comp&, const Kleisli<Comp>&, const Pred<Element>&, Run&)>;

  std::string name;
  E eff;
  H omega;
  After after;
  /// after x ← m. after y ← f(x). φ(y). Defaults to nesting `after`.
  AfterBind after_bind_lhs;
  /// Decided relative to a finite dictionary of continuations rather than exactly.
  bool dictionary_relative = false;

  Element operator()(const Comp& m, const Pred<Element>& phi, Run& run) const { return after(m, phi, run); }

  Element nested(const Comp& m, const Kleisli<Comp>& f, const Pred<Element>& phi, Run& run) const {
    if (after_bind_lhs) return after_bind_lhs(m, f, phi, run);
    Pred<Element> inner{[this, f, phi](const Code& x, Run& r) { return after(f(x), phi, r); }, phi.support};
    return after(m, inner, run);
  }
};

namespace detail {

/// Observes m, mapping exhaustion of a bounded sub-run to the empty result.
template <class E>
typename E::Observation observe_or_empty(const typename E::Comp& m, const typename E::Context& ctx, Run& run,
                                         std::uint64_t cap) {
  try {
    return run.nested(cap, [&](Run& child) { return m(ctx, child); });
  } catch (const FuelExhausted&) {
    return typename E::Observation{};
  }
}

}  // namespace detail

// ---------------------------------------------------------------- partial / power

/// ⊔ over the results: the PCA modality, and angelic nondeterminism.
template <class E>
Modality<E, TwoPoint> angelic(E eff) {
  Modality<E, TwoPoint> mod{std::string(effect_name(E::kind)) + "-angelic", eff, TwoPoint{}, {}, {}};
  mod.after = [eff](const typename E::Comp& m, const Pred<bool>& phi, Run& run) {
    for (const Code& x : eff.values(m(typename E::Context{}, run))) {
      if (phi(x, run)) return true;
    }
    return false;
  };
  return mod;
}

/// m⇓ ⊓ ⨅ over the results, with m⇓ = "m has a result".
inline Modality<PowerEffect, TwoPoint> power_demonic(PowerEffect eff) {
  Modality<PowerEffect, TwoPoint> mod{"power-demonic", eff, TwoPoint{}, {}, {}};
  mod.after = [](const PowerEffect::Comp& m, const Pred<bool>& phi, Run& run) {
    const auto xs = m({}, run);
    if (xs.empty()) return false;
    for (const Code& x : xs) {
      if (!phi(x, run)) return false;
    }
    return true;
  };
  return mod;
}

/// ⨅ over the results with no termination guard. Not consistent: a computation
/// with no results (fail, or divergence cut off after `timeout` fuel) gets ⊤.
template <class E>
Modality<E, TwoPoint> inf_only(E eff, std::uint64_t timeout = 2000) {
  Modality<E, TwoPoint> mod{std::string(effect_name(E::kind)) + "-inf-only", eff, TwoPoint{}, {}, {}};
  mod.after = [eff, timeout](const typename E::Comp& m, const Pred<bool>& phi, Run& run) {
    for (const Code& x : eff.values(detail::observe_or_empty<E>(m, {}, run, timeout))) {
      if (!phi(x, run)) return false;
    }
    return true;
  };
  return mod;
}

// ---------------------------------------------------------------- state

/// (after x ← m. φ x)^σ = ⨅_{σ' ≥ σ} ⊔_{(σ'', x) ∈ m(σ')} φ(x)^σ'', or with
/// ⨅ and the guard m(σ')⇓ for the demonic variant. σ' ranges over 0..N.
inline Modality<StateEffect, StatePred> state_modality(StateEffect eff, bool demonic) {
  StatePred omega(eff.max_probe());
  Modality<StateEffect, StatePred> mod{demonic ? "state-demonic" : "state-angelic", eff, omega, {}, {}};
  mod.after = [omega, demonic](const StateEffect::Comp& m, const Pred<std::uint64_t>& phi, Run& run) {
    const std::uint64_t n = omega.max_state();
    // holds[s]: the inner join/meet at start state s.
    std::vector<bool> holds(n + 1);
    for (std::uint64_t s = 0; s <= n; ++s) {
      const auto results = m(s, run);
      bool v = demonic ? !results.empty() : false;
      for (const auto& [s2, x] : results) {
        const bool here = omega.at(phi(x, run), s2);
        if (demonic) {
          v = v && here;
        } else {
          v = v || here;
        }
      }
      holds[s] = v;
    }
    std::uint64_t out = 0;
    bool all_later = true;
    for (std::uint64_t s = n + 1; s-- > 0;) {
      all_later = all_later && holds[s];
      if (all_later) out |= std::uint64_t{1} << s;
    }
    return out;
  };
  return mod;
}

// ---------------------------------------------------------------- reader

/// ⋂_{p ∈ P} ⋃_{x ∈ m(p)} φ(x). With P empty this is ⊤ and the logic is trivial.
inline Modality<ReaderEffect, TwoPoint> reader_modality(ReaderEffect eff) {
  Modality<ReaderEffect, TwoPoint> mod{"reader", eff, TwoPoint{}, {}, {}};
  mod.after = [eff](const ReaderEffect::Comp& m, const Pred<bool>& phi, Run& run) {
    for (const Param& p : eff.probes()) {
      const auto x = m(p, run);
      if (!x || !phi(*x, run)) return false;
    }
    return true;
  };
  return mod;
}

// ---------------------------------------------------------------- cps

/// ⨅_k ((⨅_a φ(a) ⊐ [k(a) ∈ pole]) ⊐ [m(k) ∈ pole]), with k ranging over the
/// continuation dictionary plus the characteristic continuation of φ, and a
/// over `universe`, the support of φ and k, and the codes m passes to k.
class CpsAfter {
 public:
  CpsAfter(std::set<Answer> pole, std::vector<Code> universe)
      : pole_(std::make_shared<const std::set<Answer>>(std::move(pole))),
        universe_(std::make_shared<const std::vector<Code>>(std::move(universe))) {}

  bool in_pole(const Answer& a) const { return pole_->count(a) > 0; }
  const std::set<Answer>& pole() const { return *pole_; }

  /// χ_φ: answers inside the pole exactly where φ holds. Its premise holds by
  /// construction. Unset when the pole is empty.
  std::optional<Continuation> characteristic(const Pred<bool>& phi) const {
    if (pole_->empty()) return std::nullopt;
    const Answer in = *pole_->begin();
    std::string out_token = "out";
    while (in_pole(Answer::token(out_token))) out_token += "'";
    const Answer out = Answer::token(out_token);
    return Continuation::function("χ", [phi, in, out](const Code& a, Run& r) { return phi(a, r) ? in : out; },
                                  phi.support);
  }

  /// `fed_only_from`: continuations from this index on are checked against
  /// only the codes m passes to them.
  bool operator()(const CpsEffect::Comp& m, const Pred<bool>& phi, const std::vector<Continuation>& dict, Run& run,
                  std::size_t fed_only_from = SIZE_MAX) const {
    if (auto chi = characteristic(phi); chi && !in_pole(m(*chi, run))) return false;
    for (std::size_t i = 0; i < dict.size(); ++i) {
      const Continuation& k = dict[i];
      auto fed = std::make_shared<std::vector<Code>>();
      auto recording = Continuation::function(
          k.name(), [k, fed](const Code& c, Run& r) {
            fed->push_back(c);
            return k(c, r);
          },
          k.support());
      if (in_pole(m(recording, run))) continue;
      // m(k) is outside the pole: k must refute the premise somewhere.
      std::vector<Code> us = *fed;
      if (i < fed_only_from) {
        us.insert(us.end(), universe_->begin(), universe_->end());
        us.insert(us.end(), phi.support.begin(), phi.support.end());
        us.insert(us.end(), k.support().begin(), k.support().end());
      }
      std::sort(us.begin(), us.end());
      us.erase(std::unique(us.begin(), us.end()), us.end());
      bool premise = true;
      for (const Code& a : us) {
        if (phi(a, run) && !in_pole(k(a, run))) {
          premise = false;
          break;
        }
      }
      if (premise) return false;
    }
    return true;
  }

 private:
  std::shared_ptr<const std::set<Answer>> pole_;
  std::shared_ptr<const std::vector<Code>> universe_;
};

inline Modality<CpsEffect, TwoPoint> cps_modality(CpsEffect eff, std::set<Answer> pole, std::vector<Code> universe) {
  CpsAfter core(std::move(pole), std::move(universe));
  Modality<CpsEffect, TwoPoint> mod{"cps", eff, TwoPoint{}, {}, {}, true};
  mod.after = [eff, core](const CpsEffect::Comp& m, const Pred<bool>& phi, Run& run) {
    return core(m, phi, eff.probes(), run);
  };
  // Bind's left side also quantifies over the continuations x ↦ f(x)(k) that
  // bind itself builds; their relevant codes are exactly the ones m feeds them.
  mod.after_bind_lhs = [eff, core](const CpsEffect::Comp& m, const Kleisli<CpsEffect::Comp>& f, const Pred<bool>& phi,
                                   Run& run) {
    const auto dict = eff.probes();
    std::vector<Continuation> extended = dict;
    std::vector<Continuation> bound = dict;
    if (auto chi = core.characteristic(phi)) bound.push_back(*chi);
    for (const Continuation& k : bound) {
      extended.push_back(Continuation::function(
          "bind/" + k.name(), [f, k](const Code& x, Run& r) { return f(x)(k, r); }, k.support()));
    }
    Pred<bool> inner{[core, f, phi, dict](const Code& x, Run& r) { return core(f(x), phi, dict, r); }, phi.support};
    return core(m, inner, extended, run, dict.size());
  };
  return mod;
}

// ---------------------------------------------------------------- law checks

/// A computation sampled for a law check, with a printable description.
template <class Comp>
struct Sample {
  Comp comp;
  std::string label;
};

/// Runs `body` with a fresh budget; exhaustion counts as indeterminate.
template <class F>
void decide(LawResult& law, std::uint64_t fuel, bool exact, F&& body) {
  Run run(fuel);
  try {
    const auto [ok, witness] = body(run);
    law.record(ok, [&] { return witness(); });
    if (ok) ++(exact ? law.exact : law.sampled);
  } catch (const FuelExhausted&) {
    ++law.indeterminate;
  }
}

/// ⨅_c (φ₁(c) ⊐ φ₂(c)) computed exactly over the two supports plus the defaults.
template <class H>
typename H::Element global_impl(const H& h, const FinPred<typename H::Element>& p1,
                                const FinPred<typename H::Element>& p2) {
  auto out = h.impl(p1.fallback, p2.fallback);
  for (const auto& [c, v] : p1.table) out = h.meet(out, h.impl(v, p2.at(c)));
  for (const auto& [c, v] : p2.table) out = h.meet(out, h.impl(p1.at(c), v));
  return out;
}

template <class H>
bool pointwise_leq(const H& h, const FinPred<typename H::Element>& p1, const FinPred<typename H::Element>& p2) {
  if (!h.leq(p1.fallback, p2.fallback)) return false;
  for (const auto& [c, v] : p1.table) {
    if (!h.leq(v, p2.at(c))) return false;
  }
  for (const auto& [c, v] : p2.table) {
    if (!h.leq(p1.at(c), v)) return false;
  }
  return true;
}

template <class Elem>
std::vector<Code> joint_support(const FinPred<Elem>& a, const FinPred<Elem>& b) {
  std::vector<Code> out;
  for (const auto& [c, v] : a.table) out.push_back(c);
  for (const auto& [c, v] : b.table) out.push_back(c);
  return out;
}

template <class H>
std::string show_pred(const H& h, const FinPred<typename H::Element>& p) {
  std::string out = "{";
  for (const auto& [c, v] : p.table) out += print(c) + ": " + h.show(v) + ", ";
  return out + "default: " + h.show(p.fallback) + "}";
}

template <class E, class H>
struct ModalityInstances {
  using Element = typename H::Element;
  std::vector<Code> codes;
  std::vector<Sample<typename E::Comp>> comps;
  /// Kleisli arrows x ↦ g·x, one per code g.
  std::vector<Code> arrows;
  std::vector<FinPred<Element>> preds;
  std::vector<Element> thetas;
};

/// After-Return, After-Bind and Internal Monotonicity, each over `count` instances.
template <class E, class H>
Report check_modality_laws(const Modality<E, H>& mod, const ModalityInstances<E, H>& in, std::size_t count,
                           std::uint64_t fuel) {
  using Element = typename H::Element;
  const H& h = mod.omega;
  const bool exact = !mod.dictionary_relative;
  Report report("modality " + mod.name);
  auto& ret_law = report.law("after-return");
  auto& bind_law = report.law("after-bind");
  auto& mono_law = report.law("internal-monotonicity");
  for (std::size_t i = 0; i < count; ++i) {
    const Code& a = in.codes[i % in.codes.size()];
    const auto& p = in.preds[(i * 7 + 1) % in.preds.size()];
    const auto& q = in.preds[(i * 5 + 3) % in.preds.size()];
    const auto& sample = in.comps[(i * 3) % in.comps.size()];
    const Code& g = in.arrows[(i * 11 + 2) % in.arrows.size()];
    const auto support = joint_support(p, q);
    const Pred<Element> phi = p.pred(support);
    const Pred<Element> psi = q.pred(support);

    decide(ret_law, fuel, exact, [&](Run& run) {
      std::vector<Code> sup = support;
      sup.push_back(a);
      const Pred<Element> phi_a = p.pred(sup);
      const Element lhs = phi_a(a, run);
      const Element rhs = mod(mod.eff.ret(a), phi_a, run);
      return std::pair{h.leq(lhs, rhs), std::function<std::string()>([&, lhs, rhs] {
                         return "a=" + print(a) + " φ=" + show_pred(h, p) + ": " + h.show(lhs) + " ≰ " + h.show(rhs);
                       })};
    });

    decide(bind_law, fuel, exact, [&](Run& run) {
      const E eff = mod.eff;
      Kleisli<typename E::Comp> f = [eff, g](const Code& x) { return apply(eff, g, x); };
      const Element lhs = mod.nested(sample.comp, f, phi, run);
      const Element rhs = mod(eff.bind(sample.comp, f), phi, run);
      return std::pair{h.leq(lhs, rhs), std::function<std::string()>([&, lhs, rhs] {
                         return "m=" + sample.label + " f=" + print(g) + " φ=" + show_pred(h, p) + ": " +
                                h.show(lhs) + " ≰ " + h.show(rhs);
                       })};
    });

    decide(mono_law, fuel, exact, [&](Run& run) {
      const Element lhs = global_impl(h, p, q);
      const Element rhs = h.impl(mod(sample.comp, phi, run), mod(sample.comp, psi, run));
      return std::pair{h.leq(lhs, rhs), std::function<std::string()>([&, lhs, rhs] {
                         return "m=" + sample.label + " φ1=" + show_pred(h, p) + " φ2=" + show_pred(h, q) + ": " +
                                h.show(lhs) + " ≰ " + h.show(rhs);
                       })};
    });
  }
  return report;
}

/// after-mono, after-imp and after-conj over the same kind of instances.
template <class E, class H>
Report check_derived_lemmas(const Modality<E, H>& mod, const ModalityInstances<E, H>& in, std::size_t count,
                            std::uint64_t fuel) {
  using Element = typename H::Element;
  const H& h = mod.omega;
  const bool exact = !mod.dictionary_relative;
  Report report("lemmas " + mod.name);
  auto& mono = report.law("after-mono");
  auto& imp = report.law("after-imp");
  auto& conj = report.law("after-conj");
  for (std::size_t i = 0; i < count; ++i) {
    const auto& sample = in.comps[(i * 3 + 1) % in.comps.size()];
    const auto& p = in.preds[(i * 7 + 2) % in.preds.size()];
    auto q = in.preds[(i * 5 + 4) % in.preds.size()];
    const Element theta = in.thetas[i % in.thetas.size()];
    // Make the monotonicity premise hold: q := p ⊔ q pointwise.
    FinPred<Element> upper{q.table, h.join(p.fallback, q.fallback)};
    for (const auto& [c, v] : p.table) upper.table[c] = h.join(v, q.at(c));
    for (auto& [c, v] : upper.table) v = h.join(v, p.at(c));
    const auto support = joint_support(p, upper);
    const Pred<Element> phi = p.pred(support);
    const Pred<Element> phi_up = upper.pred(support);
    const Pred<Element> theta_imp{[h, theta, phi](const Code& c, Run& r) { return h.impl(theta, phi(c, r)); },
                                  support};
    const Pred<Element> theta_meet{[h, theta, phi](const Code& c, Run& r) { return h.meet(theta, phi(c, r)); },
                                   support};
    auto label = [&] { return "m=" + sample.label + " φ=" + show_pred(h, p) + " θ=" + h.show(theta); };

    decide(mono, fuel, exact, [&](Run& run) {
      const bool premise = pointwise_leq(h, p, upper);
      const bool ok = !premise || h.leq(mod(sample.comp, phi, run), mod(sample.comp, phi_up, run));
      return std::pair{ok, std::function<std::string()>(label)};
    });
    decide(imp, fuel, exact, [&](Run& run) {
      const bool ok = h.leq(mod(sample.comp, theta_imp, run), h.impl(theta, mod(sample.comp, phi, run)));
      return std::pair{ok, std::function<std::string()>(label)};
    });
    decide(conj, fuel, exact, [&](Run& run) {
      const bool ok = h.leq(h.meet(theta, mod(sample.comp, phi, run)), mod(sample.comp, theta_meet, run));
      return std::pair{ok, std::function<std::string()>(label)};
    });
  }
  return report;
}

/// after(map f m, φ) ≡ after(m, φ ∘ f) for renamings f given as finite tables.
template <class E, class H>
Report check_naturality(const Modality<E, H>& mod, const ModalityInstances<E, H>& in,
                        const std::vector<std::map<Code, Code>>& renamings, std::size_t count, std::uint64_t fuel) {
  using Element = typename H::Element;
  const H& h = mod.omega;
  Report report("naturality " + mod.name);
  auto& law = report.law("after(map f m, φ) ≡ after(m, φ∘f)");
  for (std::size_t i = 0; i < count; ++i) {
    const auto& sample = in.comps[i % in.comps.size()];
    const auto& p = in.preds[(i * 3 + 1) % in.preds.size()];
    const auto& table = renamings[i % renamings.size()];
    auto f = [table](const Code& c) {
      auto it = table.find(c);
      return it == table.end() ? c : it->second;
    };
    std::vector<Code> support;
    for (const auto& [from, to] : table) {
      support.push_back(from);
      support.push_back(to);
    }
    for (const auto& [c, v] : p.table) support.push_back(c);
    const Pred<Element> phi = p.pred(support);
    const Pred<Element> phi_f{[phi, f](const Code& c, Run& r) { return phi(f(c), r); }, support};
    const E eff = mod.eff;
    const auto mapped = eff.bind(sample.comp, [eff, f](const Code& x) { return eff.ret(f(x)); });
    decide(law, fuel, !mod.dictionary_relative, [&](Run& run) {
      const Element lhs = mod(mapped, phi, run);
      const Element rhs = mod(sample.comp, phi_f, run);
      return std::pair{h.leq(lhs, rhs) && h.leq(rhs, lhs),
                       std::function<std::string()>([&] { return "m=" + sample.label; })};
    });
  }
  return report;
}

/// Progress: after(c_f·c_a, const ⊥) ≤ ⊥ for member pairs.
template <class E, class H>
Report check_separator_progress(const Modality<E, H>& mod, const Separator& sep, const std::vector<Code>& members,
                                std::size_t pairs, std::uint64_t fuel, bool expect_failure = false) {
  using Element = typename H::Element;
  const H& h = mod.omega;
  Report report("progress " + mod.name + " / " + sep.name());
  auto& law = report.law("after(c_f·c_a, ⊥) ≤ ⊥");
  law.expect_failure = expect_failure;
  const Pred<Element> bot{[h](const Code&, Run&) { return h.bottom(); }, {}};
  const std::size_t n = members.size();
  for (std::size_t i = 0; i < pairs && n > 0; ++i) {
    const Code& f = members[i % n];
    const Code& a = members[(i / n + i * 7) % n];
    if (!sep.contains(f) || !sep.contains(a)) continue;
    decide(law, fuel, !mod.dictionary_relative, [&](Run& run) {
      const Element v = mod(apply(mod.eff, f, a), bot, run);
      return std::pair{h.leq(v, h.bottom()), std::function<std::string()>([&, v] {
                         return print(f) + " · " + print(a) + " gives " + h.show(v);
                       })};
    });
  }
  return report;
}

}  // namespace mca
