#pragma once

// Generated-instance checks of the evidenced-frame rules, consistency and the
// tripos order. Rules with premises are generate-and-filter: instances whose
// premise fails are counted as vacuous and do not count towards the target.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mca/frame.hpp"
#include "mca/generators.hpp"

namespace mca {

/// Random propositions over a fixed pool of codes.
template <class H>
class PropGen {
 public:
  using Element = typename H::Element;
  using P = Prop<Element>;

  PropGen(H h, std::vector<Code> codes, std::uint64_t seed) : h_(std::move(h)), codes_(std::move(codes)), rng_(seed) {
    for (const auto& x : h_.elements()) {
      if (!h_.leq(x, h_.bottom())) nonbottom_.push_back(x);
    }
  }

  Rng& rng() { return rng_; }
  const std::vector<Code>& codes() const { return codes_; }

  Element value() { return pick(rng_, nonbottom_); }

  /// A Base proposition with default ⊥ and at most `max_support` entries.
  P base(std::size_t max_support = 3) {
    std::map<Code, Element> table;
    const auto n = std::uniform_int_distribution<std::size_t>(1, max_support)(rng_);
    for (std::size_t i = 0; i < n; ++i) table[pick(rng_, codes_)] = value();
    return P::base(std::move(table), h_.bottom());
  }

  /// A Base proposition pointwise above p, which must be Base.
  P above(const P& p) {
    std::map<Code, Element> table = p.fin().table;
    for (auto& [c, v] : table) {
      if (coin(0.3)) v = h_.join(v, value());
    }
    if (coin(0.5)) {
      const Code& c = pick(rng_, codes_);
      table[c] = h_.join(p.fin().at(c), value());
    }
    return P::base(std::move(table), p.fin().fallback);
  }

  /// Base with probability ½, otherwise a small composite.
  P any(int depth = 1) {
    const auto r = std::uniform_int_distribution<int>(0, 9)(rng_);
    if (depth <= 0 || r < 5) return base();
    if (r == 5) return P::top();
    if (r < 8) return P::conj(any(depth - 1), any(depth - 1));
    std::vector<P> fam{any(depth - 1)};
    if (coin(0.3)) fam.push_back(any(depth - 1));
    return P::uimpl(base(), fam);
  }

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

 private:
  H h_;
  std::vector<Code> codes_;
  Rng rng_;
  std::vector<Element> nonbottom_;
};

struct EfOptions {
  /// Non-vacuous instances per rule.
  std::size_t instances = 100;
  /// Attempts per rule before giving up on the target.
  std::size_t max_attempts = 20000;
  std::uint64_t seed = 1;
};

/// Codes the generated instances draw from.
struct EfPools {
  /// Codes propositions talk about.
  std::vector<Code> codes;
  /// Evidence for rules taking arbitrary evidence (separator members).
  std::vector<Code> evidence;
  /// Evidence expecting a pair, for the implication rules.
  std::vector<Code> binary;
};

namespace detail {

struct Instance {
  Verdict verdict;
  std::string label;
};

template <class F>
void fill_row(LawResult& law, const EfOptions& opt, F&& attempt) {
  for (std::size_t tries = 0; law.checked < opt.instances && tries < opt.max_attempts; ++tries) {
    std::optional<Instance> inst = attempt();
    if (!inst) {
      ++law.vacuous;
      continue;
    }
    if (inst->verdict.kind == Verdict::Kind::Indeterminate) {
      ++law.indeterminate;
      continue;
    }
    const bool ok = inst->verdict.passed();
    law.record(ok, [&] {
      std::string w = inst->label;
      if (inst->verdict.witness) w += " at c=" + print(*inst->verdict.witness);
      return w;
    });
    if (ok) ++(inst->verdict.exact() ? law.exact : law.sampled);
  }
}

inline std::vector<Code> members(const Separator& sep, const std::vector<Code>& xs) {
  std::vector<Code> out;
  for (const Code& c : xs) {
    if (sep.contains(c)) out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// The eight rules plus the uncurry lemma, over generated instances.
template <class E, class H>
Report check_ef_laws(const Frame<E, H>& frame, const EfPools& pools, const EfOptions& opt) {
  using P = Prop<typename H::Element>;
  const H& h = frame.omega();
  const Separator& sep = frame.separator();
  const std::vector<Code> ev = detail::members(sep, pools.evidence);
  const std::vector<Code> bin = detail::members(sep, pools.binary);
  PropGen<H> gen(h, pools.codes, opt.seed);
  Rng& rng = gen.rng();
  auto sp = [&](const P& p) { return show_prop(h, p); };
  auto chk = [&](const P& a, const Code& e, const P& b, const std::vector<Code>& extra = {}) {
    return frame.check_evidence(a, e, b, extra);
  };
  // Tuples of evidence with prop codes: probes that realise implications.
  std::vector<Code> impl_probes;
  for (const Code& f : ev) {
    for (const Code& a : pools.codes) impl_probes.push_back(tuple(f, a));
  }

  Report report("ef " + frame.modality().name + " / " + sep.name());

  auto& refl = report.law("reflexivity: φ ≤_id φ");
  detail::fill_row(refl, opt, [&]() -> std::optional<detail::Instance> {
    const P phi = gen.any();
    return detail::Instance{chk(phi, ev_id(), phi), sp(phi)};
  });

  auto& trans = report.law("transitivity: φ1 ≤e1 φ2, φ2 ≤e2 φ3 ⇒ φ1 ≤comp(e1,e2) φ3");
  detail::fill_row(trans, opt, [&]() -> std::optional<detail::Instance> {
    const P p1 = gen.base();
    const P p2 = gen.coin(0.6) ? gen.above(p1) : gen.base();
    const P p3 = gen.coin(0.6) ? gen.above(p2) : gen.base();
    const Code& e1 = pick(rng, ev);
    const Code& e2 = pick(rng, ev);
    if (!chk(p1, e1, p2).passed() || !chk(p2, e2, p3).passed()) return std::nullopt;
    return detail::Instance{chk(p1, ev_comp(e1, e2), p3),
                            sp(p1) + " ≤ " + sp(p2) + " ≤ " + sp(p3) + " via " + print(e1) + ", " + print(e2)};
  });

  auto& top = report.law("top: φ ≤_top ⊤");
  detail::fill_row(top, opt, [&]() -> std::optional<detail::Instance> {
    const P phi = gen.any();
    return detail::Instance{chk(phi, ev_top(), P::top()), sp(phi)};
  });

  auto& conj_intro = report.law("conj-intro: φ ≤e1 φ1, φ ≤e2 φ2 ⇒ φ ≤pair(e1,e2) φ1∧φ2");
  detail::fill_row(conj_intro, opt, [&]() -> std::optional<detail::Instance> {
    const P phi = gen.base();
    const P p1 = gen.coin(0.6) ? gen.above(phi) : gen.base();
    const P p2 = gen.coin(0.6) ? gen.above(phi) : gen.base();
    const Code& e1 = pick(rng, ev);
    const Code& e2 = pick(rng, ev);
    if (!chk(phi, e1, p1).passed() || !chk(phi, e2, p2).passed()) return std::nullopt;
    return detail::Instance{chk(phi, ev_pair(e1, e2), P::conj(p1, p2)),
                            sp(phi) + " ≤ " + sp(p1) + ", " + sp(p2) + " via " + print(e1) + ", " + print(e2)};
  });

  auto& fst = report.law("conj-elim-1: φ1∧φ2 ≤fst φ1");
  detail::fill_row(fst, opt, [&]() -> std::optional<detail::Instance> {
    const P p1 = gen.any();
    const P p2 = gen.any();
    return detail::Instance{chk(P::conj(p1, p2), ev_fst(), p1), sp(p1) + " ∧ " + sp(p2)};
  });

  auto& snd = report.law("conj-elim-2: φ1∧φ2 ≤snd φ2");
  detail::fill_row(snd, opt, [&]() -> std::optional<detail::Instance> {
    const P p1 = gen.any();
    const P p2 = gen.any();
    return detail::Instance{chk(P::conj(p1, p2), ev_snd(), p2), sp(p1) + " ∧ " + sp(p2)};
  });

  auto family = [&](const P& a, const P& b) {
    std::vector<P> fam;
    const auto n = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < n; ++i) {
      const auto r = std::uniform_int_distribution<int>(0, 2)(rng);
      fam.push_back(r == 0 ? gen.above(a) : r == 1 ? gen.above(b) : gen.base());
    }
    return fam;
  };
  auto show_family = [&](const std::vector<P>& fam) {
    std::string out = "[";
    for (std::size_t i = 0; i < fam.size(); ++i) out += (i ? ", " : "") + sp(fam[i]);
    return out + "]";
  };

  auto& intro = report.law("uimpl-intro: ∀φ∈F. φ1∧φ2 ≤e φ ⇒ φ1 ≤curry(e) φ2⊃F");
  detail::fill_row(intro, opt, [&]() -> std::optional<detail::Instance> {
    const P p1 = gen.base();
    const P p2 = gen.base();
    const auto fam = family(p1, p2);
    const Code& e = pick(rng, bin);
    const P both = P::conj(p1, p2);
    for (const P& phi : fam) {
      if (!chk(both, e, phi).passed()) return std::nullopt;
    }
    return detail::Instance{chk(p1, ev_curry(e), P::uimpl(p2, fam)),
                            sp(p1) + ", " + sp(p2) + " ⊃ " + show_family(fam) + " via " + print(e)};
  });

  auto& elim = report.law("uimpl-elim: (φ1⊃F)∧φ1 ≤eval φ for φ∈F");
  detail::fill_row(elim, opt, [&]() -> std::optional<detail::Instance> {
    const P p1 = gen.base();
    const auto fam = family(p1, gen.base());
    const P& phi = pick(rng, fam);
    return detail::Instance{chk(P::conj(P::uimpl(p1, fam), p1), ev_eval(), phi, impl_probes),
                            sp(p1) + " ⊃ " + show_family(fam) + " ⇒ " + sp(phi)};
  });

  auto& uncurry = report.law("uncurry: φ1 ≤e φ2⊃F ⇒ φ1∧φ2 ≤uncurry(e) φ for φ∈F");
  detail::fill_row(uncurry, opt, [&]() -> std::optional<detail::Instance> {
    const P p1 = gen.base();
    const P p2 = gen.base();
    const auto fam = family(p1, p2);
    const Code e = gen.coin(0.7) ? ev_curry(pick(rng, bin)) : pick(rng, ev);
    if (!sep.contains(e)) return std::nullopt;
    if (!chk(p1, e, P::uimpl(p2, fam)).passed()) return std::nullopt;
    const P& phi = pick(rng, fam);
    return detail::Instance{chk(P::conj(p1, p2), ev_uncurry(e), phi),
                            sp(p1) + " ≤ " + sp(p2) + " ⊃ " + show_family(fam) + " via " + print(e)};
  });

  return report;
}

/// ⊤ ≤ₑ ⊥ must fail for every member e. With `expect_failure` the check is a
/// negative control: some member is expected to witness inconsistency.
template <class E, class H>
Report check_consistency(const Frame<E, H>& frame, const std::vector<Code>& members, bool expect_failure = false) {
  using P = Prop<typename H::Element>;
  Report report("consistency " + frame.modality().name + " / " + frame.separator().name());
  auto& law = report.law("⊤ ≤e ⊥ fails");
  law.expect_failure = expect_failure;
  for (const Code& e : members) {
    if (!frame.separator().contains(e)) continue;
    const Verdict v = frame.check_evidence(P::top(), e, P::bot());
    if (v.kind == Verdict::Kind::Indeterminate) {
      ++law.indeterminate;
      continue;
    }
    law.record(v.kind == Verdict::Kind::Fail, [&] { return print(e) + " witnesses ⊤ ≤ ⊥"; });
  }
  return report;
}

/// Preorder and reindexing laws of the tripos of I-indexed propositions.
template <class E, class H>
Report check_tripos(const Frame<E, H>& frame, const EfPools& pools, std::size_t instances, std::uint64_t seed) {
  using P = Prop<typename H::Element>;
  using Fam = std::vector<P>;
  const std::vector<Code> ev = detail::members(frame.separator(), pools.evidence);
  PropGen<H> gen(frame.omega(), pools.codes, seed);
  Rng& rng = gen.rng();
  EfOptions opt{instances, instances * 200, seed};
  auto random_family = [&](std::size_t n) {
    Fam out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(gen.base());
    return out;
  };
  auto above = [&](const Fam& f) {
    Fam out;
    for (const P& p : f) out.push_back(gen.coin(0.8) ? gen.above(p) : gen.base());
    return out;
  };
  auto size = [&] { return std::uniform_int_distribution<std::size_t>(1, 4)(rng); };
  auto random_map = [&](std::size_t from, std::size_t to) {
    std::vector<std::size_t> f(from);
    for (auto& x : f) x = std::uniform_int_distribution<std::size_t>(0, to - 1)(rng);
    return f;
  };

  Report report("tripos " + frame.modality().name + " / " + frame.separator().name());
  auto& refl = report.law("φ ≤_I φ");
  detail::fill_row(refl, opt, [&]() -> std::optional<detail::Instance> {
    const Fam phi = random_family(size());
    return detail::Instance{tripos_leq(frame, phi, phi, ev_id()), "|I|=" + std::to_string(phi.size())};
  });

  auto& trans = report.law("φ ≤_I ψ ≤_I χ ⇒ φ ≤_I χ");
  detail::fill_row(trans, opt, [&]() -> std::optional<detail::Instance> {
    const Fam phi = random_family(size());
    const Fam psi = above(phi);
    const Fam chi = above(psi);
    const Code& e1 = pick(rng, ev);
    const Code& e2 = pick(rng, ev);
    if (!tripos_leq(frame, phi, psi, e1).passed() || !tripos_leq(frame, psi, chi, e2).passed()) return std::nullopt;
    return detail::Instance{tripos_leq(frame, phi, chi, ev_comp(e1, e2)), print(e1) + ", " + print(e2)};
  });

  auto& mono = report.law("φ ≤_I ψ ⇒ T(f)φ ≤_J T(f)ψ");
  detail::fill_row(mono, opt, [&]() -> std::optional<detail::Instance> {
    const Fam phi = random_family(size());
    const Fam psi = above(phi);
    const Code& e = pick(rng, ev);
    if (!tripos_leq(frame, phi, psi, e).passed()) return std::nullopt;
    const auto f = random_map(size(), phi.size());
    return detail::Instance{tripos_leq(frame, tripos_reindex(f, phi), tripos_reindex(f, psi), e), print(e)};
  });

  auto& functor = report.law("T(id) = id and T(g∘f) = T(f)∘T(g)");
  for (std::size_t i = 0; i < instances; ++i) {
    const Fam phi = random_family(size());
    std::vector<std::size_t> id(phi.size());
    for (std::size_t j = 0; j < id.size(); ++j) id[j] = j;
    const auto g = random_map(size(), phi.size());
    const auto f = random_map(size(), g.size());
    std::vector<std::size_t> gf(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) gf[j] = g[f[j]];
    const bool ok = tripos_reindex(id, phi) == phi && tripos_reindex(gf, phi) == tripos_reindex(f, tripos_reindex(g, phi));
    functor.record(ok, [] { return std::string("reindexing is not functorial"); });
    if (ok) ++functor.exact;
  }
  return report;
}

}  // namespace mca
