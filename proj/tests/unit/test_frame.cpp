#include "doctest.h"

#include "mca/cores.hpp"
#include "mca/frame.hpp"
#include "mca/frame_laws.hpp"
#include "oracle.hpp"

using namespace mca;

namespace {

using P = Prop<bool>;

P holds_at(std::vector<Code> cs) {
  std::map<Code, bool> t;
  for (auto& c : cs) t[c] = true;
  return P::base(std::move(t), false);
}

std::optional<Code> reduce(const Code& f, const Code& a) {
  return oracle::run(Expr::app(Expr::lit(f), Expr::lit(a)), 10000).value;
}

}  // namespace

TEST_SUITE("frame") {

TEST_CASE("evidence builders compute what they promise") {
  const Code c = church(2), d = proj1();
  CHECK(reduce(ev_id(), c) == c);
  CHECK(reduce(constant_code(d), c) == d);
  // tuple(a, b)·p̂ᵢ picks a component.
  CHECK(reduce(tuple(c, d), proj1()) == c);
  CHECK(reduce(tuple(c, d), proj2()) == d);
  CHECK(reduce(ev_fst(), tuple(c, d)) == c);
  CHECK(reduce(ev_snd(), tuple(c, d)) == d);
  // ev_comp(e1, e2)·x = e2·(e1·x)
  CHECK(reduce(ev_comp(ev_snd(), ev_id()), tuple(c, d)) == d);
  CHECK(reduce(ev_comp(constant_code(tuple(c, d)), ev_fst()), proj2()) == c);
  // ev_pair(e1, e2)·x behaves as tuple(e1·x, e2·x).
  const auto pr = reduce(ev_pair(ev_snd(), ev_fst()), tuple(c, d));
  REQUIRE(pr);
  CHECK(reduce(*pr, proj1()) == d);
  CHECK(reduce(*pr, proj2()) == c);
  CHECK(ev_eval() == ev_uncurry(ev_id()));
  // curry(e)·a·b = e·tuple(a, b), uncurry(e)·t = e·(t·p̂1)·(t·p̂2).
  const auto partial = reduce(ev_curry(ev_snd()), c);
  REQUIRE(partial);
  CHECK(reduce(*partial, d) == d);
  CHECK(reduce(ev_uncurry(k_code()), tuple(c, d)) == c);
}

TEST_CASE("proposition values") {
  const auto core = partial_core();
  const auto& frame = core.frame;
  Run run(4000);
  const Code c1 = church(1), c2 = church(2);
  CHECK(frame.eval(P::top(), c1, run).value);
  CHECK_FALSE(frame.eval(P::bot(), c1, run).value);
  const P conj = P::conj(holds_at({c1}), holds_at({c2}));
  CHECK(frame.eval(conj, tuple(c1, c2), run).value);
  CHECK_FALSE(frame.eval(conj, tuple(c2, c1), run).value);
  const P vacuous = P::uimpl(P::bot(), {P::top()});
  CHECK(frame.eval(vacuous, proj2(), run).value);
  CHECK(frame.eval(P::uimpl(holds_at({c1}), {}), proj2(), run).value);
}

TEST_CASE("evidence relation examples") {
  const auto core = partial_core();
  const auto& frame = core.frame;
  const P p = holds_at({church(1), proj1()});
  const P q = holds_at({proj2()});
  const Verdict refl = frame.check_evidence(p, ev_id(), p);
  CHECK(refl.kind == Verdict::Kind::ExactPass);
  const Verdict topbot = frame.check_evidence(P::top(), ev_id(), P::bot());
  CHECK(topbot.kind == Verdict::Kind::Fail);
  CHECK(topbot.witness.has_value());
  CHECK(frame.check_evidence(P::conj(p, q), ev_fst(), p).passed());
  CHECK(frame.check_evidence(P::conj(p, q), ev_snd(), q).passed());
  CHECK(frame.check_evidence(p, ev_id(), q).kind == Verdict::Kind::Fail);
  CHECK(frame.check_evidence(p, constant_code(proj2()), q).kind == Verdict::Kind::ExactPass);
  CHECK(frame.check_evidence(P::bot(), ev_id(), q).kind == Verdict::Kind::ExactPass);
}

TEST_CASE("evidence outside the separator is refused") {
  const auto core = cps_core(true);
  CHECK_THROWS_AS(core.frame.check_evidence(P::top(), hit_kont(), P::bot()), std::invalid_argument);
  // Bypassing the separator, the non-proof-like K code realizes ⊤ ≤ ⊥.
  CHECK(core.frame.check_evidence_unchecked(P::top(), hit_kont(), P::bot()).passed());
}

TEST_CASE("implication elimination at tuple codes") {
  const auto core = power_core(false);
  const auto& frame = core.frame;
  const P p = holds_at({church(1)});
  const P q = holds_at({church(2)});
  const Code f = constant_code(church(2));
  // f realizes p ⊃ q, so eval realizes (p ⊃ q) ∧ p ≤ q.
  Run run(4000);
  CHECK(frame.eval(P::uimpl(p, {q}), f, run).value);
  CHECK(frame.check_evidence(P::conj(P::uimpl(p, {q}), p), ev_eval(), q, {tuple(f, church(1))}).passed());
}

TEST_CASE("verdict combination") {
  Verdict exact{Verdict::Kind::ExactPass, std::nullopt, 2};
  Verdict sampled{Verdict::Kind::SampledPass, std::nullopt, 3};
  Verdict fail{Verdict::Kind::Fail, proj1(), 1};
  Verdict indet{Verdict::Kind::Indeterminate, std::nullopt, 0};
  CHECK(combine(exact, sampled).kind == Verdict::Kind::SampledPass);
  CHECK(combine(exact, sampled).probes == 5);
  CHECK(combine(sampled, indet).kind == Verdict::Kind::Indeterminate);
  CHECK(combine(indet, fail).kind == Verdict::Kind::Fail);
  CHECK(combine(indet, fail).witness == proj1());
  CHECK(verdict_name(Verdict::Kind::ExactPass) != verdict_name(Verdict::Kind::Fail));
}

TEST_CASE("generated evidenced-frame rules hold on the partial core") {
  const auto core = partial_core();
  const Report r = check_ef_laws(core.frame, core.pools, {30, 20000, 3});
  CAPTURE(r.text());
  CHECK(r.passed());
  for (const auto& law : r.laws()) CHECK(law.checked >= 30);
}

TEST_CASE("consistency and its negative controls") {
  const auto partial = partial_core();
  CHECK(check_consistency(partial.frame, partial.frame.separator().generate(100, 4)).passed());

  const auto inf = partial_inf_only_core();
  const Report r = check_consistency(inf.frame, {ev_id(), loop_code()}, true);
  CHECK(r.passed());
  REQUIRE(r.laws().front().witness.has_value());
  CHECK(r.laws().front().witness->find(print(loop_code())) != std::string::npos);

  const auto pl = cps_core(true);
  CHECK(check_consistency(pl.frame, pl.frame.separator().generate(100, 4)).passed());
  const auto all = cps_core(false);
  CHECK(check_consistency(all.frame, all.frame.separator().generate(100, 4), true).passed());
}

TEST_CASE("tripos laws") {
  const auto core = partial_core();
  const std::vector<P> phi{holds_at({proj1()}), holds_at({church(1), church(2)})};
  CHECK(tripos_leq(core.frame, phi, phi, ev_id()).passed());
  CHECK(tripos_reindex({0, 1}, phi) == phi);
  CHECK(tripos_reindex({1, 1, 0}, phi)[2] == phi[0]);
  CHECK_THROWS_AS(tripos_leq(core.frame, phi, {phi[0]}, ev_id()), std::invalid_argument);
  const Report r = check_tripos(core.frame, core.pools, 20, 5);
  CAPTURE(r.text());
  CHECK(r.passed());
}

TEST_CASE("implication families are bounded") {
  std::vector<P> nine(9, P::top());
  CHECK_THROWS_AS(P::uimpl(P::top(), nine), std::invalid_argument);
}

}  // TEST_SUITE
