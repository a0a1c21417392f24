#include "doctest.h"

#include "mca/cores.hpp"
#include "mca/modality.hpp"

using namespace mca;

namespace {

constexpr std::uint64_t kFuel = 4000;

Pred<bool> holds_at(std::vector<Code> yes) {
  return {[yes](const Code& c, Run&) { return std::find(yes.begin(), yes.end(), c) != yes.end(); }, yes};
}

const Pred<bool> always{[](const Code&, Run&) { return true; }, {}};
const Pred<bool> never{[](const Code&, Run&) { return false; }, {}};

template <class E, class H>
typename H::Element after(const Modality<E, H>& mod, const typename E::Comp& m, const Pred<typename H::Element>& phi) {
  Run run(kFuel);
  return mod(m, phi, run);
}

Code prim(PrimKind k) { return Code::prim(k); }

/// (after m φ) at σ, straight from the definition: for every σ' ≥ σ up to N
/// some outcome (σ'', x) of m at σ' has φ(x) holding at σ''.
std::uint64_t state_after_oracle(const StateEffect& eff, const StatePred& h, const StateEffect::Comp& m,
                                 const FinPred<std::uint64_t>& phi) {
  std::uint64_t out = 0;
  for (std::uint64_t s = 0; s <= h.max_state(); ++s) {
    bool all = true;
    for (std::uint64_t later = s; later <= h.max_state(); ++later) {
      const auto o = observe(eff, m, later, kFuel);
      REQUIRE_FALSE(o.exhausted());
      bool some = false;
      for (const auto& [s2, x] : *o.value) some = some || h.at(phi.at(x), s2);
      all = all && some;
    }
    if (all) out |= std::uint64_t{1} << s;
  }
  return out;
}

template <class C>
void check_core_laws(const C& core, std::size_t count) {
  const auto& mod = core.frame.modality();
  const auto in = make_instances(core, count, 17);
  for (const Report& r : {check_modality_laws(mod, in, count, kFuel), check_derived_lemmas(mod, in, count, kFuel)}) {
    CAPTURE(r.text());
    CHECK(r.passed());
    for (const auto& law : r.laws()) CHECK(law.exact + law.sampled + law.indeterminate == count);
  }
}

}  // namespace

TEST_SUITE("modality") {

TEST_CASE("partial modality") {
  PartialEffect eff;
  const auto mod = angelic(eff);
  const Code c = church(1);
  CHECK(after(mod, eff.ret(c), holds_at({c})));
  CHECK_FALSE(after(mod, apply(eff, prim(PrimKind::Fail), c), always));
  CHECK_FALSE(after(mod, eff.ret(c), never));
}

TEST_CASE("power modalities") {
  PowerEffect eff;
  const auto ang = angelic(eff);
  const auto dem = power_demonic(eff);
  const auto flipped = apply(eff, prim(PrimKind::Flip), church(0));
  const auto failed = apply(eff, prim(PrimKind::Fail), church(0));
  CHECK(after(ang, flipped, holds_at({proj1()})));
  CHECK_FALSE(after(dem, flipped, holds_at({proj1()})));
  CHECK(after(dem, flipped, holds_at({proj1(), proj2()})));
  CHECK_FALSE(after(dem, failed, always));
  CHECK_FALSE(after(ang, failed, always));
}

TEST_CASE("inf-only modality grants anything to computations without results") {
  PowerEffect eff;
  const auto mod = inf_only(eff);
  CHECK(after(mod, apply(eff, prim(PrimKind::Fail), church(0)), never));
  PartialEffect partial;
  CHECK(after(inf_only(partial), apply(partial, loop_code(), church(0)), never));
}

TEST_CASE("state modality") {
  StateEffect eff;
  const auto mod = state_modality(eff, false);
  const StatePred& h = mod.omega;
  const Code c = proj1();
  // φ = "the counter has reached 1"
  const FinPred<std::uint64_t> reached{{}, h.from(1)};
  const auto inc = apply(eff, prim(PrimKind::Inc), c);
  const std::uint64_t v = after(mod, inc, reached.pred());
  CHECK(h.at(v, 0));
  CHECK(v == h.top());
  const auto demonic = state_modality(eff, true);
  CHECK(after(demonic, apply(eff, prim(PrimKind::Fail), c), reached.pred()) == h.bottom());

  SUBCASE("agrees with the definition on generated instances") {
    const auto core = state_core(false);
    const auto in = make_instances(core, 150, 19);
    for (std::size_t i = 0; i < in.comps.size(); ++i) {
      const auto& p = in.preds[i % in.preds.size()];
      Run run(100 * kFuel);
      std::uint64_t got = 0;
      try {
        got = core.frame.modality()(in.comps[i].comp, p.pred(), run);
      } catch (const FuelExhausted&) {
        continue;
      }
      CAPTURE(in.comps[i].label);
      CHECK(got == state_after_oracle(eff, h, in.comps[i].comp, p));
      CHECK(h.is_upper(got));
    }
  }
}

TEST_CASE("reader modality") {
  const Param p("p", {{church(1), true}}, false);
  const Param q("q", {}, true);
  ReaderEffect eff({p, q});
  const auto mod = reader_modality(eff);
  const auto searched = apply(eff, prim(PrimKind::Search), church(1));
  CHECK(after(mod, searched, holds_at({proj1(), proj2()})));
  CHECK(after(mod, searched, holds_at({proj2()})));
  // Under an empty table the answer is p̂1 for p and p̂2 for q.
  const auto other = apply(eff, prim(PrimKind::Search), church(2));
  CHECK_FALSE(after(mod, other, holds_at({proj2()})));
  CHECK_FALSE(after(mod, apply(eff, prim(PrimKind::Fail), church(0)), always));

  SUBCASE("one parameter degenerates to the partial modality") {
    ReaderEffect single({q});
    const auto r = reader_modality(single);
    const auto a = angelic(PartialEffect{});
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const Expr e = random_closed_term(rng, 3, basic_codes());
      const auto phi = holds_at({pick(rng, basic_codes()), pick(rng, basic_codes())});
      Run r1(kFuel), r2(kFuel);
      bool lhs = false, rhs = false;
      try {
        lhs = r(eval(single, e), phi, r1);
        rhs = a(eval(PartialEffect{}, e), phi, r2);
      } catch (const FuelExhausted&) {
        continue;
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("cps modality") {
  const auto core = cps_core(true);
  const auto& mod = core.frame.modality();
  const CpsEffect& eff = mod.eff;
  const Code c = church(2);
  CHECK(after(mod, eff.ret(c), holds_at({c})));
  CHECK_FALSE(after(mod, eff.ret(c), never));
  // A continuation answering inside the pole on everything realizes ⊥.
  CHECK(after(mod, apply(eff, hit_kont(), c), never));
  CHECK_FALSE(Separator::proof_like().contains(hit_kont()));
  // Capturing and rethrowing is invisible to the modality.
  CHECK(after(mod, apply(eff, cc_throw(), c), holds_at({c})));
  CHECK_FALSE(after(mod, apply(eff, cc_throw(), c), holds_at({proj1()})));
}

TEST_CASE("laws and lemmas hold for the shipped modalities") {
  SUBCASE("partial") { check_core_laws(partial_core(), 120); }
  SUBCASE("power angelic") { check_core_laws(power_core(false), 120); }
  SUBCASE("power demonic") { check_core_laws(power_core(true), 120); }
  SUBCASE("state angelic") { check_core_laws(state_core(false), 120); }
  SUBCASE("state demonic") { check_core_laws(state_core(true), 120); }
  SUBCASE("reader") { check_core_laws(reader_core(), 120); }
  SUBCASE("cps") { check_core_laws(cps_core(true), 120); }
}

TEST_CASE("lemmas hold exhaustively for small predicates") {
  PartialEffect eff;
  const auto mod = angelic(eff);
  TwoPoint h;
  const Code a = proj1(), b = proj2();
  const std::vector<PartialEffect::Comp> comps{eff.ret(a), eff.ret(b), eff.ret(church(2)),
                                               apply(eff, prim(PrimKind::Fail), a)};
  std::vector<FinPred<bool>> preds;
  for (int bits = 0; bits < 8; ++bits) preds.push_back({{{a, (bits & 1) != 0}, {b, (bits & 2) != 0}}, (bits & 4) != 0});
  for (const auto& m : comps) {
    for (const auto& p : preds) {
      for (const auto& q : preds) {
        const bool pa = after(mod, m, p.pred()), qa = after(mod, m, q.pred());
        if (pointwise_leq(h, p, q)) CHECK(h.leq(pa, qa));
        for (bool theta : {false, true}) {
          const Pred<bool> imp{[theta, p](const Code& c, Run&) { return !theta || p.at(c); }, {a, b}};
          const Pred<bool> meet{[theta, p](const Code& c, Run&) { return theta && p.at(c); }, {a, b}};
          CHECK(h.leq(after(mod, m, imp), h.impl(theta, pa)));
          CHECK(h.leq(h.meet(theta, pa), after(mod, m, meet)));
        }
      }
    }
  }
}

TEST_CASE("progress separates consistent and inconsistent setups") {
  SUBCASE("shipped separators make progress") {
    const auto core = partial_core();
    const auto& sep = core.frame.separator();
    CHECK(check_separator_progress(core.frame.modality(), sep, sep.generate(60, 3), 300, kFuel).passed());
    const auto power = power_core(true);
    const Separator nf = Separator::no_fail(PowerEffect{}.supported_prims());
    CHECK(check_separator_progress(power.frame.modality(), nf, nf.generate(60, 3), 300, kFuel).passed());
  }
  SUBCASE("#fail is harmless angelically but not under a demonic reading") {
    PowerEffect eff;
    const Separator all = Separator::all(eff.supported_prims());
    const std::vector<Code> members{prim(PrimKind::Fail), proj1()};
    CHECK(check_separator_progress(angelic(eff), all, members, 4, kFuel).passed());
    CHECK(check_separator_progress(inf_only(eff), all, members, 4, kFuel, true).passed());
  }
  SUBCASE("the inf-only modality with the loop code admitted") {
    const auto core = partial_inf_only_core();
    const auto& sep = core.frame.separator();
    const Report r = check_separator_progress(core.frame.modality(), sep, {loop_code()}, 1, kFuel, true);
    CHECK(r.passed());
    REQUIRE(r.laws().front().witness.has_value());
    CHECK(r.laws().front().witness->find(print(loop_code())) != std::string::npos);
  }
  SUBCASE("cps with every code admitted") {
    const auto core = cps_core(false);
    const auto& sep = core.frame.separator();
    CHECK(check_separator_progress(core.frame.modality(), sep, {hit_kont(), proj1()}, 4, kFuel, true).passed());
  }
}

TEST_CASE("naturality under renamings") {
  const auto core = power_core(false);
  const auto in = make_instances(core, 60, 23);
  const std::vector<std::map<Code, Code>> renamings{
      {{proj1(), proj2()}, {proj2(), proj1()}}, {{church(0), church(1)}}, {}};
  CHECK(check_naturality(core.frame.modality(), in, renamings, 60, kFuel).passed());
}

}  // TEST_SUITE
