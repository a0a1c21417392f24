#include "mca/cores.hpp"

#include "mca/syntax.hpp"

namespace mca {

namespace {

std::vector<Code> parse_all(std::initializer_list<const char*> texts) {
  std::vector<Code> out;
  for (const char* t : texts) out.push_back(parse_code(t));
  return out;
}

EfPools base_pools(std::vector<Code> extra_evidence, std::vector<Code> extra_binary) {
  EfPools pools;
  pools.codes = default_prop_codes();
  pools.evidence = {ev_id(), ev_fst(), ev_snd(), k_code(), ev_comp(ev_id(), ev_id()), ev_pair(ev_id(), ev_id()),
                    tuple(proj1(), proj2())};
  for (std::size_t i = 0; i < 4; ++i) pools.evidence.push_back(constant_code(pools.codes[i]));
  pools.binary = {ev_fst(), ev_snd(), ev_comp(ev_fst(), ev_id()), ev_comp(ev_snd(), ev_id()),
                  ev_comp(ev_fst(), constant_code(proj1()))};
  for (Code& c : extra_evidence) pools.evidence.push_back(std::move(c));
  for (Code& c : extra_binary) pools.binary.push_back(std::move(c));
  return pools;
}

}  // namespace

Code selector(std::size_t i) {
  if (i > 4) throw std::out_of_range("selectors exist for 0..4");
  return Code::closure(4, Expr::var(static_cast<std::uint32_t>(i)));
}

Code cc_identity() { return parse_code("<0|#cc (K 0)>"); }

Code cc_throw() { return parse_code("<0|#cc (<1|1 0> 0)>"); }

std::set<Answer> default_pole() { return {Answer::token("hit")}; }

std::vector<Continuation> default_dictionary() {
  return {Continuation::halt(), Continuation::constant("hit", Answer::token("hit")),
          Continuation::constant("miss", Answer::token("miss")),
          Continuation::table("first", {{proj1(), Answer::token("hit")}}, std::nullopt)};
}

std::vector<Code> default_prop_codes() {
  return {proj1(), proj2(), ev_id(), church(1), church(2), k_code(), selector(0), selector(1), selector(2)};
}

EfPools default_pools(EffectKind kind) {
  switch (kind) {
    case EffectKind::Partial:
      return base_pools(parse_all({"<0|#fail 0>", "<0|#fail>"}), {});
    case EffectKind::Power:
      return base_pools(parse_all({"<0|#flip 0 0 <1|0>>", "<0|#flip 0 <1|1> 0>", "<0|#fail 0>"}),
                        parse_all({"<0|0 (#flip 0 <1|0> <1|1>)>"}));
    case EffectKind::State:
      return base_pools(parse_all({"<0|#inc 0>", "<0|#get 0>", "<0|#inc (#inc 0)>"}),
                        parse_all({"<0|#inc (0 <1|0>)>", "<0|#inc (0 <1|1>)>"}));
    case EffectKind::Reader:
      return base_pools(parse_all({"<0|#search 0 0 <1|0>>", "<0|#search 0 <1|1> 0>"}),
                        parse_all({"<0|0 (#search 0 <1|0> <1|1>)>"}));
    case EffectKind::Cps:
      return base_pools({cc_identity(), cc_throw()}, {ev_comp(ev_fst(), cc_identity()), ev_comp(cc_throw(), ev_snd())});
  }
  return base_pools({}, {});
}

PartialCore partial_core(FrameOptions opts) {
  PartialEffect eff;
  auto sep = Separator::all(eff.supported_prims());
  return {"partial", Frame(angelic(eff), sep, std::move(opts)), default_pools(EffectKind::Partial)};
}

PowerCore power_core(bool demonic, FrameOptions opts) {
  PowerEffect eff;
  auto sep = Separator::all(eff.supported_prims());
  auto mod = demonic ? power_demonic(eff) : angelic(eff);
  return {demonic ? "power-demonic" : "power", Frame(mod, sep, std::move(opts)), default_pools(EffectKind::Power)};
}

StateCore state_core(bool demonic, FrameOptions opts) {
  StateEffect eff;
  auto sep = Separator::all(eff.supported_prims());
  return {demonic ? "state-demonic" : "state", Frame(state_modality(eff, demonic), sep, std::move(opts)),
          default_pools(EffectKind::State)};
}

ReaderCore reader_core(FrameOptions opts) {
  ReaderEffect eff;
  auto sep = Separator::all(eff.supported_prims());
  return {"reader", Frame(reader_modality(eff), sep, std::move(opts)), default_pools(EffectKind::Reader)};
}

Code hit_kont() { return make_kont(Continuation::constant("hit", Answer::token("hit")), 0); }

CpsCore cps_core(bool proof_like, std::vector<Continuation> extra_dictionary, FrameOptions opts) {
  std::vector<Continuation> dict = default_dictionary();
  for (auto& k : extra_dictionary) dict.push_back(std::move(k));
  CpsEffect eff(dict);
  auto sep = proof_like ? Separator::proof_like() : Separator::all(eff.supported_prims(), {hit_kont()});
  auto mod = cps_modality(eff, default_pole(), default_prop_codes());
  return {proof_like ? "cps" : "cps-all", Frame(mod, sep, std::move(opts)), default_pools(EffectKind::Cps)};
}

Core<PartialEffect, TwoPoint> partial_inf_only_core(FrameOptions opts) {
  PartialEffect eff;
  auto sep = Separator::all(eff.supported_prims(), {loop_code()});
  return {"partial-inf-only", Frame(inf_only(eff), sep, std::move(opts)), default_pools(EffectKind::Partial)};
}

}  // namespace mca
