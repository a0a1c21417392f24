#pragma once

// Ready-made instances: an effect, its modality, a separator and the code
// pools the law suites draw from.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mca/frame.hpp"
#include "mca/frame_laws.hpp"
#include "mca/generators.hpp"
#include "mca/modality.hpp"

namespace mca {

template <class E, class H>
struct Core {
  std::string name;
  Frame<E, H> frame;
  EfPools pools;
};

/// sel_i = <4|i>: returns the i-th of five arguments. Codes for the elements
/// of small finite sets.
Code selector(std::size_t i);

/// <0|#cc (K 0)>: behaves like the identity, going through #cc.
Code cc_identity();
/// <0|#cc (<1|1 0> 0)>: returns its argument by throwing it to the captured continuation.
Code cc_throw();

/// The default pole {@hit}.
std::set<Answer> default_pole();
/// halt, const @hit, const @miss, and a table sending p̂1 to @hit.
std::vector<Continuation> default_dictionary();
/// K_u for the continuation answering @hit on everything: not proof-like.
Code hit_kont();

/// Codes propositions talk about in the generated suites.
std::vector<Code> default_prop_codes();

/// Codes and evidence the generated suites draw from, per effect.
EfPools default_pools(EffectKind kind);

using PartialCore = Core<PartialEffect, TwoPoint>;
using PowerCore = Core<PowerEffect, TwoPoint>;
using StateCore = Core<StateEffect, StatePred>;
using ReaderCore = Core<ReaderEffect, TwoPoint>;
using CpsCore = Core<CpsEffect, TwoPoint>;

PartialCore partial_core(FrameOptions opts = {});
PowerCore power_core(bool demonic = false, FrameOptions opts = {});
StateCore state_core(bool demonic = false, FrameOptions opts = {});
ReaderCore reader_core(FrameOptions opts = {});
/// `proof_like` selects the separator of cc-only closures; otherwise every
/// code is admitted, including the dictionary's K codes.
CpsCore cps_core(bool proof_like = true, std::vector<Continuation> extra_dictionary = {}, FrameOptions opts = {});

/// The partial core with the inf-only modality: the inconsistent control.
Core<PartialEffect, TwoPoint> partial_inf_only_core(FrameOptions opts = {});

/// Modality-law instances drawn from a core's pools: evidence applied to
/// codes, random closed terms, and random finite predicates.
template <class E, class H>
ModalityInstances<E, H> make_instances(const Core<E, H>& core, std::size_t count, std::uint64_t seed) {
  const auto& mod = core.frame.modality();
  const H& h = mod.omega;
  ModalityInstances<E, H> in;
  in.codes = core.pools.codes;
  in.arrows = core.pools.evidence;
  Rng rng(seed);
  std::vector<Code> leaves = core.pools.codes;
  for (const Code& c : core.pools.evidence) leaves.push_back(c);
  for (const Code& e : core.pools.evidence) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Code& a = pick(rng, core.pools.codes);
      in.comps.push_back({apply(mod.eff, e, a), print(e) + " · " + print(a)});
    }
  }
  while (in.comps.size() < count) {
    const Expr t = random_closed_term(rng, 3, leaves);
    in.comps.push_back({eval(mod.eff, t), print(t)});
  }
  std::vector<typename H::Element> values = h.elements();
  in.thetas = values;
  for (std::size_t i = 0; i < 64; ++i) {
    FinPred<typename H::Element> p{{}, pick(rng, values)};
    const auto n = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
    for (std::size_t j = 0; j < n; ++j) p.table[pick(rng, in.codes)] = pick(rng, values);
    in.preds.push_back(std::move(p));
  }
  return in;
}

}  // namespace mca
