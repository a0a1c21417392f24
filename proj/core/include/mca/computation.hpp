#pragma once

// A computation is a lazy function from an effect context to an observation.
// The five effects differ only in those two types:
//
//   partial  ()            -> optional<Code>
//   power    ()            -> set<Code>
//   state    σ             -> set<(σ', Code)>
//   reader   parameter p   -> optional<Code>
//   cps      continuation  -> answer
//
// Fuel is spent when the computation is observed, never when it is built.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "mca/run.hpp"
#include "mca/term.hpp"

namespace mca {

template <class Ctx, class Obs>
class Computation {
 public:
  using Context = Ctx;
  using Observation = Obs;
  using Fn = std::function<Obs(const Ctx&, Run&)>;

  explicit Computation(Fn fn) : fn_(std::make_shared<const Fn>(std::move(fn))) {}

  Obs operator()(const Ctx& ctx, Run& run) const { return (*fn_)(ctx, run); }

 private:
  std::shared_ptr<const Fn> fn_;
};

template <class Comp>
using Kleisli = std::function<Comp(const Code&)>;

template <class Comp>
using Applier = std::function<Comp(const Code&, const Code&)>;

/// The observation of a computation under a fixed budget, or exhaustion.
template <class Obs>
struct Outcome {
  std::optional<Obs> value;

  bool exhausted() const { return !value.has_value(); }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Observes m at ctx with a fresh budget. Exhaustion is reported, not thrown,
/// unless the effect maps it to a value (timeout-as-bottom).
template <class E>
Outcome<typename E::Observation> observe(const E& eff, const typename E::Comp& m,
                                         const typename E::Context& ctx, std::uint64_t fuel) {
  Run run(fuel);
  try {
    return {m(ctx, run)};
  } catch (const FuelExhausted&) {
    if (auto v = eff.on_timeout()) return {*v};
    return {};
  }
}

/// Observation-based equality: equal outcomes at every probe context.
template <class E>
bool computations_equal(const E& eff, const typename E::Comp& a, const typename E::Comp& b,
                        std::uint64_t fuel) {
  for (const auto& ctx : eff.probes()) {
    if (!(observe(eff, a, ctx, fuel) == observe(eff, b, ctx, fuel))) return false;
  }
  return true;
}

/// Spends n units of fuel before running m.
template <class Comp>
Comp tick(std::uint64_t n, Comp m) {
  return Comp([n, m = std::move(m)](const typename Comp::Context& ctx, Run& run) {
    run.charge(n);
    return m(ctx, run);
  });
}

}  // namespace mca
