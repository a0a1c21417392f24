#pragma once

// The five effect backends and their primitive codes.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mca/computation.hpp"
#include "mca/term.hpp"

namespace mca {

/// Raised when a primitive is applied under an effect that has no rule for it.
class UnsupportedPrimitive : public std::runtime_error {
 public:
  UnsupportedPrimitive(PrimKind kind, std::string_view effect);
  PrimKind kind() const { return kind_; }

 private:
  PrimKind kind_;
};

/// n̄ = <1|0 (0 (... (0 1)))> with n occurrences of 0; 0̄ = <1|1>.
Code church(std::uint64_t n);

/// Projections p̂1 = <1|0> and p̂2 = <1|1>; also the two results of #flip.
const Code& proj1();
const Code& proj2();

enum class EffectKind { Partial, Power, State, Reader, Cps };

std::string_view effect_name(EffectKind kind);
std::optional<EffectKind> effect_from_name(std::string_view name);

// ---------------------------------------------------------------- partial

struct PartialEffect {
  using Context = std::monostate;
  using Observation = std::optional<Code>;
  using Comp = Computation<Context, Observation>;
  static constexpr EffectKind kind = EffectKind::Partial;

  bool timeout_as_bottom = false;

  Comp ret(Code c) const;
  Comp bind(Comp m, Kleisli<Comp> f) const;
  Comp apply_prim(const Code& f, const Code& a, const Applier<Comp>& apply) const;
  std::uint32_t supported_prims() const { return prim_bit(PrimKind::Fail); }

  std::vector<Context> probes() const { return {Context{}}; }
  std::optional<Observation> on_timeout() const;
  std::vector<Code> values(const Observation& obs) const;
  std::string show(const Observation& obs) const;
  std::string show_context(const Context&) const { return ""; }
};

// ---------------------------------------------------------------- power

struct PowerEffect {
  using Context = std::monostate;
  using Observation = std::set<Code>;
  using Comp = Computation<Context, Observation>;
  static constexpr EffectKind kind = EffectKind::Power;

  bool timeout_as_bottom = false;

  Comp ret(Code c) const;
  Comp bind(Comp m, Kleisli<Comp> f) const;
  Comp apply_prim(const Code& f, const Code& a, const Applier<Comp>& apply) const;
  std::uint32_t supported_prims() const { return prim_bit(PrimKind::Flip) | prim_bit(PrimKind::Fail); }

  std::vector<Context> probes() const { return {Context{}}; }
  std::optional<Observation> on_timeout() const;
  std::vector<Code> values(const Observation& obs) const;
  std::string show(const Observation& obs) const;
  std::string show_context(const Context&) const { return ""; }
};

// ---------------------------------------------------------------- state

/// Increasing counter state: get reads it as a numeral, inc advances it.
struct StateEffect {
  using Context = std::uint64_t;
  using Observation = std::set<std::pair<std::uint64_t, Code>>;
  using Comp = Computation<Context, Observation>;
  static constexpr EffectKind kind = EffectKind::State;

  StateEffect();
  explicit StateEffect(std::vector<std::uint64_t> probe_states);

  Comp ret(Code c) const;
  Comp bind(Comp m, Kleisli<Comp> f) const;
  Comp apply_prim(const Code& f, const Code& a, const Applier<Comp>& apply) const;
  std::uint32_t supported_prims() const;

  std::vector<Context> probes() const { return *probe_states_; }
  std::uint64_t max_probe() const;
  std::optional<Observation> on_timeout() const { return std::nullopt; }
  std::vector<Code> values(const Observation& obs) const;
  std::string show(const Observation& obs) const;
  std::string show_context(const Context& s) const { return "σ=" + std::to_string(s); }

 private:
  std::shared_ptr<const std::vector<std::uint64_t>> probe_states_;
};

// ---------------------------------------------------------------- reader

/// A finite-support predicate on codes, consulted by #search.
class Param {
 public:
  Param(std::string name, std::map<Code, bool> table, bool fallback);

  const std::string& name() const { return data_->name; }
  bool operator()(const Code& c) const;
  const std::map<Code, bool>& table() const { return data_->table; }
  bool fallback() const { return data_->fallback; }

 private:
  struct Data {
    std::string name;
    std::map<Code, bool> table;
    bool fallback;
  };
  std::shared_ptr<const Data> data_;
};

struct ReaderEffect {
  using Context = Param;
  using Observation = std::optional<Code>;
  using Comp = Computation<Context, Observation>;
  static constexpr EffectKind kind = EffectKind::Reader;

  ReaderEffect();
  explicit ReaderEffect(std::vector<Param> params);

  Comp ret(Code c) const;
  Comp bind(Comp m, Kleisli<Comp> f) const;
  Comp apply_prim(const Code& f, const Code& a, const Applier<Comp>& apply) const;
  std::uint32_t supported_prims() const { return prim_bit(PrimKind::Search) | prim_bit(PrimKind::Fail); }

  std::vector<Context> probes() const { return *params_; }
  std::optional<Observation> on_timeout() const { return std::nullopt; }
  std::vector<Code> values(const Observation& obs) const;
  std::string show(const Observation& obs) const;
  std::string show_context(const Context& p) const { return p.name(); }

 private:
  std::shared_ptr<const std::vector<Param>> params_;
};

// ---------------------------------------------------------------- cps

/// An answer of a CPS computation: a final code or a named token.
struct Answer {
  std::variant<Code, std::string> value;

  static Answer code(Code c) { return {std::move(c)}; }
  static Answer token(std::string t) { return {std::move(t)}; }
  bool is_code() const { return value.index() == 0; }

  friend bool operator==(const Answer&, const Answer&) = default;
  friend bool operator<(const Answer& a, const Answer& b) { return a.value < b.value; }
};

std::string show_answer(const Answer& a);
/// `@name` is a token, anything else is parsed as a code literal.
Answer parse_answer(std::string_view text);

class Continuation {
 public:
  using Fn = std::function<Answer(const Code&, Run&)>;

  /// Answers the code it receives.
  static Continuation halt();
  static Continuation constant(std::string name, Answer answer);
  /// Finite table; codes outside it get `fallback`, or themselves when unset.
  static Continuation table(std::string name, std::map<Code, Answer> entries,
                            std::optional<Answer> fallback);
  static Continuation function(std::string name, Fn fn, std::vector<Code> support = {});

  Answer operator()(const Code& c, Run& run) const { return data_->fn(c, run); }
  const std::string& name() const { return data_->name; }
  /// Codes this continuation treats specially.
  const std::vector<Code>& support() const { return data_->support; }

 private:
  struct Data {
    std::string name;
    Fn fn;
    std::vector<Code> support;
  };
  explicit Continuation(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Payload of a K_u code: the continuation u it reinstates.
struct ContinuationPayload : PrimPayload {
  explicit ContinuationPayload(Continuation k) : k(std::move(k)) {}
  Continuation k;
};

/// Identifier offset for K codes built outside of evaluation, so they never
/// collide with identifiers handed out by a Run.
inline constexpr std::uint64_t kDictionaryKontBase = std::uint64_t{1} << 40;

/// K_u for a continuation supplied by the user rather than captured by #cc.
Code make_kont(const Continuation& k, std::uint64_t index);

struct CpsEffect {
  using Context = Continuation;
  using Observation = Answer;
  using Comp = Computation<Context, Observation>;
  static constexpr EffectKind kind = EffectKind::Cps;

  CpsEffect();
  explicit CpsEffect(std::vector<Continuation> dictionary);

  Comp ret(Code c) const;
  Comp bind(Comp m, Kleisli<Comp> f) const;
  Comp apply_prim(const Code& f, const Code& a, const Applier<Comp>& apply) const;
  std::uint32_t supported_prims() const { return prim_bit(PrimKind::Cc) | prim_bit(PrimKind::Kont); }

  /// The continuation dictionary. The halting continuation is always first.
  std::vector<Context> probes() const { return *dictionary_; }
  std::optional<Observation> on_timeout() const { return std::nullopt; }
  std::vector<Code> values(const Observation& obs) const;
  std::string show(const Observation& obs) const { return show_answer(obs); }
  std::string show_context(const Context& k) const { return k.name(); }

  /// Adds the continuations that #cc captures while m runs under halt. m must
  /// have been built from this effect (or a copy of it).
  void extend_dictionary_from(const Comp& m, std::uint64_t fuel, std::size_t limit = 4);

 private:
  struct Recorder {
    bool active = false;
    std::vector<Continuation> captured;
  };
  std::shared_ptr<const std::vector<Continuation>> dictionary_;
  std::shared_ptr<Recorder> recorder_;
};

}  // namespace mca
