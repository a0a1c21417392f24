#pragma once

// Run configuration and its text format.
//
//   # comment
//   effect = state                       partial | power | state | reader | cps
//   fuel = 10000
//   state0 = 0
//   probe_states = 0, 1, 2, 3
//   answers = @hit, @miss, @abort
//   pole = @hit
//   param even = { <1|0>: 1, default: 0 }
//   continuation first = table { <1|0>: @hit, default: @miss }
//   continuation always = const @hit
//   poset = 3
//   covers = (0, 1), (1, 2)
//   separator = all                      all | pure | pl | no-fail
//   modality = angelic                   angelic | demonic | inf-only
//   seed = 7
//   timeout_as_bottom = false
//   prop yes = base { <1|0>: top, default: bot }
//   prop both = conj(yes, base { <1|1>: top, default: bot })
//   prop imp = uimpl(yes, [yes, both])
//   assembly Two = { t: base { <4|0>: top, default: bot } via <0|<4|0>>, f: ... }
//   morphism swap : Two -> Two = { t: f, f: t } tracked <0|0 <4|1> <4|0> <4|0> <4|0> <4|0>>
//
// Proposition values are `top`, `bot`, or `ge N` (states from N on).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mca/effects.hpp"
#include "mca/frame.hpp"
#include "mca/order.hpp"
#include "mca/separator.hpp"

namespace mca {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "config line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A proposition as written, before it is interpreted in a Heyting prealgebra.
struct PropSyntax {
  enum class Kind { Base, Top, Bot, Conj, UImpl, Ref };
  Kind kind = Kind::Top;
  std::vector<std::pair<Code, std::string>> entries;
  std::string fallback = "bot";
  std::vector<PropSyntax> kids;
  std::string ref;
};

PropSyntax parse_prop(std::string_view text);

struct ContinuationDecl {
  std::string name;
  std::map<Code, Answer> entries;
  std::optional<Answer> fallback;
  /// `const @x` declarations have no entries and a fallback.
  Continuation build() const;
};

struct AssemblyDecl {
  std::string name;
  std::vector<std::string> labels;
  std::vector<PropSyntax> realizers;
  std::vector<Code> witnesses;
};

struct MorphismDecl {
  std::string name, from, to;
  std::vector<std::pair<std::string, std::string>> map;
  Code tracker;
};

struct RunConfig {
  EffectKind effect = EffectKind::Partial;
  std::uint64_t fuel = 10000;
  std::optional<std::uint64_t> state0;
  std::vector<std::uint64_t> probe_states{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<Answer> answers;
  std::set<Answer> pole{Answer::token("hit")};
  std::vector<Param> params;
  std::vector<ContinuationDecl> continuations;
  std::size_t poset_size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  std::string separator = "all";
  std::string modality = "angelic";
  std::uint64_t seed = 1;
  bool timeout_as_bottom = false;
  std::map<std::string, PropSyntax> props;
  std::vector<AssemblyDecl> assemblies;
  std::vector<MorphismDecl> morphisms;

  /// Checks cross references and value ranges.
  void validate() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Applies one `key = value` line on top of `cfg`, as the file format does.
void apply_setting(RunConfig& cfg, std::string_view line, std::size_t line_no = 0);

/// Splits on `sep` outside of <>, (), {} and [].
std::vector<std::string> split_top(std::string_view text, char sep);
std::string trim(std::string_view s);

PartialEffect partial_effect(const RunConfig& cfg);
PowerEffect power_effect(const RunConfig& cfg);
StateEffect state_effect(const RunConfig& cfg);
ReaderEffect reader_effect(const RunConfig& cfg);
/// The default dictionary followed by the configured continuations.
CpsEffect cps_effect(const RunConfig& cfg);
Separator make_separator(const RunConfig& cfg, std::uint32_t effect_prims);
/// The poset from `poset` and `covers`; a 2-chain when none is declared.
Poset make_poset(const RunConfig& cfg);

bool parse_value(const TwoPoint& h, std::string_view text);
std::uint64_t parse_value(const StatePred& h, std::string_view text);

/// Interprets a proposition, resolving references against `named`.
template <class H>
Prop<typename H::Element> build_prop(const H& h, const PropSyntax& s, const std::map<std::string, PropSyntax>& named,
                                     int depth = 0) {
  using P = Prop<typename H::Element>;
  if (depth > 64) throw ConfigError(0, "proposition references nest too deeply (cycle?)");
  switch (s.kind) {
    case PropSyntax::Kind::Top:
      return P::top();
    case PropSyntax::Kind::Bot:
      return P::bot();
    case PropSyntax::Kind::Base: {
      std::map<Code, typename H::Element> table;
      for (const auto& [c, v] : s.entries) table[c] = parse_value(h, v);
      return P::base(std::move(table), parse_value(h, s.fallback));
    }
    case PropSyntax::Kind::Conj:
      return P::conj(build_prop(h, s.kids.at(0), named, depth + 1), build_prop(h, s.kids.at(1), named, depth + 1));
    case PropSyntax::Kind::UImpl: {
      std::vector<P> fam;
      for (std::size_t i = 1; i < s.kids.size(); ++i) fam.push_back(build_prop(h, s.kids[i], named, depth + 1));
      return P::uimpl(build_prop(h, s.kids.at(0), named, depth + 1), std::move(fam));
    }
    case PropSyntax::Kind::Ref: {
      auto it = named.find(s.ref);
      if (it == named.end()) throw ConfigError(0, "unknown proposition '" + s.ref + "'");
      return build_prop(h, it->second, named, depth + 1);
    }
  }
  throw ConfigError(0, "bad proposition");
}

}  // namespace mca
