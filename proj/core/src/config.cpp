#include "mca/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mca/cores.hpp"
#include "mca/generators.hpp"
#include "mca/syntax.hpp"

namespace mca {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '<' || c == '(' || c == '{' || c == '[') ++depth;
    if (c == '>' || c == ')' || c == '}' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  std::string last = trim(text.substr(start));
  if (!last.empty() || !out.empty()) out.push_back(std::move(last));
  return out;
}

namespace {

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

/// Strips an enclosing pair `open … close`, or throws.
std::string inside(std::string_view text, char open, char close, std::size_t line) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != open || t.back() != close) {
    throw ConfigError(line, std::string("expected ") + open + "…" + close + " in '" + t + "'");
  }
  return t.substr(1, t.size() - 2);
}

std::uint64_t parse_u64(std::string_view text, std::size_t line) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw ConfigError(line, "expected a natural number, got '" + t + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, std::size_t line) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw ConfigError(line, "expected a boolean, got '" + t + "'");
}

Code code_at(std::string_view text, std::size_t line) {
  try {
    return parse_code(trim(text));
  } catch (const ParseError& e) {
    throw ConfigError(line, std::string("bad code: ") + e.what());
  } catch (const ScopeError& e) {
    throw ConfigError(line, std::string("bad code: ") + e.what());
  }
}

Answer answer_at(std::string_view text, std::size_t line) {
  try {
    return parse_answer(trim(text));
  } catch (const ParseError& e) {
    throw ConfigError(line, std::string("bad answer: ") + e.what());
  }
}

/// `{ key: value, …, default: value }` as (key text, value text) pairs; the
/// default is returned separately.
std::vector<std::pair<std::string, std::string>> parse_map(std::string_view text, std::optional<std::string>& fallback,
                                                           std::size_t line) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& item : split_top(inside(text, '{', '}', line), ',')) {
    if (item.empty()) continue;
    const auto parts = split_top(item, ':');
    if (parts.size() != 2) throw ConfigError(line, "expected 'key: value', got '" + item + "'");
    if (parts[0] == "default") {
      fallback = parts[1];
    } else {
      out.emplace_back(parts[0], parts[1]);
    }
  }
  return out;
}

PropSyntax parse_prop_at(std::string_view text, std::size_t line) {
  const std::string t = trim(text);
  PropSyntax p;
  if (t == "top" || t == "⊤") {
    p.kind = PropSyntax::Kind::Top;
  } else if (t == "bot" || t == "⊥") {
    p.kind = PropSyntax::Kind::Bot;
  } else if (starts_with(t, "base")) {
    p.kind = PropSyntax::Kind::Base;
    std::optional<std::string> fallback;
    for (const auto& [k, v] : parse_map(t.substr(4), fallback, line)) p.entries.emplace_back(code_at(k, line), v);
    if (fallback) p.fallback = *fallback;
  } else if (starts_with(t, "conj")) {
    p.kind = PropSyntax::Kind::Conj;
    const auto args = split_top(inside(t.substr(4), '(', ')', line), ',');
    if (args.size() != 2) throw ConfigError(line, "conj takes two propositions");
    for (const auto& a : args) p.kids.push_back(parse_prop_at(a, line));
  } else if (starts_with(t, "uimpl")) {
    p.kind = PropSyntax::Kind::UImpl;
    const auto args = split_top(inside(t.substr(5), '(', ')', line), ',');
    if (args.size() != 2) throw ConfigError(line, "uimpl takes a proposition and a [family]");
    p.kids.push_back(parse_prop_at(args[0], line));
    for (const auto& q : split_top(inside(args[1], '[', ']', line), ',')) {
      if (!q.empty()) p.kids.push_back(parse_prop_at(q, line));
    }
    if (p.kids.size() > 9) throw ConfigError(line, "implication families hold at most 8 propositions");
  } else if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) {
               return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
             })) {
    p.kind = PropSyntax::Kind::Ref;
    p.ref = t;
  } else {
    throw ConfigError(line, "cannot read proposition '" + t + "'");
  }
  return p;
}

/// `NAME = rest` after a leading keyword.
std::pair<std::string, std::string> named_value(std::string_view text, std::size_t line) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError(line, "expected 'NAME = …'");
  std::string name = trim(text.substr(0, eq));
  if (name.empty()) throw ConfigError(line, "missing name");
  return {std::move(name), trim(text.substr(eq + 1))};
}

}  // namespace

PropSyntax parse_prop(std::string_view text) { return parse_prop_at(text, 0); }

Continuation ContinuationDecl::build() const {
  if (entries.empty() && fallback) return Continuation::constant(name, *fallback);
  return Continuation::table(name, entries, fallback);
}

void apply_setting(RunConfig& cfg, std::string_view raw, std::size_t line) {
  std::string text = trim(raw);
  if (text.empty() || text.front() == '#') return;
  for (const char* kw : {"param ", "continuation ", "prop ", "assembly ", "morphism "}) {
    if (!starts_with(text, kw)) continue;
    const std::string rest = text.substr(std::string_view(kw).size());
    const std::string keyword = trim(kw);
    if (keyword == "param") {
      auto [name, value] = named_value(rest, line);
      std::optional<std::string> fallback;
      std::map<Code, bool> table;
      for (const auto& [k, v] : parse_map(value, fallback, line)) table[code_at(k, line)] = parse_bool(v, line);
      cfg.params.emplace_back(name, std::move(table), fallback ? parse_bool(*fallback, line) : false);
    } else if (keyword == "continuation") {
      auto [name, value] = named_value(rest, line);
      ContinuationDecl d{name, {}, std::nullopt};
      if (starts_with(value, "const")) {
        d.fallback = answer_at(value.substr(5), line);
      } else if (starts_with(value, "table")) {
        std::optional<std::string> fallback;
        for (const auto& [k, v] : parse_map(value.substr(5), fallback, line)) {
          d.entries.insert_or_assign(code_at(k, line), answer_at(v, line));
        }
        if (fallback) d.fallback = answer_at(*fallback, line);
      } else {
        throw ConfigError(line, "continuations are 'const @TOKEN' or 'table { … }'");
      }
      cfg.continuations.push_back(std::move(d));
    } else if (keyword == "prop") {
      auto [name, value] = named_value(rest, line);
      cfg.props[name] = parse_prop_at(value, line);
    } else if (keyword == "assembly") {
      auto [name, value] = named_value(rest, line);
      AssemblyDecl a{name, {}, {}, {}};
      std::optional<std::string> fallback;
      for (const auto& [label, body] : parse_map(value, fallback, line)) {
        const auto via = body.rfind(" via ");
        if (via == std::string::npos) throw ConfigError(line, "assembly element '" + label + "' needs 'PROP via CODE'");
        a.labels.push_back(label);
        a.realizers.push_back(parse_prop_at(body.substr(0, via), line));
        a.witnesses.push_back(code_at(body.substr(via + 5), line));
      }
      if (a.labels.empty()) throw ConfigError(line, "assembly '" + name + "' has no elements");
      cfg.assemblies.push_back(std::move(a));
    } else {
      // morphism NAME : FROM -> TO = { a: b, … } tracked CODE
      const auto colon = rest.find(':');
      const auto arrow = rest.find("->");
      const auto eq = rest.find('=');
      const auto tracked = rest.rfind(" tracked ");
      if (colon == std::string::npos || arrow == std::string::npos || eq == std::string::npos ||
          tracked == std::string::npos || !(colon < arrow && arrow < eq && eq < tracked)) {
        throw ConfigError(line, "expected 'morphism NAME : FROM -> TO = { … } tracked CODE'");
      }
      MorphismDecl m{trim(rest.substr(0, colon)), trim(rest.substr(colon + 1, arrow - colon - 1)),
                     trim(rest.substr(arrow + 2, eq - arrow - 2)), {}, code_at(rest.substr(tracked + 9), line)};
      std::optional<std::string> fallback;
      m.map = parse_map(rest.substr(eq + 1, tracked - eq - 1), fallback, line);
      cfg.morphisms.push_back(std::move(m));
    }
    return;
  }

  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value', got '" + text + "'");
  const std::string key = trim(text.substr(0, eq));
  const std::string value = trim(text.substr(eq + 1));
  if (key == "effect") {
    auto k = effect_from_name(value);
    if (!k) throw ConfigError(line, "unknown effect '" + value + "'");
    cfg.effect = *k;
  } else if (key == "fuel") {
    cfg.fuel = parse_u64(value, line);
  } else if (key == "state0") {
    cfg.state0 = parse_u64(value, line);
  } else if (key == "probe_states" || key == "probes") {
    cfg.probe_states.clear();
    for (const auto& s : split_top(value, ',')) cfg.probe_states.push_back(parse_u64(s, line));
  } else if (key == "answers") {
    cfg.answers.clear();
    for (const auto& s : split_top(value, ',')) cfg.answers.push_back(answer_at(s, line));
  } else if (key == "pole") {
    cfg.pole.clear();
    for (const auto& s : split_top(value, ',')) {
      if (!s.empty()) cfg.pole.insert(answer_at(s, line));
    }
  } else if (key == "poset") {
    cfg.poset_size = parse_u64(value, line);
  } else if (key == "covers") {
    cfg.covers.clear();
    for (const auto& pair : split_top(value, ',')) {
      const auto xy = split_top(inside(pair, '(', ')', line), ',');
      if (xy.size() != 2) throw ConfigError(line, "covers are pairs (lo, hi)");
      cfg.covers.emplace_back(parse_u64(xy[0], line), parse_u64(xy[1], line));
    }
  } else if (key == "separator") {
    cfg.separator = value;
  } else if (key == "modality") {
    cfg.modality = value;
  } else if (key == "seed") {
    cfg.seed = parse_u64(value, line);
  } else if (key == "timeout_as_bottom") {
    cfg.timeout_as_bottom = parse_bool(value, line);
  } else {
    throw ConfigError(line, "unknown key '" + key + "'");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) apply_setting(cfg, line, ++n);
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void RunConfig::validate() const {
  if (fuel == 0) throw ConfigError(0, "fuel must be positive");
  static const std::set<std::string> separators{"all", "pure", "pl", "no-fail"};
  if (!separators.count(separator)) throw ConfigError(0, "unknown separator '" + separator + "'");
  static const std::set<std::string> modalities{"angelic", "demonic", "inf-only"};
  if (!modalities.count(modality)) throw ConfigError(0, "unknown modality '" + modality + "'");
  if (modality == "demonic" && effect != EffectKind::Power && effect != EffectKind::State) {
    throw ConfigError(0, "the demonic modality exists for the power and state effects only");
  }
  if (modality == "inf-only" && effect != EffectKind::Partial && effect != EffectKind::Power) {
    throw ConfigError(0, "the inf-only modality exists for the partial and power effects only");
  }
  if (poset_size > 64) throw ConfigError(0, "posets hold at most 64 points");
  for (const auto& [lo, hi] : covers) {
    if (lo >= poset_size || hi >= poset_size) throw ConfigError(0, "cover refers to a point outside the poset");
  }
  if (probe_states.empty()) throw ConfigError(0, "probe_states is empty");
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (!seen.insert(p.name()).second) throw ConfigError(0, "parameter '" + p.name() + "' declared twice");
  }
  // Resolve every proposition reference once.
  TwoPoint two;
  for (const auto& [name, p] : props) build_prop(two, p, props);
  std::map<std::string, const AssemblyDecl*> by_name;
  for (const auto& a : assemblies) {
    by_name[a.name] = &a;
    for (const auto& r : a.realizers) build_prop(two, r, props);
  }
  for (const auto& m : morphisms) {
    auto from = by_name.find(m.from);
    auto to = by_name.find(m.to);
    if (from == by_name.end() || to == by_name.end()) {
      throw ConfigError(0, "morphism '" + m.name + "' refers to an undeclared assembly");
    }
    const auto& fl = from->second->labels;
    const auto& tl = to->second->labels;
    if (m.map.size() != fl.size()) throw ConfigError(0, "morphism '" + m.name + "' must map every label");
    for (const auto& [x, y] : m.map) {
      if (std::find(fl.begin(), fl.end(), x) == fl.end() || std::find(tl.begin(), tl.end(), y) == tl.end()) {
        throw ConfigError(0, "morphism '" + m.name + "' maps unknown label " + x + " → " + y);
      }
    }
  }
}

bool parse_value(const TwoPoint&, std::string_view text) {
  const std::string t = trim(text);
  if (t == "top" || t == "⊤" || t == "1") return true;
  if (t == "bot" || t == "⊥" || t == "0") return false;
  throw ConfigError(0, "expected top or bot, got '" + t + "'");
}

std::uint64_t parse_value(const StatePred& h, std::string_view text) {
  const std::string t = trim(text);
  if (t == "top" || t == "⊤") return h.top();
  if (t == "bot" || t == "⊥") return h.bottom();
  if (starts_with(t, "ge ")) return h.from(parse_u64(t.substr(3), 0));
  if (starts_with(t, "σ≥")) return h.from(parse_u64(t.substr(std::string_view("σ≥").size()), 0));
  throw ConfigError(0, "expected top, bot or 'ge N', got '" + t + "'");
}

PartialEffect partial_effect(const RunConfig& cfg) {
  PartialEffect eff;
  eff.timeout_as_bottom = cfg.timeout_as_bottom;
  return eff;
}

PowerEffect power_effect(const RunConfig& cfg) {
  PowerEffect eff;
  eff.timeout_as_bottom = cfg.timeout_as_bottom;
  return eff;
}

StateEffect state_effect(const RunConfig& cfg) {
  if (cfg.state0) return StateEffect({*cfg.state0});
  return StateEffect(cfg.probe_states);
}

ReaderEffect reader_effect(const RunConfig& cfg) {
  if (cfg.params.empty()) return ReaderEffect();
  return ReaderEffect(cfg.params);
}

CpsEffect cps_effect(const RunConfig& cfg) {
  std::vector<Continuation> dict = default_dictionary();
  for (const auto& d : cfg.continuations) dict.push_back(d.build());
  return CpsEffect(std::move(dict));
}

Separator make_separator(const RunConfig& cfg, std::uint32_t effect_prims) {
  if (cfg.separator == "pure") return Separator::pure();
  if (cfg.separator == "pl") return Separator::proof_like();
  if (cfg.separator == "no-fail") return Separator::no_fail(effect_prims);
  std::vector<Code> designated;
  if (cfg.effect == EffectKind::Cps) designated.push_back(hit_kont());
  if (cfg.modality == "inf-only") designated.push_back(loop_code());
  return Separator::all(effect_prims, std::move(designated));
}

Poset make_poset(const RunConfig& cfg) {
  if (cfg.poset_size == 0) return Poset::chain(2);
  return Poset::from_covers(cfg.poset_size, cfg.covers);
}

}  // namespace mca
