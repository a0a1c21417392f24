#include "mca/effects.hpp"

#include <algorithm>
#include <array>

#include "mca/syntax.hpp"

namespace mca {

UnsupportedPrimitive::UnsupportedPrimitive(PrimKind kind, std::string_view effect)
    : std::runtime_error("primitive #" + std::string(prim_name(kind)) + " has no rule under the " +
                         std::string(effect) + " effect"),
      kind_(kind) {}

Code church(std::uint64_t n) {
  Expr body = Expr::var(1);
  for (std::uint64_t i = 0; i < n; ++i) body = Expr::app(Expr::var(0), std::move(body));
  return Code::closure(1, std::move(body));
}

const Code& proj1() {
  static const Code p = Code::closure(1, Expr::var(0));
  return p;
}

const Code& proj2() {
  static const Code p = Code::closure(1, Expr::var(1));
  return p;
}

namespace {

constexpr std::array<std::string_view, 5> kEffectNames = {"partial", "power", "state", "reader", "cps"};

template <class Obs>
std::string show_set(const Obs& obs) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : obs) {
    if (!first) out += ", ";
    first = false;
    out += print(c);
  }
  return out + "}";
}

}  // namespace

std::string_view effect_name(EffectKind kind) { return kEffectNames[static_cast<std::size_t>(kind)]; }

std::optional<EffectKind> effect_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kEffectNames.size(); ++i) {
    if (kEffectNames[i] == name) return static_cast<EffectKind>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- partial

PartialEffect::Comp PartialEffect::ret(Code c) const {
  return Comp([c = std::move(c)](const Context&, Run&) -> Observation { return c; });
}

PartialEffect::Comp PartialEffect::bind(Comp m, Kleisli<Comp> f) const {
  return Comp([m = std::move(m), f = std::move(f)](const Context& ctx, Run& run) -> Observation {
    auto x = m(ctx, run);
    if (!x) return std::nullopt;
    return f(*x)(ctx, run);
  });
}

PartialEffect::Comp PartialEffect::apply_prim(const Code& f, const Code&, const Applier<Comp>&) const {
  if (f.kind() == PrimKind::Fail) {
    return Comp([](const Context&, Run&) -> Observation { return std::nullopt; });
  }
  throw UnsupportedPrimitive(f.kind(), "partial");
}

std::optional<PartialEffect::Observation> PartialEffect::on_timeout() const {
  if (timeout_as_bottom) return Observation{};
  return std::nullopt;
}

std::vector<Code> PartialEffect::values(const Observation& obs) const {
  if (obs) return {*obs};
  return {};
}

std::string PartialEffect::show(const Observation& obs) const { return obs ? print(*obs) : "{}"; }

// ---------------------------------------------------------------- power

PowerEffect::Comp PowerEffect::ret(Code c) const {
  return Comp([c = std::move(c)](const Context&, Run&) { return Observation{c}; });
}

PowerEffect::Comp PowerEffect::bind(Comp m, Kleisli<Comp> f) const {
  return Comp([m = std::move(m), f = std::move(f)](const Context& ctx, Run& run) {
    Observation out;
    for (const Code& x : m(ctx, run)) out.merge(f(x)(ctx, run));
    return out;
  });
}

PowerEffect::Comp PowerEffect::apply_prim(const Code& f, const Code&, const Applier<Comp>&) const {
  switch (f.kind()) {
    case PrimKind::Flip:
      return Comp([](const Context&, Run&) { return Observation{proj1(), proj2()}; });
    case PrimKind::Fail:
      return Comp([](const Context&, Run&) { return Observation{}; });
    default:
      throw UnsupportedPrimitive(f.kind(), "power");
  }
}

std::optional<PowerEffect::Observation> PowerEffect::on_timeout() const {
  if (timeout_as_bottom) return Observation{};
  return std::nullopt;
}

std::vector<Code> PowerEffect::values(const Observation& obs) const { return {obs.begin(), obs.end()}; }

std::string PowerEffect::show(const Observation& obs) const { return show_set(obs); }

// ---------------------------------------------------------------- state

StateEffect::StateEffect() : StateEffect({0, 1, 2, 3, 4, 5, 6, 7, 8}) {}

StateEffect::StateEffect(std::vector<std::uint64_t> probe_states) {
  std::sort(probe_states.begin(), probe_states.end());
  probe_states.erase(std::unique(probe_states.begin(), probe_states.end()), probe_states.end());
  if (probe_states.empty()) probe_states.push_back(0);
  probe_states_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(probe_states));
}

std::uint64_t StateEffect::max_probe() const { return probe_states_->back(); }

std::uint32_t StateEffect::supported_prims() const {
  return prim_bit(PrimKind::Get) | prim_bit(PrimKind::Inc) | prim_bit(PrimKind::Flip) |
         prim_bit(PrimKind::Fail);
}

StateEffect::Comp StateEffect::ret(Code c) const {
  return Comp([c = std::move(c)](const Context& s, Run&) { return Observation{{s, c}}; });
}

StateEffect::Comp StateEffect::bind(Comp m, Kleisli<Comp> f) const {
  // Continue from the state each branch of m ends in.
  return Comp([m = std::move(m), f = std::move(f)](const Context& s, Run& run) {
    Observation out;
    for (const auto& [s1, x] : m(s, run)) out.merge(f(x)(s1, run));
    return out;
  });
}

StateEffect::Comp StateEffect::apply_prim(const Code& f, const Code& a, const Applier<Comp>&) const {
  switch (f.kind()) {
    case PrimKind::Get:
      return Comp([](const Context& s, Run&) { return Observation{{s, church(s)}}; });
    case PrimKind::Inc:
      return Comp([a](const Context& s, Run&) { return Observation{{s + 1, a}}; });
    case PrimKind::Flip:
      return Comp([](const Context& s, Run&) { return Observation{{s, proj1()}, {s, proj2()}}; });
    case PrimKind::Fail:
      return Comp([](const Context&, Run&) { return Observation{}; });
    default:
      throw UnsupportedPrimitive(f.kind(), "state");
  }
}

std::vector<Code> StateEffect::values(const Observation& obs) const {
  std::vector<Code> out;
  for (const auto& [s, c] : obs) out.push_back(c);
  return out;
}

std::string StateEffect::show(const Observation& obs) const {
  std::string out = "{";
  bool first = true;
  for (const auto& [s, c] : obs) {
    if (!first) out += ", ";
    first = false;
    out += "(" + std::to_string(s) + ", " + print(c) + ")";
  }
  return out + "}";
}

// ---------------------------------------------------------------- reader

Param::Param(std::string name, std::map<Code, bool> table, bool fallback)
    : data_(std::make_shared<const Data>(Data{std::move(name), std::move(table), fallback})) {}

bool Param::operator()(const Code& c) const {
  auto it = data_->table.find(c);
  return it == data_->table.end() ? data_->fallback : it->second;
}

ReaderEffect::ReaderEffect()
    : ReaderEffect({Param("p0", {}, false), Param("p1", {}, true)}) {}

ReaderEffect::ReaderEffect(std::vector<Param> params)
    : params_(std::make_shared<const std::vector<Param>>(std::move(params))) {}

ReaderEffect::Comp ReaderEffect::ret(Code c) const {
  return Comp([c = std::move(c)](const Context&, Run&) -> Observation { return c; });
}

ReaderEffect::Comp ReaderEffect::bind(Comp m, Kleisli<Comp> f) const {
  return Comp([m = std::move(m), f = std::move(f)](const Context& p, Run& run) -> Observation {
    auto x = m(p, run);
    if (!x) return std::nullopt;
    return f(*x)(p, run);
  });
}

ReaderEffect::Comp ReaderEffect::apply_prim(const Code& f, const Code& a, const Applier<Comp>&) const {
  switch (f.kind()) {
    case PrimKind::Search:
      return Comp([a](const Context& p, Run&) -> Observation { return p(a) ? proj2() : proj1(); });
    case PrimKind::Fail:
      return Comp([](const Context&, Run&) -> Observation { return std::nullopt; });
    default:
      throw UnsupportedPrimitive(f.kind(), "reader");
  }
}

std::vector<Code> ReaderEffect::values(const Observation& obs) const {
  if (obs) return {*obs};
  return {};
}

std::string ReaderEffect::show(const Observation& obs) const { return obs ? print(*obs) : "{}"; }

// ---------------------------------------------------------------- cps

std::string show_answer(const Answer& a) {
  if (a.is_code()) return print(std::get<Code>(a.value));
  return "@" + std::get<std::string>(a.value);
}

Answer parse_answer(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '@') return Answer::token(std::string(text.substr(1)));
  return Answer::code(parse_code(text));
}

Continuation Continuation::halt() {
  static const Continuation h(std::make_shared<const Data>(
      Data{"halt", [](const Code& c, Run&) { return Answer::code(c); }, {}}));
  return h;
}

Continuation Continuation::constant(std::string name, Answer answer) {
  return Continuation(std::make_shared<const Data>(
      Data{std::move(name), [answer = std::move(answer)](const Code&, Run&) { return answer; }, {}}));
}

Continuation Continuation::table(std::string name, std::map<Code, Answer> entries,
                                 std::optional<Answer> fallback) {
  std::vector<Code> support;
  for (const auto& [c, a] : entries) support.push_back(c);
  auto fn = [entries = std::move(entries), fallback = std::move(fallback)](const Code& c, Run&) {
    auto it = entries.find(c);
    if (it != entries.end()) return it->second;
    return fallback ? *fallback : Answer::code(c);
  };
  return Continuation(std::make_shared<const Data>(Data{std::move(name), std::move(fn), std::move(support)}));
}

Continuation Continuation::function(std::string name, Fn fn, std::vector<Code> support) {
  return Continuation(std::make_shared<const Data>(Data{std::move(name), std::move(fn), std::move(support)}));
}

Code make_kont(const Continuation& k, std::uint64_t index) {
  return Code::prim(PrimKind::Kont, kDictionaryKontBase + index, std::make_shared<ContinuationPayload>(k));
}

CpsEffect::CpsEffect() : CpsEffect(std::vector<Continuation>{}) {}

CpsEffect::CpsEffect(std::vector<Continuation> dictionary) : recorder_(std::make_shared<Recorder>()) {
  std::vector<Continuation> dict{Continuation::halt()};
  for (auto& k : dictionary) {
    if (k.name() != "halt") dict.push_back(std::move(k));
  }
  dictionary_ = std::make_shared<const std::vector<Continuation>>(std::move(dict));
}

CpsEffect::Comp CpsEffect::ret(Code c) const {
  return Comp([c = std::move(c)](const Context& k, Run& run) { return k(c, run); });
}

CpsEffect::Comp CpsEffect::bind(Comp m, Kleisli<Comp> f) const {
  return Comp([m = std::move(m), f = std::move(f)](const Context& k, Run& run) {
    auto next = Continuation::function("bind", [f, k](const Code& x, Run& r) { return f(x)(k, r); });
    return m(next, run);
  });
}

CpsEffect::Comp CpsEffect::apply_prim(const Code& f, const Code& a, const Applier<Comp>& apply) const {
  switch (f.kind()) {
    case PrimKind::Cc:
      // (cc·a)(u) = (a·K_u)(u); the extra application is one machine transition.
      return Comp([a, apply, recorder = recorder_](const Context& u, Run& run) {
        run.charge(1);
        if (recorder->active) recorder->captured.push_back(u);
        Code ku = Code::prim(PrimKind::Kont, run.fresh_id(), std::make_shared<ContinuationPayload>(u));
        return apply(a, ku)(u, run);
      });
    case PrimKind::Kont: {
      // (K_u·a)(u') = u(a)
      auto payload = std::dynamic_pointer_cast<const ContinuationPayload>(f.payload());
      if (!payload) throw UnsupportedPrimitive(f.kind(), "cps");
      return Comp([a, k = payload->k](const Context&, Run& run) { return k(a, run); });
    }
    default:
      throw UnsupportedPrimitive(f.kind(), "cps");
  }
}

std::vector<Code> CpsEffect::values(const Observation& obs) const {
  if (obs.is_code()) return {std::get<Code>(obs.value)};
  return {};
}

void CpsEffect::extend_dictionary_from(const Comp& m, std::uint64_t fuel, std::size_t limit) {
  recorder_->active = true;
  recorder_->captured.clear();
  try {
    Run run(fuel);
    m(Continuation::halt(), run);
  } catch (const FuelExhausted&) {
  }
  recorder_->active = false;
  auto dict = *dictionary_;
  std::size_t added = 0;
  for (const auto& k : recorder_->captured) {
    if (added == limit) break;
    dict.push_back(Continuation::function("captured" + std::to_string(added),
                                          [k](const Code& c, Run& r) { return k(c, r); }, k.support()));
    ++added;
  }
  recorder_->captured.clear();
  dictionary_ = std::make_shared<const std::vector<Continuation>>(std::move(dict));
}

}  // namespace mca
