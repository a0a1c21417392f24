// mca: evaluate terms, run the stack machine, compile to S/K and check laws.
//
// Exit codes: 0 ok, 1 law failure, 2 fuel exhausted, 3 parse error,
// 4 stuck machine / bad config / unsupported primitive. `evidence` reports
// 0 exact pass, 10 sampled pass, 1 fail, 2 indeterminate.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mca/algebra.hpp"
#include "mca/assemblies.hpp"
#include "mca/config.hpp"
#include "mca/cores.hpp"
#include "mca/frame_laws.hpp"
#include "mca/generators.hpp"
#include "mca/machine.hpp"
#include "mca/modality.hpp"
#include "mca/stack.hpp"
#include "mca/syntax.hpp"

namespace {

using namespace mca;

constexpr int kOk = 0;
constexpr int kLawFailure = 1;
constexpr int kFuel = 2;
constexpr int kParse = 3;
constexpr int kConfig = 4;

struct Options {
  std::string config_path;
  std::vector<std::string> settings;
  std::size_t count = 0;
  bool trace = false;
  bool unchecked = false;
  std::string term;
  std::uint32_t arity = 0;
  std::string suite;
  std::string p1, evidence, p2;
};

RunConfig load(const Options& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  for (const std::string& s : o.settings) apply_setting(cfg, s);
  cfg.validate();
  return cfg;
}

/// n when c is the numeral n̄.
std::optional<std::uint64_t> numeral_value(const Code& c) {
  for (std::uint64_t n = 0; n <= 64; ++n) {
    if (church(n) == c) return n;
  }
  return std::nullopt;
}

std::string show_value(const Code& c) {
  std::string out = print(c);
  if (auto n = numeral_value(c); n && *n > 1) out += " = " + std::to_string(*n) + "̄";
  return out;
}

std::string show_obs(const PartialEffect&, const PartialEffect::Observation& o) {
  return o ? show_value(*o) : std::string("∅");
}
std::string show_obs(const PowerEffect& eff, const PowerEffect::Observation& o) { return eff.show(o); }
std::string show_obs(const StateEffect&, const StateEffect::Observation& o) {
  std::string out = "{";
  bool first = true;
  for (const auto& [s, c] : o) {
    out += (first ? "(" : ", (") + std::to_string(s) + ", " + show_value(c) + ")";
    first = false;
  }
  return out + "}";
}
std::string show_obs(const ReaderEffect&, const ReaderEffect::Observation& o) {
  return o ? show_value(*o) : std::string("∅");
}
std::string show_obs(const CpsEffect&, const CpsEffect::Observation& o) { return show_answer(o); }

template <class F>
int with_effect(const RunConfig& cfg, F&& f) {
  switch (cfg.effect) {
    case EffectKind::Partial:
      return f(partial_effect(cfg));
    case EffectKind::Power:
      return f(power_effect(cfg));
    case EffectKind::State:
      return f(state_effect(cfg));
    case EffectKind::Reader:
      return f(reader_effect(cfg));
    case EffectKind::Cps:
      return f(cps_effect(cfg));
  }
  return kConfig;
}

template <class F>
int with_core(const RunConfig& cfg, F&& f) {
  FrameOptions opts;
  opts.fuel = std::min<std::uint64_t>(cfg.fuel, 4000);
  const bool demonic = cfg.modality == "demonic";
  const bool inf = cfg.modality == "inf-only";
  switch (cfg.effect) {
    case EffectKind::Partial: {
      auto eff = partial_effect(cfg);
      auto mod = inf ? inf_only(eff) : angelic(eff);
      return f(Core<PartialEffect, TwoPoint>{mod.name, Frame(mod, make_separator(cfg, eff.supported_prims()), opts),
                                             default_pools(cfg.effect)});
    }
    case EffectKind::Power: {
      auto eff = power_effect(cfg);
      auto mod = inf ? inf_only(eff) : demonic ? power_demonic(eff) : angelic(eff);
      return f(Core<PowerEffect, TwoPoint>{mod.name, Frame(mod, make_separator(cfg, eff.supported_prims()), opts),
                                           default_pools(cfg.effect)});
    }
    case EffectKind::State: {
      auto eff = state_effect(cfg);
      auto mod = state_modality(eff, demonic);
      return f(Core<StateEffect, StatePred>{mod.name, Frame(mod, make_separator(cfg, eff.supported_prims()), opts),
                                            default_pools(cfg.effect)});
    }
    case EffectKind::Reader: {
      auto eff = reader_effect(cfg);
      auto mod = reader_modality(eff);
      return f(Core<ReaderEffect, TwoPoint>{mod.name, Frame(mod, make_separator(cfg, eff.supported_prims()), opts),
                                            default_pools(cfg.effect)});
    }
    case EffectKind::Cps: {
      auto eff = cps_effect(cfg);
      auto mod = cps_modality(eff, cfg.pole, default_prop_codes());
      return f(Core<CpsEffect, TwoPoint>{mod.name, Frame(mod, make_separator(cfg, eff.supported_prims()), opts),
                                         default_pools(cfg.effect)});
    }
  }
  return kConfig;
}

Expr parse_closed(const std::string& text) {
  Expr e = parse(text);
  if (e.bound() != 0) throw ParseError(0, "the term has free variables");
  return e;
}

int emit(const Report& report) {
  std::cout << report.text() << report.json() << "\n";
  return report.passed() ? kOk : kLawFailure;
}

// ---------------------------------------------------------------- commands

int cmd_eval(const Options& o) {
  const RunConfig cfg = load(o);
  const Expr e = parse_closed(o.term);
  return with_effect(cfg, [&](const auto& eff) {
    const auto m = eval(eff, e);
    int rc = kOk;
    const auto probes = eff.probes();
    for (const auto& ctx : probes) {
      const auto out = observe(eff, m, ctx, cfg.fuel);
      const std::string where = eff.show_context(ctx);
      if (!where.empty()) std::cout << where << ": ";
      if (out.exhausted()) {
        std::cout << "fuel exhausted after " << cfg.fuel << "\n";
        rc = kFuel;
      } else {
        std::cout << show_obs(eff, *out.value) << "\n";
      }
    }
    return rc;
  });
}

int cmd_machine(const Options& o) {
  const RunConfig cfg = load(o);
  const Expr e = parse_closed(o.term);
  const MachineResult r = run_machine(e, cfg.fuel, o.trace);
  if (o.trace) std::cout << format_trace(r.trace);
  switch (r.status) {
    case MachineStatus::Final:
      if (!o.trace) std::cout << print(*r.value) << "\n";
      std::cerr << r.steps << " steps, fuel " << r.fuel_used << "\n";
      return kOk;
    case MachineStatus::FuelExhausted:
      std::cerr << "fuel exhausted after " << r.steps << " steps\n";
      return kFuel;
    case MachineStatus::Stuck:
      std::cerr << "stuck: " << r.stuck_reason << "\n";
      return kConfig;
  }
  return kConfig;
}

int cmd_compile(const Options& o) {
  const Expr e = parse(o.term);
  if (!scope_check(e, o.arity + 1)) {
    throw ParseError(0, "the term mentions a variable beyond level " + std::to_string(o.arity));
  }
  std::cout << print(bracket(o.arity, e), PrintOptions{true}) << "\n";
  return kOk;
}

template <class Eff>
std::vector<Code> code_pool(const Eff& eff) {
  std::vector<Code> pool = basic_codes();
  for (PrimKind k : {PrimKind::Flip, PrimKind::Fail, PrimKind::Get, PrimKind::Inc, PrimKind::Cc, PrimKind::Search}) {
    if (eff.supported_prims() & prim_bit(k)) pool.push_back(Code::prim(k));
  }
  return pool;
}

int check_algebraic(const RunConfig& cfg, const std::string& suite, std::size_t count) {
  return with_effect(cfg, [&](const auto& eff) {
    Rng rng(cfg.seed);
    const auto pool = code_pool(eff);
    const std::uint64_t fuel = std::min<std::uint64_t>(cfg.fuel, 4000);
    std::vector<Code> codes;
    for (std::size_t i = 0; i < count; ++i) codes.push_back(random_closure(rng, 3, 6, pool));
    if (suite == "mca") {
      std::vector<Code> args;
      for (std::size_t i = 0; i < count; ++i) args.push_back(pick(rng, pool));
      return emit(check_mca_laws(eff, codes, args, fuel));
    }
    if (suite == "sk") {
      std::vector<std::array<Code, 3>> triples;
      for (std::size_t i = 0; i < count; ++i) {
        triples.push_back({pick(rng, codes), pick(rng, codes), pick(rng, pool)});
      }
      return emit(check_sk_axioms(eff, triples, fuel));
    }
    return emit(check_monad_laws(eff, codes, pool, fuel));
  });
}

int check_heyting(const RunConfig& cfg) {
  Report report("heyting");
  report.merge(check_heyting_laws(TwoPoint{}, "two-point"));
  report.merge(check_heyting_laws(StatePred(4), "state predicates"));
  report.merge(check_heyting_laws(UpperSets(make_poset(cfg)), "upper sets"));
  return emit(report);
}

template <class C>
int check_assembly_decls(const RunConfig& cfg, const C& core) {
  const auto& frame = core.frame;
  const auto& h = frame.omega();
  using Elem = typename std::decay_t<decltype(h)>::Element;
  Report report("declared assemblies");
  std::map<std::string, Assembly<Elem>> built;
  for (const auto& decl : cfg.assemblies) {
    Assembly<Elem> a{decl.name, {}};
    auto& law = report.law("assembly " + decl.name + ": ⊤ ≤ E(x) via its witness");
    for (std::size_t i = 0; i < decl.labels.size(); ++i) {
      a.realizers.push_back(build_prop(h, decl.realizers[i], cfg.props));
      const Code& w = decl.witnesses[i];
      if (!frame.separator().contains(w)) {
        law.record(false, [&] { return decl.labels[i] + ": witness is not in the separator"; });
        continue;
      }
      const Verdict v = frame.check_evidence(Prop<Elem>::top(), w, a.realizers.back());
      if (v.kind == Verdict::Kind::Indeterminate) {
        ++law.indeterminate;
        continue;
      }
      law.record(v.passed(), [&] { return "label " + decl.labels[i]; });
      if (v.passed()) ++(v.exact() ? law.exact : law.sampled);
    }
    built.emplace(decl.name, std::move(a));
  }
  for (const auto& m : cfg.morphisms) {
    const auto& from_decl = *std::find_if(cfg.assemblies.begin(), cfg.assemblies.end(),
                                          [&](const auto& a) { return a.name == m.from; });
    const auto& to_decl = *std::find_if(cfg.assemblies.begin(), cfg.assemblies.end(),
                                        [&](const auto& a) { return a.name == m.to; });
    const auto& x = built.at(m.from);
    const auto& y = built.at(m.to);
    auto& law = report.law("morphism " + m.name + " is tracked");
    if (!frame.separator().contains(m.tracker)) {
      law.record(false, [] { return std::string("tracker is not in the separator"); });
      continue;
    }
    for (const auto& [src, dst] : m.map) {
      const auto xi = static_cast<std::size_t>(
          std::find(from_decl.labels.begin(), from_decl.labels.end(), src) - from_decl.labels.begin());
      const auto yi = static_cast<std::size_t>(
          std::find(to_decl.labels.begin(), to_decl.labels.end(), dst) - to_decl.labels.begin());
      const Verdict v = frame.check_evidence(x.realizers[xi], m.tracker, y.realizers[yi]);
      if (v.kind == Verdict::Kind::Indeterminate) {
        ++law.indeterminate;
        continue;
      }
      law.record(v.passed(), [&, src = src] { return "label " + src; });
      if (v.passed()) ++(v.exact() ? law.exact : law.sampled);
    }
  }
  return emit(report);
}

int check_core_suite(const RunConfig& cfg, const std::string& suite, std::size_t count) {
  return with_core(cfg, [&](const auto& core) {
    const auto& frame = core.frame;
    const auto& mod = frame.modality();
    const std::uint64_t fuel = std::min<std::uint64_t>(cfg.fuel, 4000);
    if (suite == "modality") {
      const auto in = make_instances(core, count, cfg.seed);
      Report report("modality");
      report.merge(check_modality_laws(mod, in, count, fuel));
      report.merge(check_derived_lemmas(mod, in, count, fuel));
      return emit(report);
    }
    if (suite == "frame") {
      EfOptions opt;
      opt.instances = count;
      opt.seed = cfg.seed;
      // The frame is only meaningful over a separator with progress.
      const auto members = frame.separator().generate(200, cfg.seed);
      Report report("frame");
      report.merge(check_separator_progress(mod, frame.separator(), members, 200, fuel));
      report.merge(check_consistency(frame, members));
      report.merge(check_ef_laws(frame, core.pools, opt));
      return emit(report);
    }
    if (suite == "consistency") {
      const auto members = frame.separator().generate(count, cfg.seed);
      Report report("consistency");
      report.merge(check_separator_progress(mod, frame.separator(), members, count, fuel));
      report.merge(check_consistency(frame, members));
      return emit(report);
    }
    if (suite == "tripos") return emit(check_tripos(frame, core.pools, count, cfg.seed));
    if (cfg.assemblies.empty()) return emit(check_assemblies(frame, count, cfg.seed));
    return check_assembly_decls(cfg, core);
  });
}

int cmd_check(const Options& o) {
  const RunConfig cfg = load(o);
  const std::string& s = o.suite;
  if (s == "mca" || s == "sk" || s == "monad") return check_algebraic(cfg, s, o.count ? o.count : 500);
  if (s == "heyting") return check_heyting(cfg);
  return check_core_suite(cfg, s, o.count ? o.count : (s == "modality" || s == "consistency" ? 300 : 100));
}

int cmd_evidence(const Options& o) {
  const RunConfig cfg = load(o);
  return with_core(cfg, [&](const auto& core) {
    const auto& frame = core.frame;
    const auto& h = frame.omega();
    const auto p1 = build_prop(h, parse_prop(o.p1), cfg.props);
    const auto p2 = build_prop(h, parse_prop(o.p2), cfg.props);
    const Code e = parse_code(o.evidence);
    if (!o.unchecked && !frame.separator().contains(e)) {
      std::cerr << print(e) << " is not in the separator '" << frame.separator().name()
                << "' (use --unchecked to test it anyway)\n";
      return kConfig;
    }
    const Verdict v = frame.check_evidence_unchecked(p1, e, p2);
    std::cout << show_prop(h, p1) << " ≤_" << print(e) << " " << show_prop(h, p2) << ": "
              << verdict_name(v.kind);
    if (v.witness) std::cout << " at c = " << print(*v.witness);
    std::cout << " (" << v.probes << " probes)\n";
    nlohmann::json j = {{"verdict", verdict_name(v.kind)}, {"probes", v.probes}};
    j["witness"] = v.witness ? nlohmann::json(print(*v.witness)) : nlohmann::json(nullptr);
    std::cout << j.dump() << "\n";
    switch (v.kind) {
      case Verdict::Kind::ExactPass:
        return 0;
      case Verdict::Kind::SampledPass:
        return 10;
      case Verdict::Kind::Fail:
        return 1;
      case Verdict::Kind::Indeterminate:
        return 2;
    }
    return 2;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monadic combinatory algebras: evaluation, machine, compilation and law checks"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config_path, "Configuration file");
    auto setting = [&](const std::string& key) {
      return [&o, key](const std::string& v) { o.settings.push_back(key + " = " + v); };
    };
    cmd->add_option_function<std::string>("--effect", setting("effect"), "partial|power|state|reader|cps");
    cmd->add_option_function<std::string>("--fuel", setting("fuel"), "Transition budget");
    cmd->add_option_function<std::string>("--state0", setting("state0"), "Initial state (state effect)");
    cmd->add_option_function<std::string>("--probes", setting("probe_states"), "Probe states, comma separated");
    cmd->add_option_function<std::string>("--pole", setting("pole"), "Pole answers, e.g. @hit");
    cmd->add_option_function<std::vector<std::string>>(
        "--params",
        [&o](const std::vector<std::string>& ps) {
          for (const auto& p : ps) o.settings.push_back("param " + p);
        },
        "Reader parameters, NAME={code: 0|1, default: 0|1}");
    cmd->add_option_function<std::string>("--separator", setting("separator"), "all|pure|pl|no-fail");
    cmd->add_option_function<std::string>("--modality", setting("modality"), "angelic|demonic|inf-only");
    cmd->add_option_function<std::string>("--seed", setting("seed"), "Seed for generated instances");
    cmd->add_flag_callback("--timeout-as-bottom", [&o] { o.settings.push_back("timeout_as_bottom = true"); },
                           "Read fuel exhaustion as no result (partial/power only; an approximation)");
  };

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a closed term");
  eval_cmd->add_option("term", o.term, "Term")->required();
  add_common(eval_cmd);

  auto* machine_cmd = app.add_subcommand("machine", "Run the stack machine on a closed term");
  machine_cmd->add_option("term", o.term, "Term")->required();
  machine_cmd->add_flag("--trace", o.trace, "Print every machine state");
  add_common(machine_cmd);

  auto* compile_cmd = app.add_subcommand("compile", "Bracket-abstract a term in N+1 variables into S and K");
  compile_cmd->add_option("n", o.arity, "N")->required();
  compile_cmd->add_option("term", o.term, "Term")->required();

  auto* check_cmd = app.add_subcommand("check", "Run a law suite");
  check_cmd->add_option("suite", o.suite, "mca|sk|monad|heyting|modality|frame|consistency|tripos|assembly")
      ->required()
      ->check(CLI::IsMember(
          {"mca", "sk", "monad", "heyting", "modality", "frame", "consistency", "tripos", "assembly"}));
  check_cmd->add_option("--count", o.count, "Instances per law");
  add_common(check_cmd);

  auto* evidence_cmd = app.add_subcommand("evidence", "Decide P1 ≤_E P2");
  evidence_cmd->add_option("p1", o.p1, "Proposition or name from the config")->required();
  evidence_cmd->add_option("e", o.evidence, "Evidence code")->required();
  evidence_cmd->add_option("p2", o.p2, "Proposition or name from the config")->required();
  evidence_cmd->add_flag("--unchecked", o.unchecked, "Allow evidence outside the separator");
  add_common(evidence_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    return run_with_large_stack([&] {
      if (eval_cmd->parsed()) return cmd_eval(o);
      if (machine_cmd->parsed()) return cmd_machine(o);
      if (compile_cmd->parsed()) return cmd_compile(o);
      if (check_cmd->parsed()) return cmd_check(o);
      return cmd_evidence(o);
    });
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ScopeError& e) {
    std::cerr << "scope error: " << e.what() << "\n";
    return kParse;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const UnsupportedPrimitive& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const MachineStuck& e) {
    std::cerr << "stuck: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  }
}
