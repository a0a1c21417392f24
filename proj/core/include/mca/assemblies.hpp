#pragma once

// Assemblies over a frame: finite sets whose elements carry a realizability
// proposition, and functions between them tracked by separator codes.

#include <cstdint>
#include <string>
#include <vector>

#include "mca/cores.hpp"
#include "mca/frame.hpp"
#include "mca/frame_laws.hpp"

namespace mca {

template <class Elem>
struct Assembly {
  std::string name;
  /// E(x) for each element x of {0, …, n-1}.
  std::vector<Prop<Elem>> realizers;

  std::size_t size() const { return realizers.size(); }

  /// x is realized exactly by sel_x. At most five elements.
  static Assembly canonical(std::string name, std::size_t n, Elem top, Elem bottom) {
    Assembly a{std::move(name), {}};
    for (std::size_t x = 0; x < n; ++x) {
      a.realizers.push_back(Prop<Elem>::base({{selector(x), top}}, bottom, "⟦" + std::to_string(x) + "⟧"));
    }
    return a;
  }
};

/// The evidence that x is an element: sel_x as a constant.
inline Code element_witness(std::size_t x) { return constant_code(selector(x)); }

/// τ_f = <0|0 sel_{f(0)} … sel_{f(4)}>, sending sel_x to sel_{f(x)}.
Code selector_tracker(const std::vector<std::size_t>& f);

/// f : X → Y is tracked by τ when E_X(x) ≤_τ E_Y(f(x)) for all x.
template <class E, class H>
Verdict tracks(const Frame<E, H>& frame, const Assembly<typename H::Element>& x, const Assembly<typename H::Element>& y,
               const std::vector<std::size_t>& f, const Code& tracker) {
  return tripos_leq(frame, x.realizers, tripos_reindex(f, y.realizers), tracker);
}

/// (g ∘ f)(x) = g(f(x))
std::vector<std::size_t> compose_maps(const std::vector<std::size_t>& f, const std::vector<std::size_t>& g);

/// Generated checks: selector trackers realize their functions, identities and
/// composites are tracked by id and comp, and a wrong tracker is rejected.
template <class E, class H>
Report check_assemblies(const Frame<E, H>& frame, std::size_t instances, std::uint64_t seed) {
  using A = Assembly<typename H::Element>;
  const H& h = frame.omega();
  Rng rng(seed);
  auto size = [&] { return std::uniform_int_distribution<std::size_t>(1, 5)(rng); };
  auto random_map = [&](std::size_t from, std::size_t to) {
    std::vector<std::size_t> f(from);
    for (auto& x : f) x = std::uniform_int_distribution<std::size_t>(0, to - 1)(rng);
    return f;
  };
  auto tally = [](LawResult& law, const Verdict& v, const std::string& label) {
    if (v.kind == Verdict::Kind::Indeterminate) {
      ++law.indeterminate;
      return;
    }
    law.record(v.passed(), [&] { return label; });
    if (v.passed()) ++(v.exact() ? law.exact : law.sampled);
  };
  auto show_map = [](const std::vector<std::size_t>& f) {
    std::string out = "[";
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? " " : "") + std::to_string(f[i]);
    return out + "]";
  };

  Report report("assemblies " + frame.modality().name + " / " + frame.separator().name());
  auto& elements = report.law("⊤ ≤ E(x) via the element witness");
  auto& tracked = report.law("τ_f tracks f");
  auto& identity = report.law("id tracks id_X");
  auto& composite = report.law("comp(τ_f, τ_g) tracks g∘f");
  auto& wrong = report.law("a tracker for a different function is rejected");
  auto& assoc = report.law("(h∘g)∘f = h∘(g∘f) and id∘f = f = f∘id");

  for (std::size_t i = 0; i < instances; ++i) {
    const A x = A::canonical("X", size(), h.top(), h.bottom());
    const A y = A::canonical("Y", size(), h.top(), h.bottom());
    const A z = A::canonical("Z", size(), h.top(), h.bottom());
    const auto f = random_map(x.size(), y.size());
    const auto g = random_map(y.size(), z.size());
    const auto k = random_map(z.size(), size());
    const Code tf = selector_tracker(f);
    const Code tg = selector_tracker(g);

    const std::size_t pt = std::uniform_int_distribution<std::size_t>(0, x.size() - 1)(rng);
    tally(elements, frame.check_evidence(Prop<typename H::Element>::top(), element_witness(pt), x.realizers[pt]),
          "x=" + std::to_string(pt));
    tally(tracked, tracks(frame, x, y, f, tf), "f=" + show_map(f));
    std::vector<std::size_t> id(x.size());
    for (std::size_t j = 0; j < id.size(); ++j) id[j] = j;
    tally(identity, tracks(frame, x, x, id, ev_id()), "|X|=" + std::to_string(x.size()));
    const auto gf = compose_maps(f, g);
    tally(composite, tracks(frame, x, z, gf, ev_comp(tf, tg)), "f=" + show_map(f) + " g=" + show_map(g));

    if (y.size() > 1) {
      auto other = f;
      const std::size_t at = std::uniform_int_distribution<std::size_t>(0, other.size() - 1)(rng);
      other[at] = (other[at] + 1) % y.size();
      const Verdict v = tracks(frame, x, y, f, selector_tracker(other));
      if (v.kind != Verdict::Kind::Indeterminate) {
        wrong.record(v.kind == Verdict::Kind::Fail,
                     [&] { return "τ for " + show_map(other) + " accepted for " + show_map(f); });
        if (v.kind == Verdict::Kind::Fail) ++wrong.exact;
      }
    }

    std::vector<std::size_t> idy(y.size());
    for (std::size_t j = 0; j < idy.size(); ++j) idy[j] = j;
    const bool ok = compose_maps(compose_maps(f, g), k) == compose_maps(f, compose_maps(g, k)) &&
                    compose_maps(f, idy) == f && compose_maps(id, f) == f;
    assoc.record(ok, [] { return std::string("composition of maps"); });
    if (ok) ++assoc.exact;
  }
  return report;
}

}  // namespace mca
