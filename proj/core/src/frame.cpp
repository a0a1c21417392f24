#include "mca/frame.hpp"

#include "mca/effects.hpp"

namespace mca {

namespace {

Expr v(std::uint32_t i) { return Expr::var(i); }
Expr l(const Code& c) { return Expr::lit(c); }
Expr ap(Expr f, Expr a) { return Expr::app(std::move(f), std::move(a)); }

}  // namespace

Code ev_id() { return Code::closure(0, v(0)); }

Code ev_comp(const Code& e1, const Code& e2) { return Code::closure(0, ap(l(e2), ap(l(e1), v(0)))); }

Code ev_top() { return ev_id(); }

Code ev_pair(const Code& e1, const Code& e2) {
  return Code::closure(1, ap(ap(v(1), ap(l(e1), v(0))), ap(l(e2), v(0))));
}

Code ev_fst() { return Code::closure(0, ap(v(0), l(proj1()))); }

Code ev_snd() { return Code::closure(0, ap(v(0), l(proj2()))); }

Code ev_curry(const Code& e) {
  const Code mk_tuple = Code::closure(2, ap(ap(v(2), v(0)), v(1)));
  return Code::closure(1, ap(l(e), ap(ap(l(mk_tuple), v(0)), v(1))));
}

Code ev_uncurry(const Code& e) {
  return Code::closure(0, ap(ap(l(e), ap(v(0), l(proj1()))), ap(v(0), l(proj2()))));
}

Code ev_eval() { return ev_uncurry(ev_id()); }

Code tuple(const Code& a, const Code& b) { return Code::closure(0, ap(ap(v(0), l(a)), l(b))); }

Code constant_code(const Code& u) { return Code::closure(0, l(u)); }

std::string_view verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::ExactPass:
      return "exact-pass";
    case Verdict::Kind::SampledPass:
      return "sampled-pass";
    case Verdict::Kind::Fail:
      return "fail";
    case Verdict::Kind::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

Verdict combine(const Verdict& a, const Verdict& b) {
  auto rank = [](Verdict::Kind k) {
    switch (k) {
      case Verdict::Kind::Fail:
        return 3;
      case Verdict::Kind::Indeterminate:
        return 2;
      case Verdict::Kind::SampledPass:
        return 1;
      case Verdict::Kind::ExactPass:
        return 0;
    }
    return 0;
  };
  Verdict out = rank(b.kind) > rank(a.kind) ? b : a;
  out.probes = a.probes + b.probes;
  return out;
}

std::vector<Code> default_probe_codes() {
  return {proj1(), proj2(), ev_id(), church(0), church(1), church(2), church(3), k_code(), s_code()};
}

}  // namespace mca
