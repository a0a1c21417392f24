#include "mca/separator.hpp"

#include <algorithm>

#include "mca/generators.hpp"
#include "mca/syntax.hpp"

namespace mca {

Separator::Separator(std::string name, std::uint32_t allowed_prims, std::vector<Code> designated)
    : name_(std::move(name)), allowed_(allowed_prims), designated_(std::move(designated)) {}

Separator Separator::all(std::uint32_t effect_prims, std::vector<Code> designated) {
  return Separator("all", effect_prims, std::move(designated));
}

Separator Separator::pure() { return Separator("pure", 0); }

Separator Separator::proof_like() { return Separator("pl", prim_bit(PrimKind::Cc)); }

Separator Separator::no_fail(std::uint32_t effect_prims) {
  return Separator("no-fail", effect_prims & ~prim_bit(PrimKind::Fail));
}

std::vector<Code> Separator::generate(std::size_t count, std::uint64_t seed) const {
  std::vector<Code> leaves;
  for (const Code& c : designated_) {
    if (contains(c)) leaves.push_back(c);
  }
  for (PrimKind k : {PrimKind::Flip, PrimKind::Fail, PrimKind::Get, PrimKind::Inc, PrimKind::Cc,
                     PrimKind::Search}) {
    if (allowed_ & prim_bit(k)) leaves.push_back(Code::prim(k));
  }
  std::vector<Code> out = leaves;
  for (const Code& c : basic_codes()) out.push_back(c);
  out.push_back(loop_code());
  std::vector<Code> pool = out;
  Rng rng(seed);
  while (out.size() < count) {
    Code c = random_closure(rng, 2, 4, pool);
    if (contains(c)) out.push_back(std::move(c));
  }
  if (out.size() > count) out.erase(out.begin() + static_cast<std::ptrdiff_t>(count), out.end());
  return out;
}

}  // namespace mca
