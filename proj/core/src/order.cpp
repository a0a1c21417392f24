#include "mca/order.hpp"

#include <stdexcept>

namespace mca {

bool TwoPoint::inf(const std::vector<bool>& xs) const {
  for (bool x : xs) {
    if (!x) return false;
  }
  return true;
}

Poset Poset::from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers) {
  if (n == 0 || n > 64) throw std::invalid_argument("poset size must be between 1 and 64");
  Poset p;
  p.up_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) p.up_[x] = std::uint64_t{1} << x;
  for (const auto& [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw std::invalid_argument("covering pair mentions an unknown point");
    p.up_[lo] |= std::uint64_t{1} << hi;
  }
  // Transitive closure: repeat until the up-sets stop growing.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      std::uint64_t acc = p.up_[x];
      for (std::size_t y = 0; y < n; ++y) {
        if ((p.up_[x] >> y) & 1u) acc |= p.up_[y];
      }
      if (acc != p.up_[x]) {
        p.up_[x] = acc;
        changed = true;
      }
    }
  }
  return p;
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return from_covers(n, covers);
}

std::uint64_t Poset::all() const {
  return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
}

UpperSets::Element UpperSets::impl(Element a, Element b) const {
  Element out = 0;
  for (std::size_t x = 0; x < poset_.size(); ++x) {
    const std::uint64_t up = poset_.up(x);
    if (((up & a) & ~b) == 0) out |= std::uint64_t{1} << x;
  }
  return out;
}

UpperSets::Element UpperSets::inf(const std::vector<Element>& xs) const {
  Element out = top();
  for (Element x : xs) out &= x;
  return out;
}

bool UpperSets::is_upper(Element a) const {
  for (std::size_t x = 0; x < poset_.size(); ++x) {
    if (((a >> x) & 1u) && (poset_.up(x) & ~a) != 0) return false;
  }
  return true;
}

std::vector<UpperSets::Element> UpperSets::elements() const {
  if (poset_.size() > 20) throw std::invalid_argument("too many points to enumerate upper sets");
  std::vector<Element> out;
  for (Element a = 0; a <= poset_.all(); ++a) {
    if (is_upper(a)) out.push_back(a);
  }
  return out;
}

std::string UpperSets::show(Element a) const {
  std::string out = "{";
  for (std::size_t x = 0; x < poset_.size(); ++x) {
    if ((a >> x) & 1u) {
      if (out.size() > 1) out += ",";
      out += std::to_string(x);
    }
  }
  return out + "}";
}

StatePred::StatePred(std::uint64_t max_state) : UpperSets(Poset::chain(max_state + 1)) {
  if (max_state >= 64) throw std::invalid_argument("state predicates support states up to 63");
}

bool StatePred::at(Element a, std::uint64_t state) const {
  const std::uint64_t s = state < max_state() ? state : max_state();
  return (a >> s) & 1u;
}

StatePred::Element StatePred::from(std::uint64_t state) const {
  if (state > max_state()) return bottom();
  return principal(state);
}

std::string StatePred::show(Element a) const {
  if (a == bottom()) return "⊥";
  for (std::uint64_t s = 0; s <= max_state(); ++s) {
    if ((a >> s) & 1u) return s == 0 ? "⊤" : "σ≥" + std::to_string(s);
  }
  return "⊥";
}

}  // namespace mca
