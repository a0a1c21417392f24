#include "doctest.h"

#include <algorithm>
#include <random>

#include "mca/order.hpp"

using namespace mca;

TEST_SUITE("order") {

TEST_CASE("two-point algebra") {
  TwoPoint h;
  CHECK(check_heyting_laws(h).passed());
  CHECK(h.inf({}) == true);
  CHECK(h.inf({true, false}) == false);
}

TEST_CASE("upper sets of the 2-chain") {
  UpperSets h(Poset::chain(2));
  const auto xs = h.elements();
  // ∅, {1}, {0, 1}
  CHECK(xs.size() == 3);
  CHECK(std::count(xs.begin(), xs.end(), 0b00u) == 1);
  CHECK(std::count(xs.begin(), xs.end(), 0b10u) == 1);
  CHECK(std::count(xs.begin(), xs.end(), 0b11u) == 1);
  CHECK(check_heyting_laws(h).passed());
  CHECK(h.impl(0b10, 0b00) == 0b00);
  CHECK(h.impl(0b11, 0b10) == 0b10);
}

TEST_CASE("poset closure is reflexive and transitive") {
  const Poset p = Poset::from_covers(4, {{0, 1}, {1, 2}, {0, 3}});
  CHECK(p.le(0, 2));
  CHECK(p.le(3, 3));
  CHECK_FALSE(p.le(2, 0));
  CHECK_FALSE(p.le(3, 1));
  CHECK(p.up(0) == 0b1111);
}

TEST_CASE("upper sets of random posets satisfy the laws") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng() % 3 == 0) covers.emplace_back(a, b);
      }
    }
    UpperSets h(Poset::from_covers(n, covers));
    for (auto x : h.elements()) CHECK(h.is_upper(x));
    CHECK(check_heyting_laws(h).passed());
  }
}

TEST_CASE("future-stable state predicates") {
  StatePred h(4);
  CHECK(h.elements().size() == 6);
  CHECK(check_heyting_laws(h).passed());
  CHECK(h.at(h.from(2), 2));
  CHECK(h.at(h.from(2), 9));
  CHECK_FALSE(h.at(h.from(2), 1));
  CHECK(h.from(5) == h.bottom());
}

TEST_CASE("a broken implication fails residuation") {
  const Report bad = check_heyting_laws(BrokenImpl<TwoPoint>());
  CHECK_FALSE(bad.passed());
  bool residuation_failed = false;
  for (const auto& law : bad.laws()) {
    if (law.name.rfind("residuation", 0) == 0) residuation_failed = law.failed > 0;
  }
  CHECK(residuation_failed);
  CHECK_FALSE(check_heyting_laws(BrokenImpl<UpperSets>(UpperSets(Poset::chain(3)))).passed());
}

}  // TEST_SUITE
