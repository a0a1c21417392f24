#include "doctest.h"

#include "mca/assemblies.hpp"
#include "mca/cores.hpp"

using namespace mca;

namespace {

using A = Assembly<bool>;

}  // namespace

TEST_SUITE("assemblies") {

TEST_CASE("identity and composite trackers") {
  const auto core = partial_core();
  const auto& frame = core.frame;
  const A x = A::canonical("X", 3, true, false);
  const A y = A::canonical("Y", 2, true, false);
  const A z = A::canonical("Z", 4, true, false);
  CHECK(tracks(frame, x, x, {0, 1, 2}, ev_id()).passed());
  const std::vector<std::size_t> f{1, 0, 1}, g{3, 2};
  CHECK(tracks(frame, x, y, f, selector_tracker(f)).passed());
  CHECK(tracks(frame, y, z, g, selector_tracker(g)).passed());
  CHECK(compose_maps(f, g) == std::vector<std::size_t>{2, 3, 2});
  CHECK(tracks(frame, x, z, compose_maps(f, g), ev_comp(selector_tracker(f), selector_tracker(g))).passed());
}

TEST_CASE("a wrong tracker is rejected with the offending realizer") {
  const auto core = power_core(false);
  const A x = A::canonical("X", 2, true, false);
  const Verdict v = tracks(core.frame, x, x, {1, 0}, ev_id());
  CHECK(v.kind == Verdict::Kind::Fail);
  REQUIRE(v.witness.has_value());
  CHECK((*v.witness == selector(0) || *v.witness == selector(1)));
}

TEST_CASE("element witnesses") {
  const auto core = partial_core();
  const A x = A::canonical("X", 5, true, false);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(core.frame.check_evidence(Prop<bool>::top(), element_witness(i), x.realizers[i]).passed());
    CHECK_FALSE(core.frame.check_evidence(Prop<bool>::top(), element_witness(i), x.realizers[(i + 1) % 5]).passed());
  }
}

TEST_CASE("maps compose like functions") {
  const std::vector<std::size_t> f{0, 2, 1}, id3{0, 1, 2}, g{1, 1, 0}, h{2, 0};
  CHECK(compose_maps(id3, f) == f);
  CHECK(compose_maps(f, id3) == f);
  CHECK(compose_maps(compose_maps(f, g), h) == compose_maps(f, compose_maps(g, h)));
}

TEST_CASE("generated assembly checks") {
  SUBCASE("partial") { CHECK(check_assemblies(partial_core().frame, 30, 3).passed()); }
  SUBCASE("state") { CHECK(check_assemblies(state_core(false).frame, 20, 4).passed()); }
  SUBCASE("cps") { CHECK(check_assemblies(cps_core(true).frame, 20, 5).passed()); }
}

}  // TEST_SUITE
