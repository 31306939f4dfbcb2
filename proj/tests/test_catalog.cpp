#include <catch2/catch_amalgamated.hpp>

#include "ms3/catalog.hpp"
#include "ms3/equivalence.hpp"

using namespace ms3;

TEST_CASE("trivial family shape") {
  FlowPresentation p = trivial_orbit_flow(1, 1);
  CHECK(p.surfaces.size() == 6);
  CHECK(p.edges.size() == 4);
  CHECK(p.handles.size() == 3);
  CHECK(validate_presentation(p).ok());
  REQUIRE(p.tau.case1.size() == 1);
  CHECK(p.tau.case1[0].alpha == 1);
  CHECK(p.tau.case1[0].beta == 1);
  CHECK_THROWS_AS(trivial_orbit_flow(2, 1), std::invalid_argument);
}

TEST_CASE("twisted family carries the odd intersection number") {
  for (int n = 0; n <= 5; ++n) {
    FlowPresentation p = twisted_orbit_flow(n);
    CHECK(validate_presentation(p).ok());
    bool found = false;
    for (const auto& r : p.tau.case2)
      if (r.handle == "T0") {
        found = true;
        CHECK(r.meridian.first == 2 * n + 1);
        REQUIRE(r.omega.has_value());
        CHECK(*r.omega == std::pair<int, int>{1, 2 * n + 1});
      }
    CHECK(found);
  }
  CHECK_THROWS_AS(twisted_orbit_flow(-1), std::invalid_argument);
}

TEST_CASE("fixture L graphs classify as named") {
  auto type_of = [](const FlowPresentation& p) {
    auto comps = classify(p.tau.graph_l);
    REQUIRE(comps.size() == 1);
    return comps[0].type;
  };
  CHECK(type_of(builtin("type1-L")) == GraphType::Type1);
  CHECK(type_of(builtin("type2-L")) == GraphType::Type2);
  CHECK(type_of(builtin("type3-L")) == GraphType::Type3);
  CHECK_FALSE(builtin("tau-case3-demo").tau.case3.empty());
  CHECK_THROWS_AS(builtin("no-such-fixture"), std::invalid_argument);
}

TEST_CASE("catalog keys parse back to presentations") {
  for (const auto& key : catalog_keys()) {
    INFO(key);
    CHECK(validate_presentation(catalog_emit(key)).ok());
  }
  CHECK_THROWS_AS(catalog_emit("trivial-orbit(1)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_emit("twisted-orbit(x)"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_emit("mystery(1)"), std::invalid_argument);
  // the optional second argument pins the total framing of L
  FlowPresentation p = catalog_emit("twisted-orbit(2,1)");
  std::int64_t total = 0;
  for (const auto& [id, v] : p.tau.mu) total += v.value;
  CHECK(total == 1);
}

TEST_CASE("catalog items are pairwise inequivalent") {
  auto items = catalog_items();
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      INFO(items[i].first << " vs " << items[j].first);
      CHECK_FALSE(find_equivalence(items[i].second, items[j].second).has_value());
    }
}
