#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "model_testkit.hpp"
#include "ms3/catalog.hpp"
#include "ms3/model.hpp"

using namespace ms3;

namespace {

CyclicWord w(std::initializer_list<Letter> ls) {
  return CyclicWord(std::vector<Letter>(ls));
}

}  // namespace

TEST_CASE("catalog items validate cleanly") {
  for (const auto& [key, p] : catalog_items()) {
    auto rep = validate_presentation(p);
    INFO(key << "\n" << rep.to_string());
    CHECK(rep.ok());
  }
}

TEST_CASE("an edge occurring once on a round-handle boundary is reported") {
  FlowPresentation p = trivial_orbit_flow(1, 1);
  // drop the lone d-word of L4: d now occurs once on T0 and once on T2
  for (auto& s : p.surfaces)
    if (s.id == "L4") s.boundary_words.clear();
  auto rep = validate_presentation(p);
  CHECK(rep.has("edge-occurrence"));
  CHECK(rep.has("no-boundary"));
}

TEST_CASE("chosen cycle naming an unknown edge is reported") {
  FlowPresentation p = twisted_orbit_flow(0);
  p.chosen_cycles["T0"] = w({{"zz", 1}});
  auto rep = validate_presentation(p);
  CHECK(rep.has("unknown-edge"));
}

TEST_CASE("structural violations are reported with identifiers") {
  FlowPresentation p = twisted_orbit_flow(1);

  SECTION("duplicate labels") {
    p.edges.push_back(p.edges.front());
    auto rep = validate_presentation(p);
    CHECK(rep.has("duplicate-id"));
  }
  SECTION("fixed orientation required on corner curves") {
    p.edges.front().orientation = Orientation::Free;
    CHECK(validate_presentation(p).has("orientation-fixed-required"));
  }
  SECTION("round 1-handles need the partition") {
    for (auto& h : p.handles)
      if (h.id == "T1") {
        h.partitioned = false;
        h.regions = h.all_regions();
        h.incoming.clear();
        h.outgoing.clear();
      }
    CHECK(validate_presentation(p).has("partition-required"));
  }
  SECTION("handle index ranges") {
    for (auto& h : p.handles)
      if (h.id == "T2") h.index = 3;
    CHECK(validate_presentation(p).has("bad-handle-index"));
  }
  SECTION("unknown region reference") {
    for (auto& h : p.handles)
      if (h.id == "T0") h.regions.push_back("nope");
    auto rep = validate_presentation(p);
    CHECK(rep.has("unknown-region"));
  }
  SECTION("region shared by more than two handles") {
    p.handles.push_back({"T9", HandleKind::Round, 0, std::nullopt, false,
                         {"L1", "L2"}, {}, {}});
    auto rep = validate_presentation(p);
    CHECK(rep.has("region-overshared"));
  }
  SECTION("chosen cycles attach to round handles only") {
    p.handles.push_back({"S7", HandleKind::Simple, 0, std::nullopt, false, {"L1"}, {}, {}});
    p.chosen_cycles["S7"] = w({{"a", 1}});
    auto rep = validate_presentation(p);
    CHECK(rep.has("chosen-handle"));
  }
  SECTION("open chosen cycle") {
    FlowPresentation q = builtin("tau-case3-demo");
    q.chosen_cycles["T0"] = w({{"w1", 1}});  // p -> q, not closed
    CHECK(validate_presentation(q).has("open-cycle"));
  }
  SECTION("tau case-1 handles must be round 0 and round 2") {
    p.tau.case1.push_back({"T1", "T2", 1, 0});
    CHECK(validate_presentation(p).has("tau-handle"));
  }
  SECTION("omega pair normalisation") {
    p.tau.case2[0].omega = std::pair<int, int>{3, 2};
    CHECK(validate_presentation(p).has("tau-omega"));
  }
  SECTION("mu domain must equal the edges of L") {
    p.tau.mu.erase("e01");
    CHECK(validate_presentation(p).has("tau-mu-domain"));
  }
  SECTION("L vertex roles follow the handle indices") {
    for (auto& v : p.tau.graph_l.vertices)
      if (v.id == "T0") v.role = VertexRole::Sink;
    auto rep = validate_presentation(p);
    CHECK(rep.has("tau-graph-vertex"));
  }
  SECTION("isolated L vertices are rejected") {
    p.tau.graph_l.vertices.push_back({"T2", VertexRole::Sink});
    p.tau.graph_l.vertices.back().id = "T9";  // no such handle, no edges
    auto rep = validate_presentation(p);
    CHECK(rep.has("tau-graph-vertex"));
  }
  SECTION("flat handles may not carry partition sides") {
    for (auto& h : p.handles)
      if (h.id == "T0") h.incoming.push_back("L1");
    CHECK(validate_presentation(p).has("partition-mixed"));
  }
}

TEST_CASE("relabel identity and flips") {
  FlowPresentation p = trivial_orbit_flow(1, -1);
  Isomorphism id;
  CHECK(relabel(p, id) == p);

  // swapping two loop labels keeps a valid presentation
  Isomorphism swap_ac;
  swap_ac.edge_map = {{"a", "c"}, {"c", "a"}};
  swap_ac.vertex_map = {{"va", "vc"}, {"vc", "va"}};
  FlowPresentation q = relabel(p, swap_ac);
  CHECK(validate_presentation(q).ok());
  CHECK_FALSE(q == p);

  // flipping a free loop negates its letters
  FlowPresentation t = builtin("type1-L");
  Isomorphism flip_a;
  flip_a.flips = {"a"};
  FlowPresentation tf = relabel(t, flip_a);
  bool saw_negated = false;
  for (const auto& s : tf.surfaces)
    for (const auto& cw : s.boundary_words)
      if (cw == w({{"a", -1}})) saw_negated = true;
  CHECK(saw_negated);
  CHECK(validate_presentation(tf).ok());
}

TEST_CASE("relabel rejects flips of fixed edges and collisions") {
  FlowPresentation p = twisted_orbit_flow(0);
  Isomorphism m;
  m.flips = {"a"};  // corner curves are fixed
  CHECK_THROWS_AS(relabel(p, m), std::invalid_argument);

  Isomorphism collide;
  collide.edge_map = {{"a", "b"}};  // b also stays b
  CHECK_THROWS_AS(relabel(p, collide), std::invalid_argument);
}

TEST_CASE("relabel round-trips through its inverse") {
  std::mt19937 rng(53);
  for (const auto& [key, p] : catalog_items()) {
    for (int i = 0; i < 5; ++i) {
      Isomorphism m = testkit::random_relabeling(p, rng);
      FlowPresentation q = relabel(p, m);
      INFO(key);
      CHECK(validate_presentation(q).ok());
      CHECK(relabel(q, inverse(m)) == p);
    }
  }
}
