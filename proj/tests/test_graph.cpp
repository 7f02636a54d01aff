#include <doctest.h>

#include "rungs/graph.hpp"

using namespace rungs;

TEST_CASE("edge counts of standard windows") {
  for (int n = 3; n <= 9; ++n) {
    CHECK(build_segment(GraphFamily::symbolic(Family::Ladder), 0, n - 1).edge_count() == std::size_t(3 * n - 2));
    CHECK(build_segment(GraphFamily::symbolic(Family::Zigzag), 0, n - 1).edge_count() == std::size_t(2 * n - 3));
    CHECK(build_segment(GraphFamily::symbolic(Family::Helix3), 0, n - 1).edge_count() == std::size_t(2 * n - 4));
    CHECK(build_segment(GraphFamily::symbolic(Family::EnhancedHelix3), 0, n - 1).edge_count() ==
          std::size_t(3 * n - 6));
  }
}

TEST_CASE("edge order and labels") {
  const Segment s = build_segment(GraphFamily::symbolic(Family::Ladder), 0, 1);
  REQUIRE(s.edge_count() == 4);
  CHECK(s.edges[0].label == "z_0");
  CHECK(s.edges[1].label == "z_1");
  CHECK(s.edges[2].label == "h_{0,1}");
  CHECK(s.edges[3].label == "h_{1,1}");
  const Segment e = build_segment(GraphFamily::symbolic(Family::EnhancedHelix3), 0, 3);
  CHECK(e.labels(EdgeSet::from_mask(e.edge_count(), (1u << e.edge_count()) - 1)) ==
        std::vector<std::string>{"z_1", "z_2", "g_2", "z_3", "h_3", "g_3"});
  const Edge& h = e.edges[static_cast<std::size_t>(e.find_edge("h_3"))];
  CHECK(h.u == 0);
  CHECK(h.v == 3);
}

TEST_CASE("degenerate windows") {
  CHECK(build_segment(GraphFamily::symbolic(Family::Helix3), 0, 1).degenerate);
  CHECK_FALSE(build_segment(GraphFamily::symbolic(Family::Helix3), 0, 2).degenerate);
  CHECK_FALSE(build_segment(GraphFamily::symbolic(Family::Ladder), 0, 0).degenerate);
  CHECK_THROWS_AS(build_segment(GraphFamily::symbolic(Family::Ladder), 2, 1), ValidationError);
}

TEST_CASE("spanning tree predicate") {
  const Segment s = build_segment(GraphFamily::symbolic(Family::Ladder), 0, 1);
  CHECK(is_spanning_tree(s, s.edge_set({"z_0", "h_{0,1}", "h_{1,1}"})));
  CHECK_FALSE(is_spanning_tree(s, s.edge_set({"z_0", "z_1", "h_{0,1}", "h_{1,1}"})));
  CHECK_FALSE(is_spanning_tree(s, s.edge_set({"z_0", "z_1"})));
  CHECK(is_forest(s, s.edge_set({"z_0", "z_1"})));
  CHECK_THROWS_AS(s.edge_set({"g_1"}), ValidationError);
}

TEST_CASE("disjoint sets rollback") {
  DisjointSets ds(4);
  CHECK(ds.unite(0, 1));
  const auto mark = ds.history();
  CHECK(ds.unite(2, 3));
  CHECK(ds.unite(1, 2));
  CHECK_FALSE(ds.unite(0, 3));
  CHECK(ds.components() == 1);
  ds.rollback(mark);
  CHECK(ds.components() == 3);
  CHECK(ds.find(0) == ds.find(1));
  CHECK(ds.find(2) != ds.find(3));
}

TEST_CASE("segment json") {
  const auto j = to_json(build_segment(GraphFamily::numeric(Family::EnhancedHelix3, 2.0, 0.5), 0, 3));
  CHECK(j["family"] == "enhanced");
  CHECK(j["vertices"].size() == 4);
  CHECK(j["edges"].size() == 6);
  CHECK(j["edges"][2]["label"] == "g_2");
  CHECK(j["edges"][2]["weight"] == 0.5);
  CHECK(j["edges"][0]["weight"] == 2.0);
}

TEST_CASE("edge set ordering and counts") {
  EdgeSet a(70), b(70);
  a.insert(65);
  b.insert(3);
  CHECK(a.count() == 1);
  CHECK(a.contains(65));
  CHECK(a != b);
  CHECK(a.indices() == std::vector<int>{65});
  a.erase(65);
  CHECK(a.count() == 0);
}
