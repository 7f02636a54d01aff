#include <doctest.h>

#include <algorithm>

#include "rungs/state_classes.hpp"
#include "rungs/transfer.hpp"

using namespace rungs;

TEST_CASE("class tables") {
  CHECK(state_class_table(Family::Ladder).s == 2);
  CHECK(state_class_table(Family::Zigzag).s == 2);
  CHECK(state_class_table(Family::Helix3).s == 5);
  CHECK(state_class_table(Family::EnhancedHelix3).semantics.size() == 5);
}

TEST_CASE("left classes of helix-3 forests") {
  const Segment s = build_segment(GraphFamily::symbolic(Family::Helix3), 0, 4);
  // boundary (4, 3, 2)
  CHECK(left_class(s, s.edge_set({"z_1", "z_2", "z_3", "z_4"})) == 1);
  CHECK(left_class(s, s.edge_set({"z_1", "z_2", "z_3"})) == 2);
  CHECK(left_class(s, s.edge_set({"z_1", "z_2", "z_4"})) == 3);
  CHECK(left_class(s, s.edge_set({"z_1", "z_2", "h_4"})) == 4);
  // vertex 0 cut off from the boundary
  CHECK(left_class(s, s.edge_set({"z_2", "z_3", "z_4"})) == 0);
  // cycle 1-2-3-4-1
  CHECK(left_class(s, s.edge_set({"z_2", "z_3", "z_4", "h_4", "z_1"})) == 0);
}

TEST_CASE("brute-force transfer matrices equal the closed ones") {
  for (Family f : {Family::Ladder, Family::Zigzag, Family::Helix3, Family::EnhancedHelix3}) {
    const Regenerated r = regenerate_transfer(f);
    INFO(to_string(f), " ", r.diagnostic);
    CHECK(r.consistent);
    CHECK(r.M == symbolic_M(f));
    CHECK(r.Mprime == symbolic_Mprime(f));
    CHECK(r.N == symbolic_N(f));
  }
}

TEST_CASE("helix-3 successor triples") {
  const auto succ = derive_successors(regenerate_transfer(Family::Helix3));
  // all-separate class: only h_n (with or without z_n) keeps vertex n-2 attached
  auto five = succ[4];
  std::sort(five.begin(), five.end());
  CHECK(five == std::vector<std::array<int, 3>>{{1, 0, 5}, {1, 1, 3}});
  std::size_t total = 0;
  for (const auto& v : succ) total += v.size();
  CHECK(total == 14);
}
