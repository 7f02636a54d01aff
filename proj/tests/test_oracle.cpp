#include <doctest.h>

#include <map>

#include <Eigen/Dense>

#include "rungs/oracle.hpp"
#include "rungs/stats.hpp"

using namespace rungs;

namespace {

// Kirchhoff in floating point, independent of the exact code paths.
double laplacian_count(const Segment& s, double c, double d) {
  const int n = static_cast<int>(s.vertex_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : s.edges) {
    const double w = e.weight({c, d});
    L(e.u, e.u) += w;
    L(e.v, e.v) += w;
    L(e.u, e.v) -= w;
    L(e.v, e.u) -= w;
  }
  return L.topLeftCorner(n - 1, n - 1).determinant();
}

}  // namespace

TEST_CASE("ladder 2x3 has 15 trees") {
  const Segment s = build_segment(GraphFamily::symbolic(Family::Ladder), 0, 2);
  const auto trees = enumerate_trees(s);
  CHECK(trees.size() == 15);
  for (const auto& t : trees) CHECK(is_spanning_tree(s, t));
  CHECK(weighted_count(s).str() == "3c+8c^2+4c^3");
}

TEST_CASE("enumeration agrees with floating Kirchhoff") {
  for (Family f : {Family::Ladder, Family::Zigzag, Family::Helix3, Family::EnhancedHelix3}) {
    const Segment s = build_segment(GraphFamily::symbolic(f), 0, f == Family::Ladder ? 4 : 7);
    const WeightPoly p = weighted_count(s);
    for (double c : {0.5, 2.0})
      for (double d : {0.0, 3.0}) {
        const double dd = f == Family::EnhancedHelix3 ? d : 0.0;
        CHECK(p.evaluate(c, dd) == doctest::Approx(laplacian_count(s, c, dd)).epsilon(1e-10));
        CHECK(static_cast<double>(matrix_tree_count(s, to_rational(c), to_rational(dd))) ==
              doctest::Approx(laplacian_count(s, c, dd)).epsilon(1e-10));
      }
  }
}

TEST_CASE("parallel enumeration is the serial list") {
  const Segment s = build_segment(GraphFamily::symbolic(Family::EnhancedHelix3), 0, 7);
  CHECK(enumerate_trees(s) == enumerate_trees_parallel(s));
  CHECK(weighted_count(s) == weighted_count_parallel(s));
}

TEST_CASE("bareiss determinant") {
  CHECK(bareiss_determinant({2, 0, 1, 1, 3, 2, 1, 1, 2}, 3) == 6);
  CHECK(bareiss_determinant({0, 1, 1, 0}, 2) == -1);
  CHECK(bareiss_determinant({1, 2, 2, 4}, 2) == 0);
}

TEST_CASE("edge probability: exact fraction of trees") {
  const Segment s = build_segment(GraphFamily::symbolic(Family::Ladder), 0, 2);
  const int z1 = s.find_edge("z_1");
  int with = 0;
  for (const auto& t : enumerate_trees(s)) with += t.contains(z1);
  CHECK(exact_edge_probability(s, 1, 0, z1) == Rational(with, 15));
  CHECK(edge_probability(s, {1.0, 0.0}, z1) == doctest::Approx(static_cast<double>(with) / 15.0));
}

TEST_CASE("edge cap") {
  const Segment s = build_segment(GraphFamily::symbolic(Family::Ladder), 0, 9);
  CHECK_THROWS_AS(enumerate_trees(s), CapExceeded);
  CHECK_THROWS_AS(weighted_count(s), ValidationError);
}

TEST_CASE("wilson sampler is uniform on a small ladder") {
  const Segment s = build_segment(GraphFamily::numeric(Family::Ladder, 1.0), 0, 2);
  const auto trees = enumerate_trees(s);
  std::map<EdgeSet, std::size_t> idx;
  for (std::size_t i = 0; i < trees.size(); ++i) idx[trees[i]] = i;
  std::vector<std::uint64_t> counts(trees.size(), 0);
  Rng rng(2024);
  for (int i = 0; i < 30000; ++i) {
    const EdgeSet t = wilson_sample(s, {1.0, 0.0}, rng);
    REQUIRE(idx.count(t));
    ++counts[idx[t]];
  }
  CHECK(chi_square_test(counts, std::vector<double>(15, 1.0 / 15)).p_value > 0.001);
}

TEST_CASE("wilson sampler follows edge weights") {
  const double c = 3.0;
  const Segment s = build_segment(GraphFamily::numeric(Family::Ladder, c), 0, 1);
  const int z0 = s.find_edge("z_0");
  const double want = edge_probability(s, {c, 0.0}, z0);
  Rng rng(5);
  int hits = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) hits += wilson_sample(s, {c, 0.0}, rng).contains(z0);
  CHECK(std::abs(hits / double(n) - want) < 3 * binomial_sigma(want, n));
}
