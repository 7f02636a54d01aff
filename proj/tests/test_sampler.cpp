#include <doctest.h>

#include <cmath>

#include "rungs/oracle.hpp"
#include "rungs/sampler.hpp"
#include "rungs/stats.hpp"
#include "rungs/transfer.hpp"

using namespace rungs;

TEST_CASE("ladder gaps follow the transfer gap law") {
  const double c = 0.8;
  const auto gaps = ladder_gaps(c, 40000, 9);
  const int top = 12;
  std::vector<std::uint64_t> obs(top + 1, 0);
  for (int g : gaps) ++obs[static_cast<std::size_t>(std::min(g, top + 1) - 1)];
  std::vector<double> p(top + 1, 0.0);
  // the transfer gap law is joint with z_0 in T
  const double z0 = edge_marginal(build_transfer(GraphFamily::numeric(Family::Ladder, c)));
  double acc = 0.0;
  for (int m = 1; m <= top; ++m) acc += (p[m - 1] = renewal_gap_probability(c, m) / z0);
  p[top] = 1.0 - acc;
  CHECK(chi_square_test(obs, p).p_value > 1e-3);
}

TEST_CASE("ladder sample is a spanning forest with one missing horizontal per gap") {
  Rng rng(5);
  for (bool cond : {false, true}) {
    const SamplePath s = ladder_renewal_sample(1.3, -30, 30, rng, cond);
    REQUIRE(s.has_tree());
    const Segment w = tree_window(s);
    CHECK(is_forest(w, tree_edges(s, w)));
    if (cond) CHECK(s.x[30] == 1);
    int last = -1;
    for (int k = 0; k < static_cast<int>(s.size()); ++k) {
      if (!s.x[k]) continue;
      if (last >= 0) {
        int missing = 0;
        for (int j = last + 1; j <= k; ++j) missing += !s.h0[j] + !s.h1[j];
        CHECK(missing == 1);
      }
      last = k;
    }
  }
}

TEST_CASE("infinite rung weight puts every rung in the tree") {
  Rng rng(2);
  const SamplePath s = ladder_renewal_sample(INFINITY, 0, 50, rng, false);
  for (auto v : s.x) CHECK(v == 1);
}

TEST_CASE("single-site frequencies") {
  const std::size_t n = 40000;
  for (Family f : {Family::Ladder, Family::Zigzag, Family::Helix3}) {
    const double want = edge_marginal(build_transfer(GraphFamily::numeric(f, 1.0)));
    const auto h = atom_histogram([&](Rng& g) { return native_sample(f, 1.0, 1, g); }, 1, n, 21);
    const double got = static_cast<double>(h[1]) / n;
    INFO(to_string(f));
    CHECK(std::abs(got - want) < 4 * binomial_sigma(want, n));
  }
}

TEST_CASE("thinning extremes") {
  Rng rng(8);
  const SamplePath s = ladder_renewal_sample(1.0, 0, 200, rng, false);
  CHECK(thin(s, 1.0, 3).x == s.x);
  for (auto v : thin(s, 0.0, 3).x) CHECK(v == 0);
  CHECK_THROWS_AS(thin(s, 1.5, 3), ValidationError);
}

TEST_CASE("one-site DPP is a Bernoulli variable") {
  const KernelSpec k = build_kernel(Family::Ladder, 1.0);
  const auto h = atom_histogram([&](Rng& g) { return dpp_window_sample(k, 1, g); }, 1, 30000, 4);
  CHECK(chi_square_test(h, {1 - 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)}).p_value > 1e-3);
}

TEST_CASE("helix-3 DPP pair probability") {
  const KernelSpec k = build_kernel(Family::Helix3, 1.0);
  const std::size_t n = 20000;
  const auto h = atom_histogram([&](Rng& g) { return dpp_window_sample(k, 12, g); }, 2, n, 6);
  const double want = 0.180901699437494742;  // gamma / (4 sqrt 5)
  const double got = static_cast<double>(h[3]) / n;
  CHECK(std::abs(got - want) < 3.5 * binomial_sigma(want, n));
}

TEST_CASE("DPP matches the native samplers on atoms") {
  for (Family f : {Family::Ladder, Family::Zigzag}) {
    const KernelSpec k = build_kernel(f, 0.6);
    const auto probs = atom_probabilities(k, 3);
    double tot = 0.0;
    for (double p : probs) tot += p;
    CHECK(tot == doctest::Approx(1.0));
    const auto h = atom_histogram([&](Rng& g) { return native_sample(f, 0.6, 3, g); }, 3, 30000, 12);
    INFO(to_string(f));
    CHECK(chi_square_test(h, probs).p_value > 1e-3);
  }
}

TEST_CASE("interlaced reference decorrelates neighbours") {
  const SamplePath s = interlaced_reference(0.4, 1.0, 200000, 77);
  CHECK(std::abs(lag_correlation(s.x, 1)) < 0.01);
  CHECK(std::abs(lag_correlation(s.x, 2)) > 0.05);
}

TEST_CASE("parallel histogram equals serial") {
  const auto s = [](Rng& g) { return native_sample(Family::Ladder, 1.0, 4, g); };
  CHECK(atom_histogram(s, 4, 5000, 3) == atom_histogram_parallel(s, 4, 5000, 3));
}

TEST_CASE("seeds determine samples") {
  CHECK(ladder_renewal_sample(1.0, 0, 300, std::uint64_t{11}, false).x ==
        ladder_renewal_sample(1.0, 0, 300, std::uint64_t{11}, false).x);
  const KernelSpec k = build_kernel(Family::Helix3, 1.0);
  CHECK(dpp_window_sample(k, 40, std::uint64_t{2}).x == dpp_window_sample(k, 40, std::uint64_t{2}).x);
}

TEST_CASE("native sampler coverage") {
  Rng rng(1);
  CHECK_THROWS_AS(native_sample(Family::EnhancedHelix3, 1.0, 5, rng), ValidationError);
  CHECK_THROWS_AS(native_sample(Family::Helix3, 2.0, 5, rng), ValidationError);
  CHECK_THROWS_AS(dpp_window_sample(build_kernel(Family::Ladder, 1.0), 201, rng), ValidationError);
}
