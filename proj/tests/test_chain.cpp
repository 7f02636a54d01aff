#include <doctest.h>

#include <cmath>

#include "rungs/chain.hpp"
#include "rungs/kernel.hpp"
#include "rungs/transfer.hpp"

using namespace rungs;

namespace {

const double g = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("projected matrix from eigen data matches the closed forms") {
  const Matrix5 a = rbar_from_transfer(), b = rbar_closed_form();
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
  for (int i = 0; i < 5; ++i) CHECK(a.row(i).sum() == doctest::Approx(1.0));
  CHECK(a(0, 0) == doctest::Approx(0.6920287).epsilon(1e-6));
  CHECK(a(3, 2) == doctest::Approx(0.7907997).epsilon(1e-6));
  CHECK((pi_Rbar_from_transfer() - pi_Rbar_closed_form()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lifted chain") {
  const ChainSpec s = build_chain();
  for (int i = 0; i < 11; ++i) {
    CHECK(s.R.row(i).sum() == doctest::Approx(1.0));
    for (int j = 0; j < 11; ++j) {
      const auto& ok = successor_table()[kAlphabet[i].cls - 1];
      if (std::find(ok.begin(), ok.end(), j) == ok.end()) CHECK(s.R(i, j) == 0.0);
    }
  }
  // identical rows within a class
  CHECK(s.R(0, 0) == s.R(2, 0));
  CHECK(s.R(0, 0) == doctest::Approx(g - std::sqrt(g)));
  CHECK((s.pi_R - pi_R_closed_form()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((s.pi_R * s.R - s.pi_R).cwiseAbs().maxCoeff() < 1e-14);
  // pi^R pushed to classes is pi^Rbar
  Row5 proj = Row5::Zero();
  for (int i = 0; i < 11; ++i) proj(kAlphabet[i].cls - 1) += s.pi_R(i);
  CHECK((proj - s.pi_Rbar).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("entropy") {
  const ChainSpec s = build_chain();
  const double h = std::log(g + std::sqrt(g));
  CHECK(chain_entropy(s) == doctest::Approx(h).epsilon(1e-12));
  CHECK(chain_entropy_projected(s) == doctest::Approx(h).epsilon(1e-12));
  CHECK(h == doctest::Approx(1.06127506190503565).epsilon(1e-15));
}

TEST_CASE("the tree chain is the entropy maximizer over the template") {
  // coordinate search with shrinking steps on the seven free parameters
  FreeParameters x = {0.5, 0.25, 0.25, 0.25, 0.5, 0.5, 0.5};
  auto feasible = [](const FreeParameters& p) {
    for (double v : p)
      if (v <= 0.0 || v >= 1.0) return false;
    return p[1] + p[2] + p[3] < 1.0;
  };
  double best = chain_entropy(chain_from_parameters(x));
  for (double step = 0.1; step > 1e-10; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < 7; ++i)
        for (double sgn : {1.0, -1.0}) {
          FreeParameters y = x;
          y[i] += sgn * step;
          if (!feasible(y)) continue;
          const double h = chain_entropy(chain_from_parameters(y));
          if (h > best) {
            best = h;
            x = y;
            moved = true;
          }
        }
    }
  }
  const FreeParameters want = {0.69202867847165176793, 0.38875672696616535394, 0.25424132496148527486,
                               0.22248654606766929211, 0.52908551363574612516, 0.79079967411811755990,
                               0.65398566076417411609};
  for (int i = 0; i < 7; ++i) CHECK(x[i] == doctest::Approx(want[i]).epsilon(1e-6));
  CHECK(best == doctest::Approx(std::log(g + std::sqrt(g))).epsilon(1e-12));
}

TEST_CASE("rung-pattern probabilities") {
  const ChainSpec s = build_chain();
  const double s5 = std::sqrt(5.0);
  CHECK(query_probability(s, {1}) == doctest::Approx(std::pow(g, 1.5) / (2 * s5)).epsilon(1e-13));
  CHECK(query_probability(s, {1, 1}) == doctest::Approx(g / (4 * s5)).epsilon(1e-13));
  CHECK(query_probability(s, {-1, -1, -1}) == doctest::Approx(1.0));
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const KernelSpec k = build_kernel(Family::Helix3, 1.0);
  CHECK(query_probability(s, {1, -1, -1, 1, 1}) == doctest::Approx(joint_probability(ts, {3, 4})).epsilon(1e-12));
  CHECK(query_probability(s, {1, 0, 1}) ==
        doctest::Approx(window_probability(k, {0, 2}) - window_probability(k, {0, 1, 2})).epsilon(1e-12));
  CHECK(parse_pattern("1,*,0") == std::vector<int>{1, -1, 0});
  CHECK_THROWS_AS(parse_pattern("1,h"), ValidationError);
  CHECK_THROWS_AS(query_probability(s, {2}), ValidationError);
}

TEST_CASE("sample paths decode to forests") {
  const ChainSpec s = build_chain();
  Rng rng(12);
  const auto path = sample_path(s, 20, rng);
  const DecodedPath d = decode_path(path);
  const Segment w = decoded_window(20);
  CHECK(is_forest(w, decoded_edges(d, w)));
  Rng a(4), b(4);
  CHECK(sample_path(s, 500, a) == sample_path(s, 500, b));
  Rng c(1);
  CHECK(sample_path(s, 3, c, 9).front() == 9);
}

TEST_CASE("forbidden transitions are rejected with their position") {
  // delta_1 (class 1) may not be followed by delta_3
  try {
    decode_path({0, 1, 2});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
}

TEST_CASE("successor table regenerated") {
  const SuccessorReport r = verify_successor_table();
  CHECK(r.match);
  CHECK(r.derived[1] == std::vector<int>{2, 5, 8, 9});
}
