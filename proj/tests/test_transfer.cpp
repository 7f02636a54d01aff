#include <doctest.h>

#include <cmath>

#include "rungs/oracle.hpp"
#include "rungs/transfer.hpp"
#include "support.hpp"

using namespace rungs;

namespace {

const double g = (1.0 + std::sqrt(5.0)) / 2.0;
const double s5 = std::sqrt(5.0);

bool contains(const std::vector<ExpansionTerm>& terms, cdouble rho, double tol = 1e-10) {
  for (const auto& t : terms)
    if (std::abs(t.rho - rho) < tol) return true;
  return false;
}

}  // namespace

TEST_CASE("ladder counts obey sigma_{n+1} = (2c+2) sigma_n - sigma_{n-1}") {
  const WeightPoly c = WeightPoly::c();
  WeightPoly prev = 0, cur = c;
  for (int n = 1; n <= 25; ++n) {
    CHECK(count_segment(Family::Ladder, n) == cur);
    WeightPoly next = (2 * c + 2) * cur - prev;
    prev = cur;
    cur = next;
  }
}

TEST_CASE("ladder n = 40 overflows 64 bits but stays exact") {
  const BigInt a40 = count_segment(Family::Ladder, 40).at_one();
  BigInt p = 0, q = 1;
  for (int n = 1; n < 40; ++n) {
    BigInt r = 4 * q - p;
    p = q;
    q = r;
  }
  CHECK(a40 == q);
  CHECK(a40 > BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("transfer counts match enumeration") {
  for (Family f : {Family::Zigzag, Family::Helix3, Family::EnhancedHelix3})
    for (int n = 3; n <= 9; ++n)
      CHECK(count_segment(f, n) == weighted_count(build_segment(GraphFamily::symbolic(f), 0, n - 1)));
}

TEST_CASE("closed-form counts") {
  for (int n = 1; n <= 12; ++n) {
    for (double c : {0.5, 1.0, 3.0}) {
      CHECK(count_closed_form(Family::Ladder, n, c) ==
            doctest::Approx(count_segment(Family::Ladder, n).evaluate(c, 0.0)).epsilon(1e-10));
      if (n >= 2)
        CHECK(count_closed_form(Family::Zigzag, n, c) ==
              doctest::Approx(count_segment(Family::Zigzag, n).evaluate(c, 0.0)).epsilon(1e-10));
    }
  }
  CHECK(scalar_recurrence(60) == count_segment(Family::Helix3, 60).at_one());
  double worst = 0.0;
  // n = 1 is a transient (0.319) outside the limsup
  for (int n = 2; n <= 60; ++n) worst = std::max(worst, helix3_remainder(n));
  CHECK(worst <= 0.25 - std::sqrt(5.0) / 20 + 1e-9);
  CHECK(helix3_remainder(60) > 0.1);
}

TEST_CASE("perron roots") {
  CHECK(build_transfer(GraphFamily::numeric(Family::Ladder, 1.0)).lambda1() == doctest::Approx(2 + std::sqrt(3.0)));
  CHECK(build_transfer(GraphFamily::numeric(Family::Helix3, 1.0)).lambda1() ==
        doctest::Approx(g + std::sqrt(g)).epsilon(1e-13));
}

TEST_CASE("marginals in closed form") {
  for (double c : {0.2, 1.0, 5.0}) {
    const double a = ladder_alpha(c);
    CHECK(edge_marginal(build_transfer(GraphFamily::numeric(Family::Ladder, c))) ==
          doctest::Approx((1 - a) / (1 + a)).epsilon(1e-12));
    CHECK(edge_marginal(build_transfer(GraphFamily::numeric(Family::Zigzag, c))) ==
          doctest::Approx(std::sqrt(c / (c + 4))).epsilon(1e-12));
    CHECK(ladder_c_of_alpha(a) == doctest::Approx(c));
    CHECK(zigzag_c_of_alpha(zigzag_alpha(c)) == doctest::Approx(c));
  }
  CHECK(edge_marginal(build_transfer(GraphFamily::numeric(Family::Helix3, 1.0))) ==
        doctest::Approx(std::pow(g, 1.5) / (2 * s5)).epsilon(1e-13));
}

TEST_CASE("joint probabilities match the transfer-current theorem on a wide window") {
  struct P {
    Family f;
    double c, d;
  };
  for (const P& p : {P{Family::Ladder, 1.0, 0.0}, P{Family::Ladder, 0.4, 0.0}, P{Family::Zigzag, 2.0, 0.0},
                     P{Family::Helix3, 1.0, 0.0}, P{Family::Helix3, 0.6, 0.0}, P{Family::EnhancedHelix3, 1.0, 1.0},
                     P{Family::EnhancedHelix3, 2.0, 0.5}}) {
    const TransferSystem ts = build_transfer(GraphFamily::numeric(p.f, p.c, p.d));
    INFO(to_string(p.f), " c=", p.c, " d=", p.d);
    CHECK(edge_marginal(ts) == doctest::Approx(testing_support::finite_joint(p.f, p.c, p.d, {0})).epsilon(1e-10));
    for (const std::vector<int>& off : {std::vector<int>{1}, {3}, {1, 2}, {2, 5}, {1, 4, 6}}) {
      std::vector<int> sites = {0};
      sites.insert(sites.end(), off.begin(), off.end());
      CHECK(std::abs(joint_probability(ts, off) - testing_support::finite_joint(p.f, p.c, p.d, sites)) < 1e-10);
    }
    CHECK(std::abs(rung_set_probability(ts, {-3, 2, 0}) - testing_support::finite_joint(p.f, p.c, p.d, {-3, 0, 2})) <
          1e-10);
  }
}

TEST_CASE("helix-3 two-point constants") {
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const auto terms = two_point_expansion(ts);
  CHECK(contains(terms, g * g * g / 20));
  CHECK(contains(terms, -1 / (4 * s5)));
  CHECK(contains(terms, 0.0));
  CHECK(contains(terms, cdouble(-2, 1) / 40.0));
  CHECK(contains(terms, cdouble(-2, -1) / 40.0));
}

TEST_CASE("helix-3 three-point constants") {
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const auto k1 = three_point_expansion(ts, 1);
  CHECK(contains(k1, std::pow(g, 2.5) / 40));
  // this value (not twice it) is consistent with P[z0,z1,z2]
  CHECK(contains(k1, (1 - std::pow(g, 1.5)) / (8 * s5)));
  CHECK(contains(k1, 0.0));
  CHECK(contains(k1, cdouble(std::sqrt(g) - s5, 1 / std::sqrt(g)) / 80.0));
  const auto k2 = three_point_expansion(ts, 2);
  CHECK(contains(k2, -std::pow(g, 2.5) / 20 + g * g / 10));
  CHECK(contains(k2, -(1 / g + 1 / std::sqrt(g)) / (4 * s5)));
  CHECK(contains(k2, cdouble(std::pow(g, -1.5) + 2, std::pow(g, 1.5) - 1) / 40.0));
  // at m = 1 the sum is P[z0, z1, z2]
  cdouble s = 0;
  for (const auto& t : k1) s += t.rho * t.lambda_tilde;
  CHECK(s.real() == doctest::Approx((g * g + std::pow(g, 1.5)) / (4 * s5) * std::pow(g - std::sqrt(g), 2)).epsilon(1e-12));
}

TEST_CASE("gap probability by inclusion-exclusion") {
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::EnhancedHelix3, 1.5, 0.5));
  for (int m = 1; m <= 6; ++m) {
    double want = 0.0;
    for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
      std::vector<int> off;
      for (int j = 1; j < m; ++j)
        if (mask >> (j - 1) & 1) off.push_back(j);
      off.push_back(m);
      want += (std::popcount(mask) % 2 ? -1.0 : 1.0) * joint_probability(ts, off);
    }
    CHECK(gap_probability(ts, m) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(count_segment(Family::Ladder, 0), ValidationError);
  CHECK_THROWS_AS(build_transfer(GraphFamily::numeric(Family::Ladder, -1.0)), ValidationError);
  CHECK_THROWS_AS(joint_probability(build_transfer(GraphFamily::numeric(Family::Ladder, 1.0)), {2, 2}),
                  ValidationError);
}
