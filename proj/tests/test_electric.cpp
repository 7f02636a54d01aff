#include <doctest.h>

#include <cmath>

#include "rungs/electric.hpp"
#include "rungs/kernel.hpp"
#include "support.hpp"

using namespace rungs;

TEST_CASE("effective resistance at unit weight") {
  const ResistanceProfile l = effective_resistance(Family::Ladder, 1.0);
  CHECK(l.r_plus == doctest::Approx(std::sqrt(3.0) - 1.0));
  CHECK(kirchhoff_marginal(l) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(fixed_point_residual(l) < 1e-14);
  const ResistanceProfile z = effective_resistance(Family::Zigzag, 1.0);
  CHECK(kirchhoff_marginal(z) == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(fixed_point_residual(z) < 1e-14);
}

TEST_CASE("finite windows converge to the infinite value") {
  for (Family f : {Family::Ladder, Family::Zigzag}) {
    const ResistanceProfile p = effective_resistance(f, 0.7);
    double prev = INFINITY;
    for (int n : {2, 5, 10, 20}) {
      const double err = std::abs(finite_window_resistance(f, 0.7, n) - p.r);
      CHECK(err <= prev);
      prev = err;
    }
    CHECK(prev < 1e-10);
  }
}

TEST_CASE("rung currents are transfer currents of the wide window") {
  for (Family f : {Family::Ladder, Family::Zigzag})
    for (double c : {0.5, 2.0}) {
      const ResistanceProfile p = effective_resistance(f, c);
      std::vector<int> sites;
      for (int m = 0; m <= 8; ++m) sites.push_back(m);
      const auto Y = testing_support::rung_currents(f, c, 0.0, 40, sites);
      for (int m = 0; m <= 8; ++m) {
        INFO(to_string(f), " c=", c, " m=", m);
        CHECK(std::abs(std::abs(transfer_current(p, m)) - std::abs(Y(0, m))) < 1e-10);
        CHECK(std::abs(std::abs(transfer_current(p, m)) - std::abs(kernel_entry(build_kernel(f, c), m))) < 1e-12);
      }
    }
}

TEST_CASE("zigzag voltage recursion") {
  const ResistanceProfile p = effective_resistance(Family::Zigzag, 1.0);
  const auto u = voltage_sequence(p, 10);
  CHECK(u[0] == p.r);
  CHECK(u[1] == 0.0);
  for (std::size_t k = 2; k < u.size(); ++k)
    CHECK(u[k] == doctest::Approx((1 - p.alpha) * u[k - 1] + p.alpha * u[k - 2]));
  // alternating decay with ratio alpha
  CHECK(rung_voltage(p, 3) / rung_voltage(p, 2) == doctest::Approx(-p.alpha));
}

TEST_CASE("unsupported families") {
  CHECK_THROWS_AS(effective_resistance(Family::Helix3, 1.0), ValidationError);
  CHECK_THROWS_AS(effective_resistance(Family::Ladder, 0.0), ValidationError);
}
