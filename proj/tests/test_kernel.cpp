#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rungs/kernel.hpp"
#include "rungs/transfer.hpp"
#include "support.hpp"

using namespace rungs;

namespace {

constexpr double kPi = std::numbers::pi;

double spectral(Family f, double c, double d, double x) {
  const double c1 = std::cos(2 * kPi * x), c2 = std::cos(4 * kPi * x);
  switch (f) {
    case Family::Ladder: return c / (c + 1 - c1);
    case Family::Zigzag: return c / (c + 2 + 2 * c1);
    case Family::Helix3: return c / (c + 3 + 4 * c1 + 2 * c2);
    case Family::EnhancedHelix3: return c / (c + 2 * d + 3 + 2 * (d + 2) * c1 + 2 * c2);
  }
  return 0;
}

// midpoint rule; exponentially accurate for analytic periodic integrands
double coefficient(Family f, double c, double d, int m) {
  const int n = 8192;
  double s = 0;
  for (int j = 0; j < n; ++j) {
    const double x = (j + 0.5) / n;
    s += spectral(f, c, d, x) * std::cos(2 * kPi * m * x);
  }
  return s / n;
}

}  // namespace

TEST_CASE("kernel entries are the Fourier coefficients of the spectral density") {
  struct P {
    Family f;
    double c, d;
  };
  for (const P& p : {P{Family::Ladder, 0.5, 0}, P{Family::Ladder, 3, 0}, P{Family::Zigzag, 1, 0},
                     P{Family::Helix3, 1, 0}, P{Family::Helix3, 2.5, 0}, P{Family::EnhancedHelix3, 1, 1},
                     P{Family::EnhancedHelix3, 0.3, 4}}) {
    const KernelSpec k = build_kernel(p.f, p.c, p.d);
    for (int m = 0; m <= 12; ++m) {
      INFO(to_string(p.f), " c=", p.c, " m=", m);
      CHECK(std::abs(kernel_entry(k, m) - coefficient(p.f, p.c, p.d, m)) < 1e-11);
      CHECK(kernel_entry(k, -m) == kernel_entry(k, m));
    }
    CHECK(std::abs(fourier_invert(k, 5) - fourier_invert_parallel(k, 5)) < 1e-14);
  }
}

TEST_CASE("density values") {
  CHECK(density(build_kernel(Family::Helix3, 1.0), 0.0) == doctest::Approx(0.1));
  CHECK(density(build_kernel(Family::Helix3, 1.0), 0.5) == doctest::Approx(0.5));
  CHECK(density(build_kernel(Family::Ladder, 1.0), 0.0) == doctest::Approx(1.0));
  const KernelSpec k = build_kernel(Family::EnhancedHelix3, 2.0, 1.0, 0.5, 0.1);
  CHECK(density(k, 0.3) == doctest::Approx(0.5 * spectral(Family::EnhancedHelix3, 2, 1, 0.4)));
}

TEST_CASE("minors agree with transfer-current determinants") {
  for (const std::vector<int>& sites : {std::vector<int>{0, 1}, {0, 2, 3}, {-2, 0, 4, 5}}) {
    CHECK(std::abs(window_probability(build_kernel(Family::Helix3, 0.7), sites) -
                   testing_support::finite_joint(Family::Helix3, 0.7, 0, sites)) < 1e-10);
    CHECK(std::abs(window_probability(build_kernel(Family::EnhancedHelix3, 1.0, 2.0), sites) -
                   testing_support::finite_joint(Family::EnhancedHelix3, 1.0, 2.0, sites)) < 1e-10);
  }
}

TEST_CASE("helix-3 two-point law is f0^2 - fm^2") {
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const KernelSpec k = build_kernel(Family::Helix3, 1.0);
  const double f0 = kernel_entry(k, 0);
  for (int m = 1; m <= 10; ++m) {
    const double fm = kernel_entry(k, m);
    CHECK(joint_probability(ts, {m}) == doctest::Approx(f0 * f0 - fm * fm).epsilon(1e-12));
  }
  const double g = kGamma;
  for (const auto& t : k.terms) CHECK(std::norm(t.x) == doctest::Approx(g - std::sqrt(g)).epsilon(1e-13));
}

TEST_CASE("thinning and phase") {
  const KernelSpec a = build_kernel(Family::Ladder, 1.0);
  const KernelSpec b = build_kernel(Family::Ladder, 1.0, 0.0, 0.5);
  CHECK(kernel_entry(b, 0) == doctest::Approx(0.5 / std::sqrt(3.0)));
  CHECK(kernel_entry(b, 3) == doctest::Approx(0.5 * kernel_entry(a, 3)));
  const KernelSpec t = build_kernel(Family::Helix3, 1.0, 0.0, 1.0, 0.3);
  CHECK(std::abs(kernel_entry_complex(t, 2) - kernel_entry(build_kernel(Family::Helix3, 1.0), 2) *
                                                  std::polar(1.0, 2 * kPi * 0.6)) < 1e-15);
  CHECK_THROWS_AS(kernel_entry(t, 2), NumericFailure);
  // a diagonal unitary twist leaves every minor unchanged
  CHECK(window_probability(t, {0, 1, 3}) ==
        doctest::Approx(window_probability(build_kernel(Family::Helix3, 1.0), {0, 1, 3})).epsilon(1e-12));
  CHECK_THROWS_AS(build_kernel(Family::Ladder, 1.0, 0.0, 1.5), ValidationError);
}

TEST_CASE("infinite rung weight") {
  const KernelSpec k = build_kernel(Family::Ladder, INFINITY, 0.0, 0.4);
  CHECK(kernel_entry(k, 0) == doctest::Approx(0.4));
  CHECK(kernel_entry(k, 1) == 0.0);
  CHECK(density(k, 0.37) == doctest::Approx(0.4));
  CHECK_THROWS_AS(build_kernel(Family::Zigzag, INFINITY), ValidationError);
}

TEST_CASE("regenerative order") {
  CHECK(regenerative_order(build_kernel(Family::Ladder, 2.0, 0, 0.3)).order == 1);
  CHECK(regenerative_order(build_kernel(Family::Zigzag, 0.2)).order == 1);
  CHECK(regenerative_order(build_kernel(Family::Helix3, 1.0)).order == 2);
  const auto o = regenerative_order(build_kernel(Family::EnhancedHelix3, 2.0, 3.0));
  CHECK(o.order == 2);
  // 1/f = (q0 + q1 cos + q2 cos 2) / c: cosine coefficients q/(2c)
  CHECK(o.coefficients[0] == doctest::Approx((2.0 + 6.0 + 3.0) / 2.0));
  CHECK(o.coefficients[1] == doctest::Approx(2.0 * 5.0 / 4.0));
  CHECK(o.coefficients[2] == doctest::Approx(2.0 / 4.0));
}

TEST_CASE("renewal law") {
  const KernelSpec k = build_kernel(Family::Ladder, 0.8);
  const double a = ladder_alpha(0.8);
  double mass = 0, mean = 0;
  for (int m = 1; m < 400; ++m) {
    mass += renewal_distribution(k, m);
    mean += m * renewal_distribution(k, m);
  }
  CHECK(mass == doctest::Approx(1.0));
  CHECK(mean == doctest::Approx((1 + a) / (1 - a)));
  CHECK_THROWS_AS(renewal_distribution(build_kernel(Family::Helix3, 1.0), 1), ValidationError);
}

TEST_CASE("renewal classification") {
  const auto [c0, c1] = reciprocal_coefficients(build_kernel(Family::Ladder, 2.0));
  CHECK(c0 == doctest::Approx(1.5));
  CHECK(c1 == doctest::Approx(-0.5));
  const RenewalClass r = classify_renewal_dpp(c0, c1);
  CHECK(r.c == doctest::Approx(2.0));
  CHECK(r.p == doctest::Approx(1.0));
  CHECK(r.phase == 0.0);
  // zigzag: positive cosine coefficient is the half-period twist
  const auto [z0, z1] = reciprocal_coefficients(build_kernel(Family::Zigzag, 1.0));
  const RenewalClass z = classify_renewal_dpp(z0, z1);
  CHECK(z.phase == doctest::Approx(0.5));
  CHECK(z.alpha == doctest::Approx(zigzag_alpha(1.0)));
  CHECK(classify_renewal_dpp(2.0, 0.0).alpha == 0.0);
  CHECK_THROWS_AS(classify_renewal_dpp(1.0, -0.5), ValidationError);
  CHECK_THROWS_AS(reciprocal_coefficients(build_kernel(Family::Helix3, 1.0)), ValidationError);
}

TEST_CASE("enhanced roots") {
  for (double c : {0.1, 1.0, 10.0})
    for (double d : {0.0, 2.0, 10.0}) {
      const auto r = enhanced_roots(c, d);
      CHECK(std::abs(r[0]) < 1.0);
      CHECK(std::abs(r[1]) < 1.0);
      for (const auto& x : r) {
        const cdouble gx = x * x * x * x + (d + 2) * x * x * x + (c + 2 * d + 3) * x * x + (d + 2) * x + 1.0;
        CHECK(std::abs(gx) < 1e-9);
      }
    }
}

TEST_CASE("non-realizability scan") {
  const auto s = order2_nonrealizability_scan({0.1, 1, 10}, {0, 5});
  const auto p = order2_nonrealizability_scan_parallel({0.1, 1, 10}, {0, 5});
  REQUIRE(s.size() == 6);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].separated);
    CHECK(s[i].hatf1 == p[i].hatf1);
  }
}

TEST_CASE("helix-3 kernel rebuilt from transfer data") {
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const KernelSpec k = build_kernel(Family::Helix3, 1.0);
  const auto rec = helix3_sign_recovery(ts, 15, kernel_entry(k, 1) > 0 ? 1 : -1);
  for (int m = 0; m <= 15; ++m) CHECK(std::abs(rec[m] - kernel_entry(k, m)) < 1e-9);
}
