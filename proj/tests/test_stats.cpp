#include <doctest.h>

#include "rungs/stats.hpp"

using namespace rungs;

TEST_CASE("chi-square p-values") {
  // 60/40 against a fair coin: statistic 4, one degree of freedom
  const ChiSquare r = chi_square_test({60, 40}, {0.5, 0.5});
  CHECK(r.statistic == doctest::Approx(4.0));
  CHECK(r.dof == 1);
  CHECK(r.p_value == doctest::Approx(0.0455003).epsilon(1e-5));
  CHECK(chi_square_test({50, 50}, {0.5, 0.5}).p_value == doctest::Approx(1.0));
  // zero-probability cells drop out
  CHECK(chi_square_test({30, 0, 70}, {0.3, 0.0, 0.7}).dof == 1);
}

TEST_CASE("two-sample homogeneity") {
  CHECK(chi_square_two_sample({100, 200}, {100, 200}).statistic == doctest::Approx(0.0));
  CHECK(chi_square_two_sample({100, 200}, {200, 100}).p_value < 1e-10);
}

TEST_CASE("total variation and correlations") {
  CHECK(tv_distance({0.5, 0.5}, {0.2, 0.8}) == doctest::Approx(0.3));
  const std::vector<std::uint8_t> alt = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  CHECK(lag_correlation(alt, 1) == doctest::Approx(-1.0));
  CHECK(lag_correlation(alt, 2) == doctest::Approx(1.0));
  CHECK(binomial_sigma(0.5, 100) == doctest::Approx(0.05));
}
