#pragma once

#include <cstdint>
#include <vector>

namespace rungs {

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Goodness of fit against probabilities `expected` (cells with zero
/// probability must be empty).
ChiSquare chi_square_test(const std::vector<std::uint64_t>& observed,
                          const std::vector<double>& expected);

/// Homogeneity of two count vectors over the same cells.
ChiSquare chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                const std::vector<std::uint64_t>& b);

double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

/// Sample correlation of (x_k, x_{k+lag}).
double lag_correlation(const std::vector<std::uint8_t>& x, int lag);

/// sqrt(p (1 - p) / n).
double binomial_sigma(double p, double n);

}  // namespace rungs
