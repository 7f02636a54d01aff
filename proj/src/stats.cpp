#include "rungs/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "rungs/family.hpp"

namespace rungs {

namespace {

double upper_tail(double stat, int dof) {
  if (dof < 1) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

ChiSquare chi_square_test(const std::vector<std::uint64_t>& observed,
                          const std::vector<double>& expected) {
  if (observed.size() != expected.size()) throw ValidationError("chi-square cell counts differ");
  double n = 0.0;
  for (auto o : observed) n += static_cast<double>(o);
  ChiSquare out;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * expected[i];
    if (expected[i] <= 0.0) {
      if (observed[i] != 0) {
        out.statistic = INFINITY;
        out.p_value = 0.0;
        return out;
      }
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - e;
    out.statistic += diff * diff / e;
    ++cells;
  }
  out.dof = cells - 1;
  out.p_value = upper_tail(out.statistic, out.dof);
  return out;
}

ChiSquare chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw ValidationError("chi-square cell counts differ");
  double na = 0.0, nb = 0.0;
  for (auto v : a) na += static_cast<double>(v);
  for (auto v : b) nb += static_cast<double>(v);
  const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
  ChiSquare out;
  int cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = static_cast<double>(a[i] + b[i]);
    if (s == 0.0) continue;
    const double diff = ka * static_cast<double>(a[i]) - kb * static_cast<double>(b[i]);
    out.statistic += diff * diff / s;
    ++cells;
  }
  out.dof = cells - 1;
  out.p_value = upper_tail(out.statistic, out.dof);
  return out;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    s += std::abs(a - b);
  }
  return 0.5 * s;
}

double lag_correlation(const std::vector<std::uint8_t>& x, int lag) {
  const std::size_t n = x.size() - static_cast<std::size_t>(lag);
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = x[k], b = x[k + lag];
    sa += a;
    sb += b;
    sab += a * b;
    saa += a * a;
    sbb += b * b;
  }
  const double m = static_cast<double>(n);
  const double cov = sab / m - (sa / m) * (sb / m);
  const double va = saa / m - (sa / m) * (sa / m);
  const double vb = sbb / m - (sb / m) * (sb / m);
  return cov / std::sqrt(va * vb);
}

double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace rungs
