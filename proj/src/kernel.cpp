#include "rungs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace rungs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cdouble ipow(cdouble x, int m) {
  if (m == 0) return 1.0;
  cdouble r = 1.0;
  for (int k = 0; k < m; ++k) r *= x;
  return r;
}

cdouble g_prime(cdouble x, double c, double d) {
  return (4.0 * x * x * x + 3.0 * (d + 2.0) * x * x + 2.0 * (c + 2.0 * d + 3.0) * x + (d + 2.0)) / c;
}

void enhanced_terms(KernelSpec& k) {
  auto roots = enhanced_roots(k.c, k.d);
  auto check = enhanced_roots_companion(k.c, k.d);
  for (const auto& r : roots) {
    double best = 1e300;
    for (const auto& q : check) best = std::min(best, std::abs(r - q));
    if (best > 1e-9) throw NumericFailure("radical roots of g disagree with the companion matrix");
  }
  int inside = 0;
  for (const auto& q : check) inside += std::abs(q) < 1.0;
  if (inside != 2) throw NumericFailure("g does not have exactly two roots inside the unit disk");
  for (int j = 0; j < 2; ++j) k.terms.push_back({roots[j] / g_prime(roots[j], k.c, k.d), roots[j]});
  k.c_num = k.c;
  k.q0 = k.c + 2.0 * k.d + 3.0;
  k.q1 = 2.0 * (k.d + 2.0);
  k.q2 = 2.0;
}

}  // namespace

std::array<cdouble, 4> enhanced_roots(double c, double d) {
  const cdouble disc = std::sqrt(cdouble(d * d - 4.0 * d - 4.0 * c));
  std::array<cdouble, 4> out;
  int lo = 0, hi = 2;
  for (double sgn : {1.0, -1.0}) {
    const cdouble s = -d - 2.0 + sgn * disc;
    const cdouble root = std::sqrt(s * s - 16.0);
    const cdouble a = (s + root) / 4.0, b = (s - root) / 4.0;  // a * b = 1
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - 1.0) < 1e-12 || std::abs(mb - 1.0) < 1e-12)
      throw NumericFailure("a root of g lies on the unit circle (c=" + std::to_string(c) +
                           ", d=" + std::to_string(d) + ")");
    out[lo++] = ma < mb ? a : b;
    out[hi++] = ma < mb ? b : a;
  }
  return out;
}

std::array<cdouble, 4> enhanced_roots_companion(double c, double d) {
  Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
  const double coef[4] = {1.0, d + 2.0, c + 2.0 * d + 3.0, d + 2.0};  // x^0..x^3
  for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) comp(i, 3) = -coef[i];
  Eigen::EigenSolver<Eigen::Matrix4d> es(comp, false);
  std::array<cdouble, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

KernelSpec build_kernel(Family f, double c, double d, double p, double phase) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) throw ValidationError("thinning p must lie in [0, 1]");
  validate_weights(f, c, d, f == Family::Ladder);
  KernelSpec k;
  k.family = f;
  k.c = c;
  k.d = d;
  k.p = p;
  k.phase = phase;
  switch (f) {
    case Family::Ladder: {
      k.c_infinite = std::isinf(c);
      const double a = ladder_alpha(c);
      k.terms.push_back({(1.0 - a) / (1.0 + a), a});
      if (k.c_infinite) {
        k.c_num = 1.0;
        k.q0 = 1.0;
        k.q1 = 0.0;
      } else {
        k.c_num = c;
        k.q0 = c + 1.0;
        k.q1 = -1.0;
      }
      break;
    }
    case Family::Zigzag: {
      const double a = zigzag_alpha(c);
      k.terms.push_back({(1.0 - a) / (1.0 + a), -a});
      k.c_num = c;
      k.q0 = c + 2.0;
      k.q1 = 2.0;
      break;
    }
    case Family::Helix3:
      if (c == 1.0) {
        const double g = kGamma, r5 = 4.0 * std::sqrt(5.0);
        const cdouble eta(std::pow(g, 1.5) / r5, std::pow(g, -1.5) / r5);
        const cdouble al((std::pow(g, -1.5) - 1.0) / 2.0, (std::pow(g, 1.5) - 1.0) / 2.0);
        k.terms = {{eta, al}, {std::conj(eta), std::conj(al)}};
        k.c_num = 1.0;
        k.q0 = 4.0;
        k.q1 = 4.0;
        k.q2 = 2.0;
      } else {
        enhanced_terms(k);
      }
      break;
    case Family::EnhancedHelix3: enhanced_terms(k); break;
  }
  return k;
}

cdouble kernel_entry_complex(const KernelSpec& k, int m) {
  const int am = std::abs(m);
  cdouble s = 0.0;
  for (const auto& t : k.terms) s += t.eta * ipow(t.x, am);
  s *= k.p;
  if (k.phase != 0.0) s *= std::polar(1.0, kTwoPi * k.phase * m);
  return s;
}

double kernel_entry(const KernelSpec& k, int m) {
  const cdouble v = kernel_entry_complex(k, m);
  if (std::abs(v.imag()) > 1e-12) throw NumericFailure("kernel entry has a non-real residue");
  return v.real();
}

double density(const KernelSpec& k, double x) {
  const double y = x + k.phase;
  return k.p * k.c_num / (k.q0 + k.q1 * std::cos(kTwoPi * y) + k.q2 * std::cos(2.0 * kTwoPi * y));
}

double density_from_terms(const KernelSpec& k, double x) {
  const cdouble e = std::polar(1.0, kTwoPi * (x + k.phase));
  cdouble s = 0.0;
  for (const auto& t : k.terms) s += t.eta * (1.0 - t.x * t.x) / ((1.0 - t.x * e) * (1.0 - t.x / e));
  return k.p * s.real();
}

double window_probability(const KernelSpec& k, const std::vector<int>& sites) {
  const auto n = static_cast<Eigen::Index>(sites.size());
  if (n == 0) return 1.0;
  {
    auto sorted = sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("window sites must be distinct");
  }
  Eigen::MatrixXcd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = kernel_entry_complex(k, sites[j] - sites[i]);
  const cdouble det = A.partialPivLu().determinant();
  if (std::abs(det.imag()) > 1e-10) throw NumericFailure("kernel minor has a complex determinant");
  const double v = det.real();
  if (v < -1e-10 || v > 1.0 + 1e-10) throw NumericFailure("kernel minor outside [0, 1]");
  return std::clamp(v, 0.0, 1.0);
}

cdouble fourier_invert_complex(const KernelSpec& k, int m, int nodes) {
  if (nodes < 4096) throw ValidationError("quadrature needs at least 4096 nodes");
  cdouble s = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double x = static_cast<double>(j) / nodes;
    s += density(k, x) * std::polar(1.0, -kTwoPi * m * x);
  }
  return s / static_cast<double>(nodes);
}

double fourier_invert(const KernelSpec& k, int m, int nodes) {
  return fourier_invert_complex(k, m, nodes).real();
}

double fourier_invert_parallel(const KernelSpec& k, int m, int nodes) {
  if (nodes < 4096) throw ValidationError("quadrature needs at least 4096 nodes");
  double s = 0.0;
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (int j = 0; j < nodes; ++j) {
    const double x = static_cast<double>(j) / nodes;
    s += density(k, x) * std::cos(kTwoPi * m * x);
  }
  return s / nodes;
}

RegenerativeOrder regenerative_order(const KernelSpec& k) {
  if (k.p == 0.0) throw ValidationError("regenerative order is undefined for p = 0");
  constexpr int n = 256;
  std::vector<double> inv(n);
  for (int j = 0; j < n; ++j) {
    const double f = density_from_terms(k, static_cast<double>(j) / n);
    if (!(f > 0.0)) throw NumericFailure("density vanishes; 1/f is not bounded");
    inv[j] = 1.0 / f;
  }
  RegenerativeOrder out;
  for (int q = 0; q <= 8; ++q) {
    double b = 0.0;
    for (int j = 0; j < n; ++j) b += inv[j] * std::cos(kTwoPi * q * j / n);
    out.coefficients.push_back(b / n);
  }
  const double b0 = std::abs(out.coefficients[0]);
  out.order = 0;
  for (int q = 1; q <= 8; ++q)
    if (std::abs(out.coefficients[q]) > 1e-9 * b0) out.order = q;
  return out;
}

double renewal_distribution(const KernelSpec& k, int m) {
  if (k.family != Family::Ladder && k.family != Family::Zigzag)
    throw ValidationError("renewal distribution is defined for the ladder and zigzag kernels");
  if (k.p != 1.0) throw ValidationError("renewal distribution needs the unthinned kernel (p = 1)");
  if (m < 1) throw ValidationError("renewal gap m must be >= 1");
  const double a = std::abs(k.terms[0].x);
  if (a == 0.0) return m == 1 ? 1.0 : 0.0;
  return (1.0 - a) * (1.0 - a) * m * std::pow(a, m - 1);
}

RenewalClass classify_renewal_dpp(double c0, double c1, double phase) {
  RenewalClass out;
  out.phase = phase;
  if (c1 > 0.0) {
    c1 = -c1;
    out.phase = phase + 0.5;
  }
  out.phase -= std::floor(out.phase);
  if (!(c0 + c1 >= 1.0 - 1e-12))
    throw ValidationError("1/f = c0 + c1 cos(2 pi x) gives f outside [0, 1]: need c0 - |c1| >= 1");
  out.p = std::min(1.0, 1.0 / (c0 + c1));
  if (c1 == 0.0) {
    out.c = INFINITY;
    out.alpha = 0.0;
  } else {
    out.c = -1.0 / (c1 * out.p);
    out.alpha = ladder_alpha(out.c);
  }
  return out;
}

std::pair<double, double> reciprocal_coefficients(const KernelSpec& k) {
  if (k.q2 != 0.0) throw ValidationError("kernel is not of order one");
  const double s = k.p * k.c_num;
  return {k.q0 / s, k.q1 / s};
}

namespace {

ScanPoint scan_point(double c, double d) {
  KernelSpec k = build_kernel(Family::EnhancedHelix3, c, d);
  const double h1 = kernel_entry(k, 1);
  return {c, d, h1, 2.0 * (d + 2.0), std::abs(h1) > 1e-12};
}

}  // namespace

std::vector<ScanPoint> order2_nonrealizability_scan(const std::vector<double>& cs,
                                                    const std::vector<double>& ds) {
  std::vector<ScanPoint> out;
  for (double c : cs)
    for (double d : ds) out.push_back(scan_point(c, d));
  return out;
}

std::vector<ScanPoint> order2_nonrealizability_scan_parallel(const std::vector<double>& cs,
                                                             const std::vector<double>& ds) {
  const long long nc = static_cast<long long>(cs.size()), nd = static_cast<long long>(ds.size());
  std::vector<ScanPoint> out(cs.size() * ds.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < nc * nd; ++i) out[i] = scan_point(cs[i / nd], ds[i % nd]);
  return out;
}

std::vector<double> helix3_sign_recovery(const TransferSystem& ts, int mmax, int sign1) {
  const double f0 = edge_marginal(ts);
  std::vector<double> mag(mmax + 1), f(mmax + 1, 0.0);
  for (int m = 1; m <= mmax; ++m)
    mag[m] = std::sqrt(std::max(0.0, f0 * f0 - joint_probability(ts, {m})));
  f[0] = f0;
  if (mmax >= 1) f[1] = sign1 >= 0 ? mag[1] : -mag[1];
  // det [[f0, fk, F], [fk, f0, fr], [F, fr, f0]] = P[z_0, z_k, z_{m+1}],
  // F = f(m+1), fr = f(m+1-k); only the term 2 fk fr F sees the sign of F
  for (int m = 1; m + 1 <= mmax; ++m) {
    double known = 0.0, lin = 0.0, P = 0.0;
    for (int k : {1, 2}) {
      if (m + 1 - k < 1) break;
      const double fk = f[k], fr = f[m + 1 - k], F = mag[m + 1];
      lin = 2.0 * fk * fr;
      if (std::abs(lin) < 1e-14) continue;
      known = f0 * f0 * f0 - f0 * (fk * fk + F * F + fr * fr);
      P = joint_probability(ts, {k, m + 1});
      break;
    }
    if (std::abs(lin) < 1e-14) throw NumericFailure("sign of hatf(m+1) is not determined");
    f[m + 1] = (P - known) / lin >= 0.0 ? mag[m + 1] : -mag[m + 1];
  }
  return f;
}

}  // namespace rungs
