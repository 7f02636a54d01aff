#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "rungs/family.hpp"
#include "rungs/transfer.hpp"

namespace rungs {

/// One geometric term eta * x^{|m|} of a Toeplitz kernel, |x| < 1.
struct KernelTerm {
  cdouble eta;
  cdouble x;
};

/// Closed-form Toeplitz kernel of the rung process, optionally thinned.
/// Unthinned: hatf(m) = sum_k eta_k x_k^{|m|} and
/// f(x) = c_num / (q0 + q1 cos 2 pi x + q2 cos 4 pi x).
/// Entries of the represented matrix are p * hatf(l - k) * e^{2 pi i phase (l - k)}.
struct KernelSpec {
  Family family = Family::Ladder;
  double c = 1.0;
  double d = 0.0;
  double p = 1.0;
  bool c_infinite = false;
  std::vector<KernelTerm> terms;
  double c_num = 1.0;
  double q0 = 1.0, q1 = 0.0, q2 = 0.0;
  double phase = 0.0;
};

/// Ladder accepts c = +inf (alpha = 0, A = p I). Throws ValidationError for
/// out-of-range parameters, NumericFailure if a root of g sits on the unit
/// circle or the radicals disagree with the companion-matrix roots.
KernelSpec build_kernel(Family f, double c, double d = 0.0, double p = 1.0, double phase = 0.0);

/// Roots of g(x) = x^4 + (d+2)x^3 + (c+2d+3)x^2 + (d+2)x + 1 from the nested
/// radicals, the two inside the unit disk first.
std::array<cdouble, 4> enhanced_roots(double c, double d);
/// Same roots from the companion matrix eigenvalues (unordered).
std::array<cdouble, 4> enhanced_roots_companion(double c, double d);

cdouble kernel_entry_complex(const KernelSpec& k, int m);
/// Real entry; throws NumericFailure if the imaginary residue exceeds 1e-12
/// (use the complex version for twisted kernels).
double kernel_entry(const KernelSpec& k, int m);

/// Spectral density p * f((x + phase) mod 1).
double density(const KernelSpec& k, double x);
/// Density resummed from the geometric terms instead of the q coefficients.
double density_from_terms(const KernelSpec& k, double x);

/// det of the kernel minor on `sites`; clamped to [0, 1] after asserting it
/// lies there within 1e-10.
double window_probability(const KernelSpec& k, const std::vector<int>& sites);

/// Trapezoid rule for int_0^1 f(x) e^{-2 pi i m x} dx, nodes >= 4096.
cdouble fourier_invert_complex(const KernelSpec& k, int m, int nodes = 1 << 14);
double fourier_invert(const KernelSpec& k, int m, int nodes = 1 << 14);
/// OpenMP version of the same sum.
double fourier_invert_parallel(const KernelSpec& k, int m, int nodes = 1 << 14);

struct RegenerativeOrder {
  int order = 0;
  /// Cosine coefficients b_0, b_1, ... of 1/f (1/f = b_0 + sum 2 b_j cos 2 pi j x).
  std::vector<double> coefficients;
};

/// Smallest k with the Fourier coefficients of 1/f vanishing beyond k
/// (relative threshold 1e-9 against b_0).
RegenerativeOrder regenerative_order(const KernelSpec& k);

/// r_m = (1 - alpha)^2 m alpha^{m-1}; ladder or zigzag, unthinned only.
double renewal_distribution(const KernelSpec& k, int m);

struct RenewalClass {
  double alpha = 0.0;
  double p = 0.0;
  double c = 0.0;  // +inf when alpha = 0
  double phase = 0.0;
};

/// Inverse of the ladder parametrization for 1/f = c0 + c1 cos 2 pi (x + phase).
RenewalClass classify_renewal_dpp(double c0, double c1, double phase = 0.0);

/// (c0, c1) of 1/f for an order-one kernel.
std::pair<double, double> reciprocal_coefficients(const KernelSpec& k);

struct ScanPoint {
  double c, d;
  double hatf1;
  double q1;
  bool separated;
};

/// |hatf(1)| > 1e-12 for the enhanced kernel at every grid point.
std::vector<ScanPoint> order2_nonrealizability_scan(const std::vector<double>& cs,
                                                    const std::vector<double>& ds);
std::vector<ScanPoint> order2_nonrealizability_scan_parallel(const std::vector<double>& cs,
                                                             const std::vector<double>& ds);

/// Helix-3: rebuild hatf(0..mmax) from transfer probabilities only. The
/// magnitudes come from two-point probabilities, signs from three-point
/// determinants (k = 1, falling back to k = 2). The sign of hatf(1) is a
/// gauge choice (the other sign is the phase-1/2 twist) and is passed in.
std::vector<double> helix3_sign_recovery(const TransferSystem& ts, int mmax, int sign1);

}  // namespace rungs
