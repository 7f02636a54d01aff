#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rungs/family.hpp"
#include "rungs/state_classes.hpp"
#include "rungs/weight_poly.hpp"

namespace rungs {

using cdouble = std::complex<double>;

/// Hard-coded per-family matrices, entries polynomial in (c, d). The helix-3
/// family uses the enhanced matrices at d = 0 (which at c = 1 are the
/// integer matrices of the uniform helix-3 tree).
PolyMatrix symbolic_M(Family f);
PolyMatrix symbolic_Mprime(Family f);
PolyMatrix symbolic_N(Family f);

Eigen::MatrixXd evaluate(const PolyMatrix& m, const Weights& w);

/// (lambda_tilde, rho) pair of the expansion P = sum_j rho_j lambda_tilde_j^m.
struct ExpansionTerm {
  cdouble lambda_tilde;
  cdouble rho;
};

struct TransferSystem {
  GraphFamily family;
  int s = 0;
  PolyMatrix M_poly, Mprime_poly, N_poly;

  // numeric part, present iff family.is_numeric()
  Weights weights;
  Eigen::MatrixXd M, Mprime, N;
  /// Sorted by modulus desc, real part desc, imaginary part asc.
  Eigen::VectorXcd lambda;
  /// Row j is the left eigenvector for lambda(j).
  Eigen::MatrixXcd W;
  /// Kernel ratio alpha (ladder, zigzag); NaN otherwise.
  double alpha = 0.0;
  /// Initial vector a_init (ladder: a_0, others: a_1).
  Eigen::RowVectorXd a_init;
  /// a_init W^{-1}.
  Eigen::RowVectorXcd C;
  /// w_1 M' W^{-1}.
  Eigen::RowVectorXcd mu;
  /// Eigen data from the closed forms rather than a numeric solver.
  bool closed_form_eigen = false;

  double lambda1() const { return lambda(0).real(); }
  Eigen::RowVectorXd w1() const { return W.row(0).real(); }
  /// w_1 N w_1^T.
  double normalizer() const;
};

/// Throws ValidationError for invalid numeric weights and NumericFailure if
/// the Perron root is not simple.
TransferSystem build_transfer(const GraphFamily& family);

/// a_{n;1}: weighted tree count of the standard n-column (ladder) or
/// n-vertex (helix) window, by the matrix recursion. n >= 1.
WeightPoly count_segment(Family f, int n);
/// Whole class vector a_n = (a_{n;1}, ..., a_{n;s}).
std::vector<WeightPoly> count_vector(Family f, int n);

/// Closed-form count (ladder, zigzag, helix-3 at c = 1).
double count_closed_form(Family f, int n, double c);

/// Helix-3 tree counts by the scalar order-5 recurrence, a_1..a_5 seeded.
BigInt scalar_recurrence(int n);

/// |a_{n;1} - leading term + 1/2| for helix-3, in 50-digit arithmetic.
double helix3_remainder(int n);

/// P[z_0 in T] for the infinite graph.
double edge_marginal(const TransferSystem& ts);

/// P[z_0, z_{m_1}, ..., z_{m_k} in T] for 0 < m_1 < ... < m_k.
double joint_probability(const TransferSystem& ts, const std::vector<int>& offsets);

/// P[all z_s in T, s in sites] for any finite set of distinct sites.
double rung_set_probability(const TransferSystem& ts, std::vector<int> sites);

/// Two-point expansion P[z_0, z_m] = sum rho_j lambda_tilde_j^m.
std::vector<ExpansionTerm> two_point_expansion(const TransferSystem& ts);

/// Three-point expansion P[z_0, z_k, z_{m+1}] = sum rho^{(k)}_j lambda_tilde_j^m.
std::vector<ExpansionTerm> three_point_expansion(const TransferSystem& ts, int k);

/// P[T meets {z_0, ..., z_m} exactly in {z_0, z_m}], m >= 1.
double gap_probability(const TransferSystem& ts, int m);

/// Ladder only: the gap probability, equal to r_m times the edge marginal.
double renewal_gap_probability(double c, int m);

/// Kernel ratio alpha(c) for the ladder and zigzag, and its inverse c(alpha).
double ladder_alpha(double c);
double ladder_c_of_alpha(double alpha);
double zigzag_alpha(double c);
double zigzag_c_of_alpha(double alpha);

/// Golden ratio.
inline const double kGamma = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace rungs
