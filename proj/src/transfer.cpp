#include "rungs/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Eigenvalues>

namespace rungs {

namespace {

using Poly = WeightPoly;

PolyMatrix enhanced_M() {
  const Poly c = Poly::c(), d = Poly::d(), one = 1, z = 0;
  return {{c + d + one, one, z, z, z},
          {c * (d + one), z, c, d + one, one},
          {c + d, one, z, z, z},
          {(c + one) * d, z, c + one, d, one},
          {c * d, z, c, d, one}};
}

PolyMatrix enhanced_Mprime() {
  const Poly c = Poly::c(), d = Poly::d(), z = 0;
  return {{c, z, z, z, z},
          {c * (d + 1), z, c, z, z},
          {c, z, z, z, z},
          {c * d, z, c, z, z},
          {c * d, z, c, z, z}};
}

PolyMatrix enhanced_N() {
  const Poly d = Poly::d(), one = 1, two = 2, z = 0;
  return {{one, d + two, one, d + one, d + one},
          {d + two, z, d + one, d + one, z},
          {one, d + one, one, d, d},
          {d + one, d + one, d, two * d + one, d},
          {d + one, z, d, d, z}};
}

// Substitute d = 0 (drop every monomial with a positive d power).
PolyMatrix at_d_zero(PolyMatrix m) {
  for (auto& row : m)
    for (auto& e : row) {
      Poly kept;
      for (const auto& [mono, k] : e.terms())
        if (mono.second == 0) kept += Poly::monomial(mono.first, 0, k);
      e = kept;
    }
  return m;
}

bool eigen_less(const cdouble& a, const cdouble& b) {
  constexpr double tol = 1e-12;
  const double ma = std::abs(a), mb = std::abs(b);
  if (std::abs(ma - mb) > tol * std::max(1.0, std::max(ma, mb))) return ma > mb;
  if (std::abs(a.real() - b.real()) > tol) return a.real() > b.real();
  return a.imag() < b.imag();
}

void sort_eigen(TransferSystem& ts) {
  const int s = ts.s;
  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return eigen_less(ts.lambda(i), ts.lambda(j)); });
  Eigen::VectorXcd lam(s);
  Eigen::MatrixXcd W(s, s);
  for (int k = 0; k < s; ++k) {
    lam(k) = ts.lambda(order[k]);
    W.row(k) = ts.W.row(order[k]);
  }
  ts.lambda = lam;
  ts.W = W;
}

void closed_form_ladder(TransferSystem& ts, double a) {
  ts.lambda.resize(2);
  ts.lambda << 1.0 / a, a;
  ts.W.resize(2, 2);
  ts.W << (1.0 / a - 1.0) / 2.0, 1.0, (a - 1.0) / 2.0, 1.0;
}

void closed_form_zigzag(TransferSystem& ts, double a) {
  ts.lambda.resize(2);
  ts.lambda << 1.0 / a, a;
  ts.W.resize(2, 2);
  ts.W << 1.0 / a - 1.0, 1.0, a - 1.0, 1.0;
}

void closed_form_helix3(TransferSystem& ts) {
  const double g = kGamma, sg = std::sqrt(g);
  const cdouble I(0.0, 1.0);
  ts.lambda.resize(5);
  ts.lambda << g + sg, 1.0, g - sg, -1.0 / g + I / sg, -1.0 / g - I / sg;
  ts.W.resize(5, 5);
  ts.W << std::pow(g, 2.5) + g * g, g + sg, g + 1.0 / sg, 1.0, std::pow(g, 1.5),
      -1.0, 0.0, 1.0, 0.0, 1.0,
      g * g - std::pow(g, 2.5), g - sg, g - 1.0 / sg, 1.0, -std::pow(g, 1.5),
      std::pow(g, -2.0) + I * std::pow(g, -2.5), -1.0 / g + I / sg, -1.0 / g - I * sg, 1.0,
      -I * std::pow(g, -1.5),
      std::pow(g, -2.0) - I * std::pow(g, -2.5), -1.0 / g - I / sg, -1.0 / g + I * sg, 1.0,
      I * std::pow(g, -1.5);
}

void numeric_eigen(TransferSystem& ts) {
  const int s = ts.s;
  const Eigen::MatrixXcd Mt = ts.M.transpose().cast<cdouble>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Mt);
  if (es.info() != Eigen::Success) throw NumericFailure("eigen-decomposition of M failed");
  ts.lambda = es.eigenvalues();
  ts.W.resize(s, s);
  for (int j = 0; j < s; ++j) {
    Eigen::VectorXcd v = es.eigenvectors().col(j);
    // two steps of inverse iteration clean up the solver's vector
    const cdouble shift = ts.lambda(j) * (1.0 + 1e-10) + 1e-14;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Mt - shift * Eigen::MatrixXcd::Identity(s, s));
    for (int it = 0; it < 2; ++it) {
      v = lu.solve(v);
      v /= v.norm();
    }
    cdouble scale = v(s - 1);
    if (std::abs(scale) < 1e-8) {
      Eigen::Index k;
      v.cwiseAbs().maxCoeff(&k);
      scale = v(k);
    }
    ts.W.row(j) = (v / scale).transpose();
  }
}

Eigen::RowVectorXd initial_vector(Family f, int s) {
  Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(s);
  a(s - 1) = 1.0;
  (void)f;
  return a;
}

}  // namespace

PolyMatrix symbolic_M(Family f) {
  const Poly c = Poly::c(), one = 1;
  switch (f) {
    case Family::Ladder: return {{2 * c + one, 2}, {c, one}};
    case Family::Zigzag: return {{one + c, one}, {c, one}};
    case Family::Helix3: return at_d_zero(enhanced_M());
    case Family::EnhancedHelix3: return enhanced_M();
  }
  return {};
}

PolyMatrix symbolic_Mprime(Family f) {
  const Poly c = Poly::c(), z = 0;
  switch (f) {
    case Family::Ladder: return {{2 * c, z}, {c, z}};
    case Family::Zigzag: return {{c, z}, {c, z}};
    case Family::Helix3: return at_d_zero(enhanced_Mprime());
    case Family::EnhancedHelix3: return enhanced_Mprime();
  }
  return {};
}

PolyMatrix symbolic_N(Family f) {
  switch (f) {
    case Family::Ladder: return {{2, 1}, {1, 0}};
    case Family::Zigzag: return {{1, 1}, {1, 0}};
    case Family::Helix3: return at_d_zero(enhanced_N());
    case Family::EnhancedHelix3: return enhanced_N();
  }
  return {};
}

Eigen::MatrixXd evaluate(const PolyMatrix& m, const Weights& w) {
  const auto r = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) out(i, j) = m[i][j].evaluate(w.c, w.d);
  return out;
}

double TransferSystem::normalizer() const {
  const Eigen::RowVectorXd w = w1();
  return w * N * w.transpose();
}

double ladder_alpha(double c) {
  if (std::isinf(c)) return 0.0;
  return 1.0 / (c + 1.0 + std::sqrt(c * c + 2.0 * c));
}
double ladder_c_of_alpha(double a) { return (1.0 - a) * (1.0 - a) / (2.0 * a); }
double zigzag_alpha(double c) { return 1.0 / (1.0 + c / 2.0 + std::sqrt(4.0 * c + c * c) / 2.0); }
double zigzag_c_of_alpha(double a) { return (1.0 - a) * (1.0 - a) / a; }

TransferSystem build_transfer(const GraphFamily& family) {
  TransferSystem ts;
  ts.family = family;
  ts.s = class_count(family.kind);
  ts.M_poly = symbolic_M(family.kind);
  ts.Mprime_poly = symbolic_Mprime(family.kind);
  ts.N_poly = symbolic_N(family.kind);
  if (!family.is_numeric()) return ts;

  ts.weights = family.weights();
  validate_weights(family.kind, ts.weights.c, ts.weights.d);
  ts.M = evaluate(ts.M_poly, ts.weights);
  ts.Mprime = evaluate(ts.Mprime_poly, ts.weights);
  ts.N = evaluate(ts.N_poly, ts.weights);
  ts.alpha = std::numeric_limits<double>::quiet_NaN();

  switch (family.kind) {
    case Family::Ladder:
      ts.alpha = ladder_alpha(ts.weights.c);
      closed_form_ladder(ts, ts.alpha);
      ts.closed_form_eigen = true;
      break;
    case Family::Zigzag:
      ts.alpha = zigzag_alpha(ts.weights.c);
      closed_form_zigzag(ts, ts.alpha);
      ts.closed_form_eigen = true;
      break;
    case Family::Helix3:
      if (ts.weights.c == 1.0) {
        closed_form_helix3(ts);
        ts.closed_form_eigen = true;
      } else {
        numeric_eigen(ts);
      }
      break;
    case Family::EnhancedHelix3: numeric_eigen(ts); break;
  }
  sort_eigen(ts);

  const cdouble l1 = ts.lambda(0);
  if (std::abs(l1.imag()) > 1e-10 * std::abs(l1) || l1.real() <= 0.0)
    throw NumericFailure("Perron root is not real and positive");
  if (ts.s > 1 && std::abs(ts.lambda(1)) >= l1.real() * (1.0 - 1e-12))
    throw NumericFailure("dominant eigenvalue is not simple");

  ts.a_init = initial_vector(family.kind, ts.s);
  const Eigen::MatrixXcd Winv = ts.W.inverse();
  ts.C = ts.a_init.cast<cdouble>() * Winv;
  ts.mu = (ts.w1() * ts.Mprime).cast<cdouble>() * Winv;
  return ts;
}

std::vector<WeightPoly> count_vector(Family f, int n) {
  if (n < 1) throw ValidationError("count needs n >= 1");
  const PolyMatrix M = symbolic_M(f);
  const int s = class_count(f);
  std::vector<WeightPoly> a(s);
  a[s - 1] = 1;
  int steps = f == Family::Ladder ? n : n - 1;
  if (f == Family::EnhancedHelix3 && n >= 3) {
    // Seeding at n = 1 would let the first chord reach a vertex left of the
    // window, so start from the three-vertex window, classes by direct count.
    const WeightPoly c = WeightPoly::c(), d = WeightPoly::d();
    a = {c * c + 2 * c * d, c, c, d, 1};
    steps = n - 3;
  }
  for (int k = 0; k < steps; ++k) {
    std::vector<WeightPoly> next(s);
    for (int i = 0; i < s; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; j < s; ++j)
        if (!M[i][j].is_zero()) next[j] += a[i] * M[i][j];
    }
    a = std::move(next);
  }
  return a;
}

WeightPoly count_segment(Family f, int n) { return count_vector(f, n)[0]; }

double count_closed_form(Family f, int n, double c) {
  if (n < 1) throw ValidationError("count needs n >= 1");
  switch (f) {
    case Family::Ladder: {
      const double a = ladder_alpha(c);
      return 0.5 * (1.0 - a) / (1.0 + a) * (std::pow(a, -n) - std::pow(a, n));
    }
    case Family::Zigzag: {
      const double a = zigzag_alpha(c);
      return (1.0 - a) / (1.0 + a) * (std::pow(a, 1 - n) - std::pow(a, n - 1));
    }
    case Family::Helix3: {
      if (c != 1.0) throw ValidationError("the helix-3 closed form is for unit weights only");
      const double g = kGamma, sg = std::sqrt(g), r5 = 4.0 * std::sqrt(5.0);
      const cdouble I(0.0, 1.0);
      const cdouble l4 = -1.0 / g + I / sg;
      cdouble v = (g * g - std::pow(g, 1.5)) / r5 * std::pow(g + sg, n) - 0.5 +
                  (g * g + std::pow(g, 1.5)) / r5 * std::pow(g - sg, n) +
                  (-std::pow(g, -2.0) - I * std::pow(g, -1.5)) / r5 * std::pow(l4, n) +
                  (-std::pow(g, -2.0) + I * std::pow(g, -1.5)) / r5 * std::pow(std::conj(l4), n);
      return v.real();
    }
    case Family::EnhancedHelix3: break;
  }
  throw ValidationError("no closed-form count for the enhanced helix-3 graph");
}

BigInt scalar_recurrence(int n) {
  if (n < 1) throw ValidationError("scalar recurrence needs n >= 1");
  std::vector<BigInt> a = {0, 0, 0, 1, 4, 12};  // a[1..5]
  for (int k = 5; k < n; ++k) a.push_back(3 * a[k] - 3 * a[k - 3] + a[k - 4]);
  return a[n];
}

double helix3_remainder(int n) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const BigInt count = count_segment(Family::Helix3, n).at_one();
  const Big s5 = boost::multiprecision::sqrt(Big(5));
  const Big g = (s5 + 1) / 2, sg = boost::multiprecision::sqrt(g);
  const Big lead = (g * g - g * sg) / (4 * s5) * boost::multiprecision::pow(g + sg, n);
  Big r = Big(count) - lead + Big(0.5);
  return static_cast<double>(boost::multiprecision::abs(r));
}

double edge_marginal(const TransferSystem& ts) {
  const Eigen::RowVectorXd w = ts.w1();
  const double num = w * ts.Mprime * ts.N * w.transpose();
  return num / (ts.lambda1() * ts.normalizer());
}

double joint_probability(const TransferSystem& ts, const std::vector<int>& offsets) {
  if (offsets.empty()) return edge_marginal(ts);
  for (std::size_t k = 0; k < offsets.size(); ++k)
    if (offsets[k] <= 0 || (k > 0 && offsets[k] <= offsets[k - 1]))
      throw ValidationError("offsets must be positive and strictly increasing");
  const double l1 = ts.lambda1();
  const Eigen::MatrixXd Ms = ts.M / l1, Mps = ts.Mprime / l1;
  const Eigen::RowVectorXd w = ts.w1();
  const Eigen::RowVectorXd right = w * Mps;  // (w_1 M')^T / lambda_1, transposed
  Eigen::RowVectorXd v = w * Mps;
  int prev = 0;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    for (int step = 0; step < offsets[k] - prev - 1; ++step) v = v * Ms;
    if (k + 1 < offsets.size()) v = v * Mps;
    prev = offsets[k];
  }
  // the last rung comes from the reflected factor; the left chain has
  // absorbed offsets.back() factors of lambda_1, the right one more
  const double num = v * ts.N * right.transpose();
  return num / ts.normalizer();
}

double rung_set_probability(const TransferSystem& ts, std::vector<int> sites) {
  if (sites.empty()) return 1.0;
  std::sort(sites.begin(), sites.end());
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw ValidationError("sites must be distinct");
  std::vector<int> offsets;
  for (std::size_t k = 1; k < sites.size(); ++k) offsets.push_back(sites[k] - sites[0]);
  return joint_probability(ts, offsets);
}

std::vector<ExpansionTerm> two_point_expansion(const TransferSystem& ts) {
  const Eigen::RowVectorXcd wmp = (ts.w1() * ts.Mprime).cast<cdouble>();
  const double l1 = ts.lambda1(), D = ts.normalizer();
  const Eigen::MatrixXcd N = ts.N.cast<cdouble>();
  std::vector<ExpansionTerm> out;
  for (int j = 0; j < ts.s; ++j) {
    const cdouble lj = ts.lambda(j);
    const cdouble b = (ts.W.row(j) * N * wmp.transpose())(0, 0);
    out.push_back({lj / l1, ts.mu(j) * b / (l1 * lj * D)});
  }
  return out;
}

std::vector<ExpansionTerm> three_point_expansion(const TransferSystem& ts, int k) {
  if (k < 1) throw ValidationError("three-point expansion needs k >= 1");
  const Eigen::RowVectorXd w = ts.w1();
  Eigen::RowVectorXd v = w * ts.Mprime;
  for (int i = 0; i < k - 1; ++i) v = v * ts.M;
  v = v * ts.Mprime;
  const Eigen::RowVectorXcd nu = v.cast<cdouble>() * ts.W.inverse();
  const Eigen::RowVectorXcd wmp = (w * ts.Mprime).cast<cdouble>();
  const double l1 = ts.lambda1(), D = ts.normalizer();
  const Eigen::MatrixXcd N = ts.N.cast<cdouble>();
  std::vector<ExpansionTerm> out;
  for (int j = 0; j < ts.s; ++j) {
    const cdouble lj = ts.lambda(j);
    const cdouble b = (ts.W.row(j) * N * wmp.transpose())(0, 0);
    out.push_back({lj / l1, nu(j) * b / (l1 * l1 * std::pow(lj, k) * D)});
  }
  return out;
}

double gap_probability(const TransferSystem& ts, int m) {
  if (m < 1) throw ValidationError("gap length must be >= 1");
  const double l1 = ts.lambda1();
  const Eigen::MatrixXd free = (ts.M - ts.Mprime) / l1;
  const Eigen::RowVectorXd w = ts.w1();
  Eigen::RowVectorXd v = w * ts.Mprime / l1;
  for (int i = 0; i < m - 1; ++i) v = v * free;
  const double num = v * ts.N * (w * ts.Mprime / l1).transpose();
  return num / ts.normalizer();
}

double renewal_gap_probability(double c, int m) {
  return gap_probability(build_transfer(GraphFamily::numeric(Family::Ladder, c)), m);
}

}  // namespace rungs
