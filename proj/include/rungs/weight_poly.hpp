#pragma once

#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace rungs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in the edge weights (c, d) with big-integer coefficients.
/// Keys are exponent pairs (power of c, power of d). Zero terms are never
/// stored, so structural equality is polynomial equality.
class WeightPoly {
 public:
  using Monomial = std::pair<int, int>;

  WeightPoly() = default;
  WeightPoly(long long k);  // NOLINT: implicit constant
  WeightPoly(const BigInt& k);  // NOLINT

  static WeightPoly monomial(int c_pow, int d_pow, const BigInt& coef = 1);
  static WeightPoly c() { return monomial(1, 0); }
  static WeightPoly d() { return monomial(0, 1); }

  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(int c_pow, int d_pow) const;
  /// Sum of coefficients (value at c = d = 1).
  BigInt at_one() const;
  int degree_c() const;

  WeightPoly& operator+=(const WeightPoly& o);
  WeightPoly& operator-=(const WeightPoly& o);
  WeightPoly& operator*=(const WeightPoly& o);
  friend WeightPoly operator+(WeightPoly a, const WeightPoly& b) { return a += b; }
  friend WeightPoly operator-(WeightPoly a, const WeightPoly& b) { return a -= b; }
  friend WeightPoly operator*(WeightPoly a, const WeightPoly& b) { return a *= b; }
  bool operator==(const WeightPoly& o) const { return terms_ == o.terms_; }

  Rational evaluate(const Rational& c, const Rational& d) const;
  double evaluate(double c, double d) const;

  /// "4c+20c^2+24c^3+8c^4", "3+2c*d", "0".
  std::string str() const;

 private:
  void add_term(const Monomial& m, const BigInt& k);
  std::map<Monomial, BigInt> terms_;
};

nlohmann::json to_json(const WeightPoly& p);
WeightPoly weight_poly_from_json(const nlohmann::json& j);

/// Rational from a double that is exactly representable (grid values like
/// 0.5, 3). Exact conversion of the binary value.
Rational to_rational(double x);

}  // namespace rungs
