#include "rungs/weight_poly.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rungs {

WeightPoly::WeightPoly(long long k) { add_term({0, 0}, BigInt(k)); }
WeightPoly::WeightPoly(const BigInt& k) { add_term({0, 0}, k); }

WeightPoly WeightPoly::monomial(int c_pow, int d_pow, const BigInt& coef) {
  WeightPoly p;
  p.add_term({c_pow, d_pow}, coef);
  return p;
}

void WeightPoly::add_term(const Monomial& m, const BigInt& k) {
  if (k == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, k);
    return;
  }
  it->second += k;
  if (it->second == 0) terms_.erase(it);
}

BigInt WeightPoly::coefficient(int c_pow, int d_pow) const {
  auto it = terms_.find({c_pow, d_pow});
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt WeightPoly::at_one() const {
  BigInt s = 0;
  for (const auto& [m, k] : terms_) s += k;
  return s;
}

int WeightPoly::degree_c() const {
  int deg = -1;
  for (const auto& [m, k] : terms_) deg = std::max(deg, m.first);
  return deg;
}

WeightPoly& WeightPoly::operator+=(const WeightPoly& o) {
  for (const auto& [m, k] : o.terms_) add_term(m, k);
  return *this;
}

WeightPoly& WeightPoly::operator-=(const WeightPoly& o) {
  for (const auto& [m, k] : o.terms_) add_term(m, -k);
  return *this;
}

WeightPoly& WeightPoly::operator*=(const WeightPoly& o) {
  WeightPoly out;
  for (const auto& [ma, ka] : terms_)
    for (const auto& [mb, kb] : o.terms_)
      out.add_term({ma.first + mb.first, ma.second + mb.second}, ka * kb);
  terms_ = std::move(out.terms_);
  return *this;
}

Rational WeightPoly::evaluate(const Rational& c, const Rational& d) const {
  Rational s = 0;
  for (const auto& [m, k] : terms_) {
    Rational t = Rational(k);
    for (int i = 0; i < m.first; ++i) t *= c;
    for (int i = 0; i < m.second; ++i) t *= d;
    s += t;
  }
  return s;
}

double WeightPoly::evaluate(double c, double d) const {
  double s = 0.0;
  for (const auto& [m, k] : terms_)
    s += k.convert_to<double>() * std::pow(c, m.first) * std::pow(d, m.second);
  return s;
}

namespace {

void append_var(std::ostringstream& os, const char* name, int power, bool& any) {
  if (power == 0) return;
  if (any) os << '*';
  os << name;
  if (power > 1) os << '^' << power;
  any = true;
}

}  // namespace

std::string WeightPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, k] : terms_) {
    BigInt mag = k < 0 ? BigInt(-k) : k;
    if (k < 0) os << '-';
    else if (!first) os << '+';
    first = false;
    bool any = false;
    if (mag != 1 || (m.first == 0 && m.second == 0)) os << mag;
    append_var(os, "c", m.first, any);
    append_var(os, "d", m.second, any);
  }
  return os.str();
}

nlohmann::json to_json(const WeightPoly& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [m, k] : p.terms())
    j["(" + std::to_string(m.first) + "," + std::to_string(m.second) + ")"] = k.str();
  return j;
}

WeightPoly weight_poly_from_json(const nlohmann::json& j) {
  WeightPoly p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int a = 0, b = 0;
    if (std::sscanf(it.key().c_str(), "(%d,%d)", &a, &b) != 2)
      throw std::invalid_argument("bad monomial key " + it.key());
    p += WeightPoly::monomial(a, b, BigInt(it.value().get<std::string>()));
  }
  return p;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  int e = 0;
  double m = std::frexp(x, &e);
  // 53-bit mantissa as an integer
  auto mi = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Rational r = BigInt(mi);
  BigInt p2 = BigInt(1) << std::abs(e);
  if (e >= 0) r *= p2; else r /= p2;
  return r;
}

}  // namespace rungs
