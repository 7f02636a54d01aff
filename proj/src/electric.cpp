#include "rungs/electric.hpp"

#include <cmath>

#include "rungs/graph.hpp"
#include "rungs/oracle.hpp"

namespace rungs {

namespace {

void require_two_wide(Family f) {
  if (f != Family::Ladder && f != Family::Zigzag)
    throw ValidationError("the electrical route covers the ladder and the zigzag only");
}

}  // namespace

ResistanceProfile effective_resistance(Family f, double c) {
  require_two_wide(f);
  validate_weights(f, c, 0.0);
  ResistanceProfile p;
  p.family = f;
  p.c = c;
  if (f == Family::Ladder) {
    // r+ = 1/(c + 1/(r+ + 2))  <=>  c r+^2 + 2c r+ - 2 = 0
    p.r_plus = -1.0 + std::sqrt(1.0 + 2.0 / c);
    p.r0 = p.r_plus + 2.0;
    p.r = 1.0 / (c + 2.0 / p.r0);
    p.alpha = p.r_plus / (2.0 + p.r_plus);
  } else {
    // r+ = 1/(c + 1/(r+ + 1))  <=>  c r+^2 + c r+ - 1 = 0
    p.r_plus = (-c + std::sqrt(c * c + 4.0 * c)) / (2.0 * c);
    p.r0 = p.r_plus + 1.0;
    p.r = 1.0 / (c + 2.0 / p.r0);
    p.alpha = p.r_plus / (1.0 + p.r_plus);
  }
  return p;
}

double fixed_point_residual(const ResistanceProfile& p) {
  const double back = p.family == Family::Ladder ? 2.0 : 1.0;
  return std::abs(p.r_plus - 1.0 / (p.c + 1.0 / (p.r_plus + back)));
}

std::vector<double> voltage_sequence(const ResistanceProfile& p, int n) {
  std::vector<double> u;
  if (p.family == Family::Ladder) {
    u.push_back(p.r);
    for (int k = 1; k <= n; ++k) u.push_back(u.back() * p.alpha);
    return u;
  }
  const double beta = p.alpha;
  u = {p.r, 0.0};  // u(-1), u(0)
  for (int k = 0; k + 1 < n; ++k) {
    const double next = (1.0 - beta) * u[u.size() - 1] + beta * u[u.size() - 2];
    u.push_back(next);
  }
  return u;
}

double rung_voltage(const ResistanceProfile& p, int m) {
  const int am = std::abs(m);
  if (p.family == Family::Ladder) return p.r * std::pow(p.alpha, am);
  auto u = voltage_sequence(p, am + 1);
  return u[am] - u[am + 1];  // u(m-1) - u(m)
}

double transfer_current(const ResistanceProfile& p, int m) { return p.c * rung_voltage(p, m); }

double kirchhoff_marginal(const ResistanceProfile& p) { return p.r * p.c; }

double finite_window_resistance(Family f, double c, int n) {
  require_two_wide(f);
  const Segment s = build_segment(GraphFamily::numeric(f, c), -n, n);
  const int e = s.find_edge("z_0");
  return edge_probability(s, {c, 0.0}, e) / c;
}

}  // namespace rungs
