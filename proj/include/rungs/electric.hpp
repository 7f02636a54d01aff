#pragma once

#include <vector>

#include "rungs/family.hpp"

namespace rungs {

/// The infinite ladder or zigzag as a resistor network (conductance c on
/// rungs, 1 on horizontals), solved through its self-similar fixed point.
/// Orientation: ladder rungs (1,m) -> (0,m); zigzag rungs m-1 -> m.
struct ResistanceProfile {
  Family family = Family::Ladder;
  double c = 1.0;
  /// One-sided effective resistance between the two front nodes.
  double r_plus = 0.0;
  /// Front resistance of one side with its front rung removed.
  double r0 = 0.0;
  /// Two-sided effective resistance across rung z_0.
  double r = 0.0;
  /// Voltage decay ratio (ladder: u(l+1) = alpha u(l)).
  double alpha = 0.0;
};

ResistanceProfile effective_resistance(Family f, double c);

/// Fixed-point residual of r_plus.
double fixed_point_residual(const ResistanceProfile& p);

/// Voltage drop across rung m when a battery across z_0 drives unit total
/// current (u(0) = r).
double rung_voltage(const ResistanceProfile& p, int m);

/// Zigzag node voltages u(-1) = r, u(0) = 0, u(k+1) = (1-beta) u(k) + beta u(k-1)
/// for k = 0..n-1. Ladder: the rung voltages u(0..n).
std::vector<double> voltage_sequence(const ResistanceProfile& p, int n);

/// I_{z_0, z_m}: current through rung m.
double transfer_current(const ResistanceProfile& p, int m);

/// P[z_0 in T] = R_eff / R(z_0) = r c.
double kirchhoff_marginal(const ResistanceProfile& p);

/// Effective resistance across z_0 in the finite window [-n, n], by a
/// Laplacian solve. Converges to r geometrically.
double finite_window_resistance(Family f, double c, int n);

}  // namespace rungs
