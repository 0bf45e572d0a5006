#pragma once

// Closed-form thermodynamics of temperature-tunable baths.
//
// Units: hbar = k_B = 1. Energies and temperatures in meV, times in 1/meV.

namespace qcarnot {

/// A heat reservoir with thermodynamic temperature T and tuning
/// (squeezing) parameter r. The bath acts on the working medium through its
/// effective temperature T (1 + 2 sinh^2 r).
struct Bath {
  double temperature = 0.0;  ///< meV, > 0
  double tuning = 0.0;       ///< dimensionless, >= 0

  /// Throws DomainError when the invariants do not hold.
  void validate() const;
};

/// Efficiency bounds at maximum power for a low-dissipation engine.
struct EmpBounds {
  double eta_s = 0.0;    ///< generalized Carnot limit 1 - T_C^e / T_H^e
  double eta_min = 0.0;  ///< eta_s / 2
  double eta_max = 0.0;  ///< eta_s / (2 - eta_s)
  double eta_gca = 0.0;  ///< 1 - sqrt(1 - eta_s)
};

/// First-order irreversible corrections in Q_i = Q_0^i + Q_1^i / t_i with
/// Q_0^H = T_H^e dS and Q_0^C = -T_C^e dS.
struct LowDissipationCoefficients {
  double q1_hot = 0.0;   ///< meV / meV, < 0
  double q1_cold = 0.0;  ///< < 0
  double delta_s = 0.0;  ///< entropy change over the hot isotherm, > 0

  void validate() const;
};

struct LowDissipationOptimum {
  double t_hot = 0.0;
  double t_cold = 0.0;
  double power = 0.0;
  double emp = 0.0;
};

double effective_temperature(const Bath& bath);

/// 1 - T_C^e / T_H^e. Throws DomainError unless T_H^e > T_C^e.
double generalized_carnot(const Bath& hot, const Bath& cold);

/// Standard Carnot efficiency 1 - T_C / T_H from thermodynamic temperatures.
double carnot(const Bath& hot, const Bath& cold);

/// Throws DomainError for eta_s outside [0, 1).
EmpBounds emp_bounds(double eta_s);

double gca_efficiency(double eta_s);

/// Maximizes P = [(T_H^e - T_C^e) dS + Q_1^H/t_H + Q_1^C/t_C] / (t_H + t_C)
/// in closed form. With a = -Q_1^H, b = -Q_1^C and A = (T_H^e - T_C^e) dS the
/// stationarity conditions a/t_H^2 = b/t_C^2 = P give
///   t_H* = 2 sqrt(a) (sqrt(a) + sqrt(b)) / A,
///   t_C* = 2 sqrt(b) (sqrt(a) + sqrt(b)) / A,
///   P*   = A^2 / (4 (sqrt(a) + sqrt(b))^2).
LowDissipationOptimum low_dissipation_optimum(
    const LowDissipationCoefficients& coeffs, const Bath& hot,
    const Bath& cold);

}  // namespace qcarnot
