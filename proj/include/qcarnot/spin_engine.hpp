#pragma once

#include <string>
#include <vector>

#include "qcarnot/bath_thermo.hpp"

namespace qcarnot {

/// The minimal engine: a two-level spin H = (Delta/2) sigma_z driven between
/// corner gaps Delta_A (largest, start of the hot isotherm) and Delta_B, with
/// the same exchange rate Gamma towards both baths.
struct EngineParams {
  Bath hot;
  Bath cold;
  double delta_a = 0.0;  ///< meV, gap at A
  double delta_b = 0.0;  ///< meV, gap at B
  double gamma = 0.0;    ///< meV, rate constant

  /// Throws DomainError unless delta_a >= delta_b > 0, gamma > 0 and
  /// T_H^e > T_C^e. delta_a == delta_b is left to cycle_boundaries, which
  /// reports it as a degenerate cycle.
  void validate() const;

  /// Non-fatal remarks about the configuration: r_C > r_H, and gaps that are
  /// not small against the effective temperatures (max gap / T_C^e > 0.1).
  std::vector<std::string> warnings() const;
};

/// Corner data of the Carnot cycle A -> B (hot) -> C -> D (cold) -> A.
struct CycleBoundaries {
  double p0 = 0.0;       ///< <sigma_z> at A and D
  double p1 = 0.0;       ///< <sigma_z> at B and C
  double delta_c = 0.0;  ///< meV
  double delta_d = 0.0;  ///< meV
  double delta_s = 0.0;  ///< S(p1) - S(p0) > 0
};

/// Equilibrium <sigma_z> = -tanh(gap / 2 T^e).
double stationary_population(double gap, double t_eff);

/// Gap whose equilibrium population is p: 2 T^e artanh(-p).
double stationary_gap(double p, double t_eff);

/// dp/dt = -Gamma coth(gap / 2 T^e) p - Gamma.
double master_rhs(double p, double gap, double t_eff, double gamma);

/// Inverts the master equation for the gap:
/// T^e ln[(Gamma + dp/dt - Gamma p) / (Gamma + dp/dt + Gamma p)].
double gap_from_state(double p, double p_rate, double t_eff, double gamma);

/// Positive work is done on the medium.
double work_rate(double gap_rate, double p);
/// Positive heat is absorbed from the bath.
double heat_rate(double gap, double p_rate);
double internal_energy(double gap, double p);

/// Von Neumann entropy of the diagonal spin state with <sigma_z> = p.
double entropy(double p);
/// S(p_to) - S(p_from) without cancellation against ln 2.
double entropy_change(double p_from, double p_to);

CycleBoundaries cycle_boundaries(const EngineParams& params);

}  // namespace qcarnot
