#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcarnot/bath_thermo.hpp"
#include "qcarnot/optimal_protocol.hpp"
#include "qcarnot/spin_engine.hpp"

namespace qcarnot {

/// Maximum-power operating point of the spin engine and its diagnostics.
struct OptimumReport {
  EngineParams params;
  double t_hot_star = 0.0;
  double t_cold_star = 0.0;
  double k_hot = 0.0;
  double k_cold = 0.0;
  double q_hot = 0.0;
  double q_cold = 0.0;
  double power_star = 0.0;
  double emp = 0.0;
  double eta_s = 0.0;
  double eta_c = 0.0;
  EmpBounds bounds;
  double k_ratio = 0.0;         ///< K_H / K_C
  double duration_ratio = 0.0;  ///< t_H* / t_C*
  double q1_hot_fit = 0.0;
  double q1_cold_fit = 0.0;
  double search_power = 0.0;    ///< best power of the derivative-free search
  double stationarity_residual = 0.0;
  std::vector<std::string> warnings;
};

/// Heats and durations of one cycle built from two Euler-Lagrange branches.
struct CycleEvaluation {
  double k_hot = 0.0;
  double k_cold = 0.0;
  double t_hot = 0.0;
  double t_cold = 0.0;
  double q_hot = 0.0;
  double q_cold = 0.0;

  double work() const { return q_hot + q_cold; }
  double power() const { return work() / (t_hot + t_cold); }
  double efficiency() const { return work() / q_hot; }
};

CycleEvaluation evaluate_cycle(double k_hot, double k_cold,
                               const EngineParams& params);

/// Cycle with prescribed isotherm durations; K is solved per branch.
CycleEvaluation evaluate_cycle_at(double t_hot, double t_cold,
                                  const EngineParams& params);

/// (Q_H + Q_C) / (t_H + t_C) for optimal isotherms of the given durations.
double power_at(double t_hot, double t_cold, const EngineParams& params);

struct MaximizeOptions {
  /// Fit Q = q0 + q1/t on both branches for the report (costs ~16 solves).
  bool fit_coefficients = true;
};

/// Global power maximum over the isotherm durations.
///
/// The search runs over (ln|K_H|, ln|K_C|) with alternating Brent line
/// minimizations, seeded from the low-dissipation closed form. The point is
/// then polished on the first-order conditions dQ_i/dt_i = P, which for
/// these branches read P = -Gamma T_i^e K_i, leaving one equation in P.
OptimumReport maximize_power(const EngineParams& params,
                             const MaximizeOptions& options = {});

struct SweepRow {
  double t_cold = 0.0;
  std::optional<OptimumReport> report;
  std::string error;  ///< set when the point failed
};

/// One optimization per cold temperature; the other parameters come from
/// the template. Failures are recorded per row. Rows keep input order.
std::vector<SweepRow> emp_vs_carnot_sweep(const EngineParams& params_template,
                                          std::span<const double> t_cold_values,
                                          unsigned jobs = 1);

/// n values evenly spaced on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> geomspace(double lo, double hi, std::size_t n);

struct LowDissipationFit {
  double q0 = 0.0;
  double q1 = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares fit of Q(t) = q0 + q1 / t over optimal isotherms.
LowDissipationFit fit_low_dissipation(const EngineParams& params,
                                      BranchKind branch,
                                      std::span<const double> durations);

/// Eight durations with Gamma t geometric on [5, 500].
std::vector<double> default_fit_durations(double gamma);

}  // namespace qcarnot
