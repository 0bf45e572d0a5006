#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qcarnot/optimal_protocol.hpp"
#include "qcarnot/spin_engine.hpp"

namespace qcarnot {

/// Direct time integration of the master equation under a sampled protocol.
struct MasterIntegration {
  double p_final = 0.0;
  double heat = 0.0;
  double work = 0.0;
  double energy_start = 0.0;  ///< Delta(0+) p(0) / 2
  double energy_end = 0.0;    ///< Delta(tau-) p(tau) / 2
  double step = 0.0;          ///< largest time step of the accepted run
  std::size_t steps = 0;

  /// work + heat - (energy_end - energy_start)
  double first_law_residual() const {
    return work + heat - (energy_end - energy_start);
  }
};

inline constexpr double kStepRefinementTol = 1e-8;

/// Classic fixed-step RK4 on dp/dt = master_rhs(p, Delta(t)), with heat and
/// work rates integrated alongside. Delta(t) follows the trace: within each
/// sample interval p_ref(t) is the cubic Hermite through the samples (slopes
/// from the master equation) and the gap is linear in p_ref. Steps never
/// straddle a sample. The step is halved until the heat changes by less
/// than kStepRefinementTol relative; the finer run is returned.
/// p_initial defaults to the first sample's population.
MasterIntegration integrate_master(const ProtocolTrace& trace, double t_eff,
                                   double gamma, double step,
                                   std::optional<double> p_initial = {});

/// Closed-cycle bookkeeping: hot isotherm, jumps and adiabats as exact
/// corner updates at fixed population, cold isotherm, back to A. The ODE
/// state is carried from one stroke to the next.
struct CycleAudit {
  double q_hot_quadrature = 0.0;
  double q_cold_quadrature = 0.0;
  double q_hot_ode = 0.0;
  double q_cold_ode = 0.0;
  double heat_rel_error_hot = 0.0;
  double heat_rel_error_cold = 0.0;
  double p1_error = 0.0;  ///< ODE population at B minus p1
  double p0_error = 0.0;  ///< ODE population back at A minus p0
  double work_total = 0.0;  ///< on the medium; output is -work_total
  double heat_total = 0.0;
  double energy_change = 0.0;  ///< E(A, end) - E(A, start)
  double first_law_residual = 0.0;
  double adiabat_population_change = 0.0;
  double adiabat_entropy_change = 0.0;
};

CycleAudit audit_cycle(const EngineParams& params, double k_hot,
                       double k_cold,
                       std::size_t n_samples = kDefaultProtocolSamples);

struct QuasiStaticRow {
  double duration = 0.0;  ///< t_H = t_C
  double q_hot = 0.0;
  double q_cold = 0.0;
  double efficiency = 0.0;
  double power = 0.0;
};

struct QuasiStaticAudit {
  std::vector<QuasiStaticRow> rows;
  double eta_s = 0.0;
  double q0_hot = 0.0;   ///< T_H^e dS
  double q0_cold = 0.0;  ///< -T_C^e dS
  double final_efficiency_gap = 0.0;  ///< |eta(t_max) - eta_s|
  double final_heat_error = 0.0;  ///< |Q_H(t_max) / q0_hot - 1|
  bool efficiency_monotone = false;
  bool power_vanishing = false;  ///< P decreasing over the last decade
  double q1_hot = 0.0;
  double q1_cold = 0.0;
  /// Log-log slope of |Q - q0 - q1/t| against t over the long-duration half
  /// of the grid; close to -2 when the first order expansion captures
  /// everything up to 1/t^2.
  double residual_exponent_hot = 0.0;
  double residual_exponent_cold = 0.0;

  bool passed() const;
};

/// Throws DomainError unless the grid is increasing and spans >= 2 decades.
QuasiStaticAudit quasi_static_audit(const EngineParams& params,
                                    std::span<const double> duration_grid);

}  // namespace qcarnot
