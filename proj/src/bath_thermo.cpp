#include "qcarnot/bath_thermo.hpp"

#include <cmath>
#include <string>

#include "qcarnot/errors.hpp"

namespace qcarnot {

void Bath::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("bath temperature must be positive, got " +
                      std::to_string(temperature));
  }
  if (!(tuning >= 0.0) || !std::isfinite(tuning)) {
    throw DomainError("bath tuning parameter must be non-negative, got " +
                      std::to_string(tuning));
  }
}

void LowDissipationCoefficients::validate() const {
  if (!(q1_hot < 0.0) || !(q1_cold < 0.0)) {
    throw DomainError("first-order heat corrections must be negative");
  }
  if (!(delta_s > 0.0)) {
    throw DomainError("entropy change must be positive");
  }
}

double effective_temperature(const Bath& bath) {
  bath.validate();
  const double s = std::sinh(bath.tuning);
  return bath.temperature * (1.0 + 2.0 * s * s);
}

double generalized_carnot(const Bath& hot, const Bath& cold) {
  const double t_hot = effective_temperature(hot);
  const double t_cold = effective_temperature(cold);
  if (!(t_hot > t_cold)) {
    throw DomainError(
        "not an engine: cold effective temperature " + std::to_string(t_cold) +
        " is not below hot effective temperature " + std::to_string(t_hot));
  }
  return 1.0 - t_cold / t_hot;
}

double carnot(const Bath& hot, const Bath& cold) {
  hot.validate();
  cold.validate();
  return 1.0 - cold.temperature / hot.temperature;
}

namespace {

void check_eta_s(double eta_s) {
  if (!(eta_s >= 0.0 && eta_s < 1.0)) {
    throw DomainError("generalized Carnot limit must lie in [0, 1), got " +
                      std::to_string(eta_s));
  }
}

}  // namespace

double gca_efficiency(double eta_s) {
  check_eta_s(eta_s);
  // 1 - sqrt(1 - x) written without cancellation for small x.
  return eta_s / (1.0 + std::sqrt(1.0 - eta_s));
}

EmpBounds emp_bounds(double eta_s) {
  check_eta_s(eta_s);
  return {eta_s, eta_s / 2.0, eta_s / (2.0 - eta_s), gca_efficiency(eta_s)};
}

LowDissipationOptimum low_dissipation_optimum(
    const LowDissipationCoefficients& coeffs, const Bath& hot,
    const Bath& cold) {
  coeffs.validate();
  const double t_hot_eff = effective_temperature(hot);
  const double t_cold_eff = effective_temperature(cold);
  const double drive = (t_hot_eff - t_cold_eff) * coeffs.delta_s;
  if (!(drive > 0.0)) {
    throw DomainError("no positive-power regime: (T_H^e - T_C^e) dS <= 0");
  }
  const double ra = std::sqrt(-coeffs.q1_hot);
  const double rb = std::sqrt(-coeffs.q1_cold);
  LowDissipationOptimum out;
  out.t_hot = 2.0 * ra * (ra + rb) / drive;
  out.t_cold = 2.0 * rb * (ra + rb) / drive;
  out.power = drive * drive / (4.0 * (ra + rb) * (ra + rb));
  const double q_hot = t_hot_eff * coeffs.delta_s + coeffs.q1_hot / out.t_hot;
  const double q_cold =
      -t_cold_eff * coeffs.delta_s + coeffs.q1_cold / out.t_cold;
  out.emp = (q_hot + q_cold) / q_hot;
  return out;
}

}  // namespace qcarnot
