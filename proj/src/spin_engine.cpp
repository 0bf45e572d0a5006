#include "qcarnot/spin_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcarnot/errors.hpp"

namespace qcarnot {

void EngineParams::validate() const {
  hot.validate();
  cold.validate();
  if (!(delta_b > 0.0) || !(delta_a >= delta_b) || !std::isfinite(delta_a)) {
    std::ostringstream msg;
    msg << "corner gaps must satisfy delta_a > delta_b > 0, got delta_a="
        << delta_a << " delta_b=" << delta_b;
    throw DomainError(msg.str());
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("rate constant gamma must be positive");
  }
  // Throws on T_H^e <= T_C^e.
  generalized_carnot(hot, cold);
}

std::vector<std::string> EngineParams::warnings() const {
  std::vector<std::string> out;
  if (cold.tuning > hot.tuning) {
    out.emplace_back("r_cold exceeds r_hot");
  }
  const double ratio =
      std::max(delta_a, delta_b) /
      std::min(effective_temperature(hot), effective_temperature(cold));
  if (ratio > 0.1) {
    std::ostringstream msg;
    msg << "gap/temperature ratio " << ratio
        << " exceeds 0.1; outside the high-temperature regime";
    out.push_back(msg.str());
  }
  return out;
}

double stationary_population(double gap, double t_eff) {
  if (!(gap >= 0.0) || !(t_eff > 0.0)) {
    throw DomainError("stationary_population needs gap >= 0 and t_eff > 0");
  }
  return -std::tanh(gap / (2.0 * t_eff));
}

double stationary_gap(double p, double t_eff) {
  if (!(p > -1.0 && p <= 0.0) || !(t_eff > 0.0)) {
    throw DomainError("stationary_gap needs p in (-1, 0] and t_eff > 0");
  }
  return 2.0 * t_eff * std::atanh(-p);
}

double master_rhs(double p, double gap, double t_eff, double gamma) {
  if (gap == 0.0) {
    if (p != 0.0) {
      throw DomainError("master_rhs: coth singularity at zero gap with p != 0");
    }
    return -gamma;
  }
  const double y = gap / (2.0 * t_eff);
  return -gamma * p / std::tanh(y) - gamma;
}

double gap_from_state(double p, double p_rate, double t_eff, double gamma) {
  const double lower = gamma + p_rate + gamma * p;
  const double upper = gamma + p_rate - gamma * p;
  if (!(lower * upper > 0.0)) {
    std::ostringstream msg;
    msg << "unreachable state: p=" << p << " dp/dt=" << p_rate
        << " gives a non-positive log argument";
    throw InvalidStateError(msg.str());
  }
  // ln(upper/lower) = log1p((upper - lower) / lower)
  return t_eff * std::log1p(-2.0 * gamma * p / lower);
}

double work_rate(double gap_rate, double p) { return 0.5 * gap_rate * p; }

double heat_rate(double gap, double p_rate) { return 0.5 * gap * p_rate; }

double internal_energy(double gap, double p) { return 0.5 * gap * p; }

namespace {

// S(p) = ln 2 - F(p), F(p) = p artanh(p) + ln(1 - p^2) / 2.
double entropy_deficit(double p) {
  if (std::abs(p) == 1.0) return std::numbers::ln2;
  return p * std::atanh(p) + 0.5 * std::log1p(-p * p);
}

void check_population(double p) {
  if (!(std::abs(p) <= 1.0)) {
    throw DomainError("population must satisfy |p| <= 1, got " +
                      std::to_string(p));
  }
}

}  // namespace

double entropy(double p) {
  check_population(p);
  return std::numbers::ln2 - entropy_deficit(p);
}

double entropy_change(double p_from, double p_to) {
  check_population(p_from);
  check_population(p_to);
  return entropy_deficit(p_from) - entropy_deficit(p_to);
}

CycleBoundaries cycle_boundaries(const EngineParams& params) {
  if (params.delta_a == params.delta_b) {
    throw DegenerateCycleError(
        "degenerate cycle: delta_a == delta_b encloses no area (dS = 0)");
  }
  params.validate();
  const double t_hot = effective_temperature(params.hot);
  const double t_cold = effective_temperature(params.cold);
  const double scale = t_cold / t_hot;

  CycleBoundaries b;
  b.p0 = stationary_population(params.delta_a, t_hot);
  b.p1 = stationary_population(params.delta_b, t_hot);
  b.delta_c = params.delta_b * scale;
  b.delta_d = params.delta_a * scale;
  b.delta_s = entropy_change(b.p0, b.p1);
  return b;
}

}  // namespace qcarnot
