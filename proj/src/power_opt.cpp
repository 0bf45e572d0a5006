#include "qcarnot/power_opt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "qcarnot/errors.hpp"
#include "qcarnot/numerics.hpp"

namespace qcarnot {

namespace {

struct Temperatures {
  double hot;
  double cold;
};

Temperatures temperatures(const EngineParams& params) {
  return {effective_temperature(params.hot),
          effective_temperature(params.cold)};
}

CycleEvaluation evaluate(double k_hot, double k_cold,
                         const EngineParams& params,
                         const CycleBoundaries& b, const Temperatures& te) {
  const ELBranch hot = make_branch(k_hot, BranchKind::HotPlus, b, te.hot);
  const ELBranch cold = make_branch(k_cold, BranchKind::ColdMinus, b, te.cold);
  CycleEvaluation out;
  out.k_hot = k_hot;
  out.k_cold = k_cold;
  out.t_hot = duration_integral(hot, params.gamma);
  out.t_cold = duration_integral(cold, params.gamma);
  out.q_hot = heat_quadrature(hot);
  out.q_cold = heat_quadrature(cold);
  return out;
}

}  // namespace

CycleEvaluation evaluate_cycle(double k_hot, double k_cold,
                               const EngineParams& params) {
  return evaluate(k_hot, k_cold, params, cycle_boundaries(params),
                  temperatures(params));
}

CycleEvaluation evaluate_cycle_at(double t_hot, double t_cold,
                                  const EngineParams& params) {
  const CycleBoundaries b = cycle_boundaries(params);
  const Temperatures te = temperatures(params);
  const ELBranch hot = solve_k_for_duration(t_hot, BranchKind::HotPlus, b,
                                            params.gamma, te.hot);
  const ELBranch cold = solve_k_for_duration(t_cold, BranchKind::ColdMinus, b,
                                             params.gamma, te.cold);
  CycleEvaluation out;
  out.k_hot = hot.k;
  out.k_cold = cold.k;
  out.t_hot = t_hot;
  out.t_cold = t_cold;
  out.q_hot = heat_quadrature(hot);
  out.q_cold = heat_quadrature(cold);
  return out;
}

double power_at(double t_hot, double t_cold, const EngineParams& params) {
  return evaluate_cycle_at(t_hot, t_cold, params).power();
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 1) out.back() = hi;
  return out;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
  auto out = linspace(std::log(lo), std::log(hi), n);
  for (double& x : out) x = std::exp(x);
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

std::vector<double> default_fit_durations(double gamma) {
  auto out = geomspace(5.0, 500.0, 8);
  for (double& t : out) t /= gamma;
  return out;
}

LowDissipationFit fit_low_dissipation(const EngineParams& params,
                                      BranchKind branch,
                                      std::span<const double> durations) {
  if (durations.size() < 4) {
    throw DomainError("low-dissipation fit needs at least 4 durations");
  }
  const CycleBoundaries b = cycle_boundaries(params);
  const Temperatures te = temperatures(params);
  const double t_eff = branch == BranchKind::HotPlus ? te.hot : te.cold;

  // Normal equations for y = q0 + q1 x with x = 1/t.
  const auto n = static_cast<double>(durations.size());
  std::vector<double> xs;
  std::vector<double> ys;
  for (double t : durations) {
    const ELBranch el = solve_k_for_duration(t, branch, b, params.gamma, t_eff);
    xs.push_back(1.0 / t);
    ys.push_back(heat_quadrature(el));
  }
  const auto [x_min, x_max] = std::minmax_element(xs.begin(), xs.end());
  if (!(*x_max > 2.0 * *x_min)) {
    throw NumericalError(
        "low-dissipation fit is ill-conditioned: durations span less than a "
        "factor of 2");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LowDissipationFit fit;
  fit.q1 = sxy / sxx;
  fit.q0 = my - fit.q1 * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.q0 - fit.q1 * xs[i];
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

namespace {

// Rough first-order coefficient from a single weakly dissipative isotherm.
double rough_q1(BranchKind branch, const CycleBoundaries& b, double t_eff,
                double gamma) {
  const double k = 1e-2 * k_limit(b);
  const ELBranch el = make_branch(k, branch, b, t_eff);
  const double sign = branch == BranchKind::HotPlus ? 1.0 : -1.0;
  const double q0 = sign * t_eff * b.delta_s;
  return std::min((heat_quadrature(el) - q0) * duration_integral(el, gamma),
                  -1e-300);
}

double seed_log_k(double duration, BranchKind branch, const CycleBoundaries& b,
                  double gamma, double t_eff) {
  const double shortest = min_duration(branch, b, gamma);
  const double target = std::max(duration, 1.5 * shortest);
  return std::log(-solve_k_for_duration(target, branch, b, gamma, t_eff).k);
}

}  // namespace

OptimumReport maximize_power(const EngineParams& params,
                             const MaximizeOptions& options) {
  const CycleBoundaries b = cycle_boundaries(params);
  const Temperatures te = temperatures(params);
  const double gamma = params.gamma;

  // Seed from the closed-form low-dissipation optimum.
  LowDissipationCoefficients coeffs;
  coeffs.q1_hot = rough_q1(BranchKind::HotPlus, b, te.hot, gamma);
  coeffs.q1_cold = rough_q1(BranchKind::ColdMinus, b, te.cold, gamma);
  coeffs.delta_s = b.delta_s;
  const LowDissipationOptimum seed =
      low_dissipation_optimum(coeffs, params.hot, params.cold);

  const double u_max = std::log(-k_limit(b));
  double u_hot = seed_log_k(seed.t_hot, BranchKind::HotPlus, b, gamma, te.hot);
  double u_cold =
      seed_log_k(seed.t_cold, BranchKind::ColdMinus, b, gamma, te.cold);

  auto power_of = [&](double uh, double uc) {
    return evaluate(-std::exp(uh), -std::exp(uc), params, b, te).power();
  };

  // Coordinate-wise Brent line searches with outer alternation.
  double best = power_of(u_hot, u_cold);
  double width = 3.0;
  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    const double previous = best;
    auto line = [&](double& u, auto&& objective) {
      const double lo = u - width;
      const double hi = std::min(u + width, u_max);
      const numerics::Minimum m = numerics::minimize(objective, lo, hi);
      if (-m.value >= best) {
        u = m.x;
        best = -m.value;
      }
    };
    line(u_hot, [&](double u) { return -power_of(u, u_cold); });
    line(u_cold, [&](double u) { return -power_of(u_hot, u); });
    width = std::max(0.5 * width, 1e-3);
    converged = sweep > 2 && std::abs(best - previous) <= 1e-13 * best;
  }
  if (!(best > 0.0)) {
    throw NumericalError("power search found no positive-power cycle; best=" +
                         std::to_string(best));
  }

  // Polish on P = -Gamma T_H^e K_H = -Gamma T_C^e K_C.
  auto at_power = [&](double p) {
    return evaluate(-p / (gamma * te.hot), -p / (gamma * te.cold), params, b,
                    te);
  };
  auto stationarity = [&](double p) {
    const CycleEvaluation c = at_power(p);
    return (c.work() - p * (c.t_hot + c.t_cold)) / (te.hot * b.delta_s);
  };
  const double p_cap = -k_limit(b) * gamma * te.cold;
  double lo = best * (1.0 - 1e-4);
  double hi = std::min(best * (1.0 + 1e-4), p_cap);
  for (int i = 0; i < 60 && stationarity(lo) <= 0.0; ++i) lo *= 0.5;
  for (int i = 0; i < 60 && stationarity(hi) >= 0.0 && hi < p_cap; ++i) {
    hi = std::min(2.0 * hi, p_cap);
  }
  std::ostringstream where;
  where << " (search best P=" << best << " at K_H=" << -std::exp(u_hot)
        << ", K_C=" << -std::exp(u_cold) << ")";
  double p_star = 0.0;
  try {
    p_star = numerics::find_root(stationarity, lo, hi, 0.0, 1e-15);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("power polish failed: ") + e.what() +
                         where.str());
  }
  const CycleEvaluation opt = at_power(p_star);
  const double power = opt.power();
  const CycleEvaluation searched = evaluate(-std::exp(u_hot), -std::exp(u_cold),
                                            params, b, te);
  if (power < best * (1.0 - 1e-10) ||
      std::abs(opt.t_hot / searched.t_hot - 1.0) > 1e-2 ||
      std::abs(opt.t_cold / searched.t_cold - 1.0) > 1e-2) {
    std::ostringstream msg;
    msg << "stationary point P=" << power << " disagrees with the search"
        << where.str();
    throw NumericalError(msg.str());
  }

  OptimumReport r;
  r.params = params;
  r.t_hot_star = opt.t_hot;
  r.t_cold_star = opt.t_cold;
  r.k_hot = opt.k_hot;
  r.k_cold = opt.k_cold;
  r.q_hot = opt.q_hot;
  r.q_cold = opt.q_cold;
  r.power_star = power;
  r.emp = opt.efficiency();
  r.eta_s = generalized_carnot(params.hot, params.cold);
  r.eta_c = carnot(params.hot, params.cold);
  r.bounds = emp_bounds(r.eta_s);
  r.k_ratio = opt.k_hot / opt.k_cold;
  r.duration_ratio = opt.t_hot / opt.t_cold;
  r.search_power = best;
  r.stationarity_residual = stationarity(p_star);
  r.warnings = params.warnings();
  if (options.fit_coefficients) {
    const auto grid = default_fit_durations(gamma);
    r.q1_hot_fit = fit_low_dissipation(params, BranchKind::HotPlus, grid).q1;
    r.q1_cold_fit = fit_low_dissipation(params, BranchKind::ColdMinus, grid).q1;
  }
  return r;
}

std::vector<SweepRow> emp_vs_carnot_sweep(const EngineParams& params_template,
                                          std::span<const double> t_cold_values,
                                          unsigned jobs) {
  std::vector<SweepRow> rows(t_cold_values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      row.t_cold = t_cold_values[i];
      EngineParams p = params_template;
      p.cold.temperature = t_cold_values[i];
      try {
        row.report = maximize_power(p);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const unsigned n_threads =
      std::clamp<unsigned>(jobs, 1u, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  return rows;
}

}  // namespace qcarnot
