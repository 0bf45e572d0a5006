#include "qcarnot/verify_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qcarnot/errors.hpp"
#include "qcarnot/power_opt.hpp"

namespace qcarnot {

namespace {

// Protocol on one sample interval.
class Segment {
 public:
  Segment(const ProtocolSample& a, const ProtocolSample& b, double slope_a,
          double slope_b)
      : a_(a), b_(b), h_(b.t - a.t), ma_(slope_a * h_), mb_(slope_b * h_) {}

  // Gap and its time derivative at time t within [a.t, b.t].
  std::array<double, 2> gap(double t) const {
    const double s = (t - a_.t) / h_;
    const double dp = b_.p - a_.p;
    if (dp == 0.0) {
      return {a_.gap + (b_.gap - a_.gap) * s, (b_.gap - a_.gap) / h_};
    }
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double p = (2 * s3 - 3 * s2 + 1) * a_.p + (s3 - 2 * s2 + s) * ma_ +
                     (-2 * s3 + 3 * s2) * b_.p + (s3 - s2) * mb_;
    const double p_rate = ((6 * s2 - 6 * s) * a_.p + (3 * s2 - 4 * s + 1) * ma_ +
                           (-6 * s2 + 6 * s) * b_.p + (3 * s2 - 2 * s) * mb_) /
                          h_;
    const double slope = (b_.gap - a_.gap) / dp;
    return {a_.gap + slope * (p - a_.p), slope * p_rate};
  }

 private:
  ProtocolSample a_;
  ProtocolSample b_;
  double h_;
  double ma_;
  double mb_;
};

struct State {
  double p;
  double heat;
  double work;
};

MasterIntegration run_fixed(const ProtocolTrace& trace, double t_eff,
                            double gamma, double step, double p_start) {
  const auto& s = trace.samples;
  std::vector<double> slopes(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    slopes[i] = master_rhs(s[i].p, s[i].gap, t_eff, gamma);
  }

  State y{p_start, 0.0, 0.0};
  auto deriv = [&](const Segment& seg, double t, double p) {
    const auto [gap, gap_rate] = seg.gap(t);
    const double p_rate = master_rhs(p, gap, t_eff, gamma);
    return State{p_rate, heat_rate(gap, p_rate), work_rate(gap_rate, p)};
  };

  MasterIntegration out;
  out.energy_start = internal_energy(s.front().gap, p_start);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double span = s[i + 1].t - s[i].t;
    if (!(span > 0.0)) continue;
    const Segment seg(s[i], s[i + 1], slopes[i], slopes[i + 1]);
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(span / step)));
    const double h = span / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double t = s[i].t + h * static_cast<double>(j);
      const State k1 = deriv(seg, t, y.p);
      const State k2 = deriv(seg, t + 0.5 * h, y.p + 0.5 * h * k1.p);
      const State k3 = deriv(seg, t + 0.5 * h, y.p + 0.5 * h * k2.p);
      const State k4 = deriv(seg, t + h, y.p + h * k3.p);
      y.p += h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
      y.heat += h / 6.0 * (k1.heat + 2 * k2.heat + 2 * k3.heat + k4.heat);
      y.work += h / 6.0 * (k1.work + 2 * k2.work + 2 * k3.work + k4.work);
    }
    out.steps += m;
    out.step = std::max(out.step, h);
  }
  out.p_final = y.p;
  out.heat = y.heat;
  out.work = y.work;
  out.energy_end = internal_energy(s.back().gap, y.p);
  return out;
}

}  // namespace

MasterIntegration integrate_master(const ProtocolTrace& trace, double t_eff,
                                   double gamma, double step,
                                   std::optional<double> p_initial) {
  if (trace.samples.size() < 2) {
    throw DomainError("integrate_master needs a trace with >= 2 samples");
  }
  if (!(step > 0.0) || !(gamma > 0.0) || !(t_eff > 0.0)) {
    throw DomainError("integrate_master needs positive step, gamma, t_eff");
  }
  const double p0 = p_initial.value_or(trace.samples.front().p);
  MasterIntegration coarse = run_fixed(trace, t_eff, gamma, step, p0);
  constexpr int kMaxHalvings = 14;
  for (int i = 0; i < kMaxHalvings; ++i) {
    step *= 0.5;
    MasterIntegration fine = run_fixed(trace, t_eff, gamma, step, p0);
    const double scale = std::max(std::abs(fine.heat), 1e-300);
    if (std::abs(fine.heat - coarse.heat) <= kStepRefinementTol * scale) {
      return fine;
    }
    coarse = fine;
  }
  throw NumericalError("master-equation integration: step refinement did not "
                       "converge");
}

CycleAudit audit_cycle(const EngineParams& params, double k_hot,
                       double k_cold, std::size_t n_samples) {
  const CycleBoundaries b = cycle_boundaries(params);
  const double te_hot = effective_temperature(params.hot);
  const double te_cold = effective_temperature(params.cold);
  const ELBranch hot = make_branch(k_hot, BranchKind::HotPlus, b, te_hot);
  const ELBranch cold = make_branch(k_cold, BranchKind::ColdMinus, b, te_cold);
  const ProtocolTrace hot_trace = reconstruct_protocol(hot, params.gamma, n_samples);
  const ProtocolTrace cold_trace =
      reconstruct_protocol(cold, params.gamma, n_samples);

  CycleAudit a;
  a.q_hot_quadrature = heat_quadrature(hot);
  a.q_cold_quadrature = heat_quadrature(cold);

  const double e_initial = internal_energy(params.delta_a, b.p0);
  double work = 0.0;
  double heat = 0.0;
  auto corner = [&](double p, double gap_from, double gap_to) {
    work += internal_energy(gap_to - gap_from, p);
  };

  // A -> B
  corner(b.p0, hot_trace.jump_start.before, hot_trace.jump_start.after);
  const double hot_step = hot_trace.duration() / (n_samples - 1);
  const MasterIntegration h =
      integrate_master(hot_trace, te_hot, params.gamma, hot_step, b.p0);
  work += h.work;
  heat += h.heat;
  const double p_b = h.p_final;
  corner(p_b, hot_trace.jump_end.before, params.delta_b);
  // B -> C adiabat at fixed population.
  const double s_before = entropy(p_b);
  corner(p_b, params.delta_b, b.delta_c);
  a.adiabat_population_change = 0.0;
  a.adiabat_entropy_change = entropy(p_b) - s_before;
  // C -> D
  corner(p_b, b.delta_c, cold_trace.jump_start.after);
  const double cold_step = cold_trace.duration() / (n_samples - 1);
  const MasterIntegration c =
      integrate_master(cold_trace, te_cold, params.gamma, cold_step, p_b);
  work += c.work;
  heat += c.heat;
  const double p_a = c.p_final;
  corner(p_a, cold_trace.jump_end.before, b.delta_d);
  // D -> A adiabat.
  corner(p_a, b.delta_d, params.delta_a);

  a.q_hot_ode = h.heat;
  a.q_cold_ode = c.heat;
  a.heat_rel_error_hot = std::abs(h.heat / a.q_hot_quadrature - 1.0);
  a.heat_rel_error_cold = std::abs(c.heat / a.q_cold_quadrature - 1.0);
  a.p1_error = p_b - b.p1;
  a.p0_error = p_a - b.p0;
  a.work_total = work;
  a.heat_total = heat;
  a.energy_change = internal_energy(params.delta_a, p_a) - e_initial;
  a.first_law_residual = work + heat - a.energy_change;
  return a;
}

bool QuasiStaticAudit::passed() const {
  return final_efficiency_gap < 1e-3 && efficiency_monotone &&
         power_vanishing && q1_hot < 0.0 && q1_cold < 0.0 &&
         residual_exponent_hot <= -1.95 && residual_exponent_cold <= -1.95;
}

namespace {

// Slope of log|Q - q0 - q1/t| against log t, with q1 extrapolated from the
// two longest durations assuming (Q - q0) t = q1 + c / t.
double residual_exponent(std::span<const double> t, std::span<const double> q,
                         double q0, double& q1_out) {
  const std::size_t n = t.size();
  const double d_last = (q[n - 1] - q0) * t[n - 1];
  const double d_prev = (q[n - 2] - q0) * t[n - 2];
  const double c = (d_prev - d_last) / (1.0 / t[n - 2] - 1.0 / t[n - 1]);
  const double q1 = d_last - c / t[n - 1];
  q1_out = q1;
  // Regress over the longer half, leaving out the two points that fixed q1.
  // Residuals there stay far above the quadrature tolerance.
  const std::size_t hi = n - 2;
  const std::size_t lo = std::min(hi - 2, n / 2 - 1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double x = std::log(t[i]);
    const double y = std::log(std::abs(q[i] - q0 - q1 / t[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(hi - lo);
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

QuasiStaticAudit quasi_static_audit(const EngineParams& params,
                                    std::span<const double> duration_grid) {
  if (duration_grid.size() < 5) {
    throw DomainError("quasi-static audit needs at least 5 durations");
  }
  if (!std::is_sorted(duration_grid.begin(), duration_grid.end()) ||
      !(duration_grid.front() > 0.0) ||
      duration_grid.back() < 100.0 * duration_grid.front()) {
    throw DomainError(
        "quasi-static audit needs an increasing grid spanning two decades");
  }
  const CycleBoundaries b = cycle_boundaries(params);
  QuasiStaticAudit audit;
  audit.eta_s = generalized_carnot(params.hot, params.cold);
  audit.q0_hot = effective_temperature(params.hot) * b.delta_s;
  audit.q0_cold = -effective_temperature(params.cold) * b.delta_s;

  std::vector<double> qh;
  std::vector<double> qc;
  for (double t : duration_grid) {
    const CycleEvaluation c = evaluate_cycle_at(t, t, params);
    audit.rows.push_back({t, c.q_hot, c.q_cold, c.efficiency(), c.power()});
    qh.push_back(c.q_hot);
    qc.push_back(c.q_cold);
  }
  const auto& last = audit.rows.back();
  audit.final_efficiency_gap = std::abs(last.efficiency - audit.eta_s);
  audit.final_heat_error = std::abs(last.q_hot / audit.q0_hot - 1.0);
  audit.efficiency_monotone = true;
  for (std::size_t i = 1; i < audit.rows.size(); ++i) {
    audit.efficiency_monotone &=
        audit.rows[i].efficiency > audit.rows[i - 1].efficiency;
  }
  audit.power_vanishing = true;
  for (std::size_t i = 1; i < audit.rows.size(); ++i) {
    if (audit.rows[i].duration >= 0.1 * last.duration) {
      audit.power_vanishing &= audit.rows[i].power < audit.rows[i - 1].power;
    }
  }
  audit.residual_exponent_hot =
      residual_exponent(duration_grid, qh, audit.q0_hot, audit.q1_hot);
  audit.residual_exponent_cold =
      residual_exponent(duration_grid, qc, audit.q0_cold, audit.q1_cold);
  return audit;
}

}  // namespace qcarnot
