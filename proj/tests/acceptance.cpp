// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: qcarnot_acceptance [criterion ...]   (no arguments runs all)

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ld_grid_oracle.hpp"
#include "qcarnot/bath_thermo.hpp"
#include "qcarnot/optimal_protocol.hpp"
#include "qcarnot/power_opt.hpp"
#include "qcarnot/spin_engine.hpp"
#include "qcarnot/verify_oracle.hpp"

using namespace qcarnot;

namespace {

constexpr double kReductionTol = 1e-14;
constexpr double kContainmentSlack = 1e-9;
constexpr double kGcaRelTol = 1e-2;
constexpr double kGammaEmpRelTol = 1e-4;
constexpr double kGammaDurationRelTol = 1e-6;
constexpr double kDurationRatioTol = 1e-3;
constexpr double kKRatioTol = 1e-2;
constexpr double kInterceptRelTol = 1e-6;
constexpr double kSigmaRatioTol = 3e-2;
constexpr double kOracleHeatRelTol = 1e-6;
constexpr double kEnergyAuditRelTol = 1e-10;
constexpr double kELResidualTol = 1e-9;
constexpr double kQuadraticTol = 1e-9;
constexpr double kClosedFormRelTol = 1e-6;

constexpr std::size_t kSweepPoints = 20;
constexpr std::size_t kAuditSamples = 8192;
constexpr std::size_t kGridTriples = 100;
constexpr std::size_t kBoundsTriples = 10000;

EngineParams reference_engine(double t_cold, double gamma = 0.005) {
  EngineParams p;
  p.hot = {25.8, 2.0};
  p.cold = {t_cold, 1.8};
  p.delta_a = 5.0;
  p.delta_b = 3.0;
  p.gamma = gamma;
  return p;
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

// Sweeps shared between criteria; computed on first use.
class Sweeps {
 public:
  const std::vector<SweepRow>& fig4(double gamma) {
    auto& slot = gamma == 0.005 ? fig4_slow_ : fig4_fast_;
    if (!slot) slot = run(8.6, 24.94, gamma);
    return *slot;
  }
  const std::vector<SweepRow>& fig3() {
    if (!fig3_) fig3_ = run(9.46, 24.94, 0.005);
    return *fig3_;
  }

 private:
  static std::vector<SweepRow> run(double lo, double hi, double gamma) {
    const auto t_cold = linspace(lo, hi, kSweepPoints);
    return emp_vs_carnot_sweep(reference_engine(lo, gamma), t_cold,
                               std::max(1u, std::thread::hardware_concurrency()));
  }
  std::optional<std::vector<SweepRow>> fig4_slow_, fig4_fast_, fig3_;
};

Sweeps sweeps;

std::optional<Outcome> sweep_failure(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows) {
    if (!r.report) {
      return Outcome{false, fmt("optimization failed at T_C=%g: %s", r.t_cold,
                                r.error.c_str())};
    }
  }
  return std::nullopt;
}

Outcome bounds_reduction() {
  double worst = 0.0;
  for (double r : {0.0, 0.5, 1.0, 2.0}) {
    for (int i = 1; i < 100; ++i) {
      const double eta_c = i / 100.0;
      const Bath hot{1.0, r}, cold{1.0 - eta_c, r};
      const EmpBounds b = emp_bounds(generalized_carnot(hot, cold));
      worst = std::max({worst, std::abs(b.eta_min - eta_c / 2),
                        std::abs(b.eta_max - eta_c / (2 - eta_c))});
    }
  }
  return {worst <= kReductionTol,
          fmt("equal tuning, max deviation from eta_C/2, eta_C/(2-eta_C): %.3g", worst)};
}

Outcome super_carnot() {
  const double r_hot = 2.0, r_cold = 0.5 * r_hot;
  int sign_changes = 0, above = 0;
  double previous = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eta_c = i / 100.0;
    const Bath hot{1.0, r_hot}, cold{1.0 - eta_c, r_cold};
    const double margin = emp_bounds(generalized_carnot(hot, cold)).eta_min - eta_c;
    if (margin > 0) ++above;
    if (i > 0 && (margin > 0) != (previous > 0)) ++sign_changes;
    previous = margin;
  }
  return {above > 0 && sign_changes > 0,
          fmt("r_C/r_H=0.5: eta_min > eta_C on %d of 100 grid points, %d sign change(s)",
              above, sign_changes)};
}

Outcome containment() {
  const auto& rows = sweeps.fig4(0.005);
  if (auto f = sweep_failure(rows)) return *f;
  double worst = -INFINITY;
  for (const auto& r : rows) {
    const auto& x = *r.report;
    worst = std::max({worst, x.bounds.eta_min - x.emp, x.emp - x.bounds.eta_max});
  }
  return {worst <= kContainmentSlack,
          fmt("%zu points, largest excursion beyond a bound: %.3g", rows.size(), worst)};
}

Outcome gca_agreement() {
  const auto& rows = sweeps.fig4(0.005);
  if (auto f = sweep_failure(rows)) return *f;
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(r.report->emp - r.report->bounds.eta_gca) / r.report->emp);
  }
  return {worst <= kGcaRelTol, fmt("max |emp - eta_gca| / emp = %.3g", worst)};
}

Outcome gamma_independence() {
  const auto& slow = sweeps.fig4(0.005);
  const auto& fast = sweeps.fig4(0.01);
  if (auto f = sweep_failure(slow)) return *f;
  if (auto f = sweep_failure(fast)) return *f;
  double emp_dev = 0.0, dur_dev = 0.0;
  for (std::size_t i = 0; i < slow.size(); ++i) {
    const auto& a = *slow[i].report;
    const auto& b = *fast[i].report;
    emp_dev = std::max(emp_dev, rel(b.emp, a.emp));
    dur_dev = std::max({dur_dev, rel(2 * b.t_hot_star, a.t_hot_star),
                        rel(2 * b.t_cold_star, a.t_cold_star)});
  }
  return {emp_dev <= kGammaEmpRelTol && dur_dev <= kGammaDurationRelTol,
          fmt("Gamma 0.005 vs 0.01: emp rel dev %.3g, duration scaling rel dev %.3g",
              emp_dev, dur_dev)};
}

Outcome symmetry() {
  const auto& rows = sweeps.fig3();
  if (auto f = sweep_failure(rows)) return *f;
  double dur_dev = 0.0, k_dev = 0.0;
  for (const auto& r : rows) {
    const auto& x = *r.report;
    const double expected =
        effective_temperature(x.params.cold) / effective_temperature(x.params.hot);
    dur_dev = std::max(dur_dev, std::abs(x.duration_ratio - 1.0));
    k_dev = std::max(k_dev, rel(x.k_ratio, expected));
  }
  return {dur_dev <= kDurationRatioTol && k_dev <= kKRatioTol,
          fmt("T_C 9.46..24.94: max |t_H/t_C - 1| = %.3g, max K ratio rel dev %.3g",
              dur_dev, k_dev)};
}

Outcome low_dissipation_fidelity() {
  const auto& rows = sweeps.fig4(0.005);
  if (auto f = sweep_failure(rows)) return *f;
  double q0_dev = 0.0, sigma_dev = 0.0, sigma_at = 0.0, expected_at = 0.0;
  bool q1_negative = true;
  for (const auto& r : rows) {
    const EngineParams& p = r.report->params;
    const CycleBoundaries b = cycle_boundaries(p);
    const double th = effective_temperature(p.hot), tc = effective_temperature(p.cold);
    const auto durations = default_fit_durations(p.gamma);
    const auto hot = fit_low_dissipation(p, BranchKind::HotPlus, durations);
    const auto cold = fit_low_dissipation(p, BranchKind::ColdMinus, durations);
    q0_dev = std::max({q0_dev, rel(hot.q0, th * b.delta_s), rel(cold.q0, -tc * b.delta_s)});
    q1_negative = q1_negative && hot.q1 < 0.0 && cold.q1 < 0.0;
    const double sigma_ratio = (-hot.q1 / th) / (-cold.q1 / tc);
    const double dev = rel(sigma_ratio, tc / th);
    if (dev > sigma_dev) {
      sigma_dev = dev;
      sigma_at = sigma_ratio;
      expected_at = tc / th;
    }
  }
  return {q0_dev <= kInterceptRelTol && q1_negative && sigma_dev <= kSigmaRatioTol,
          fmt("q0 rel dev %.3g, q1 < 0 on both branches: %s, "
              "max Sigma ratio rel dev %.3g (Sigma_H/Sigma_C = %.4g, T_C^e/T_H^e = %.4g)",
              q0_dev, q1_negative ? "yes" : "no", sigma_dev, sigma_at, expected_at)};
}

Outcome oracle_equivalence() {
  const auto& rows = sweeps.fig4(0.005);
  if (auto f = sweep_failure(rows)) return *f;
  double heat_dev = 0.0, energy_dev = 0.0;
  for (const auto& r : rows) {
    const auto& x = *r.report;
    const CycleAudit a = audit_cycle(x.params, x.k_hot, x.k_cold, kAuditSamples);
    heat_dev = std::max({heat_dev, a.heat_rel_error_hot, a.heat_rel_error_cold});
    energy_dev = std::max(energy_dev, std::abs(a.energy_change) / x.q_hot);
  }
  return {heat_dev <= kOracleHeatRelTol && energy_dev <= kEnergyAuditRelTol,
          fmt("max heat rel dev %.3g, max |dE_cycle| / Q_H = %.3g", heat_dev, energy_dev)};
}

Outcome el_properties() {
  const auto& rows = sweeps.fig4(0.005);
  if (auto f = sweep_failure(rows)) return *f;
  double el_worst = 0.0, quad_worst = 0.0;
  for (const auto& r : rows) {
    const auto& x = *r.report;
    const CycleBoundaries b = cycle_boundaries(x.params);
    const double g = x.params.gamma;
    const ELBranch branches[] = {
        make_branch(x.k_hot, BranchKind::HotPlus, b, effective_temperature(x.params.hot)),
        make_branch(x.k_cold, BranchKind::ColdMinus, b, effective_temperature(x.params.cold))};
    for (const ELBranch& el : branches) {
      const ProtocolTrace trace = reconstruct_protocol(el, g);
      const auto& s = trace.samples;
      for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double rate = master_rhs(s[i].p, s[i].gap, el.t_eff, g) / g;
        el_worst = std::max(el_worst, std::abs(el_residual(s[i].p, rate, el.k)));
        const double y = s[i].gap / (2 * el.t_eff);
        const double lhs = std::pow(s[i].p / std::tanh(y) + 1, 2);
        const double rhs = el.k * s[i].p / std::pow(std::sinh(y), 2);
        quad_worst = std::max(quad_worst, std::abs(lhs - rhs));
      }
    }
  }

  // Jumps on a three-decade K scan at the reference configuration.
  const EngineParams p = reference_engine(12.9);
  const CycleBoundaries b = cycle_boundaries(p);
  bool monotone = true;
  double first = 0.0, last = 0.0;
  for (BranchKind kind : {BranchKind::HotPlus, BranchKind::ColdMinus}) {
    const double te = effective_temperature(kind == BranchKind::HotPlus ? p.hot : p.cold);
    double previous = INFINITY;
    for (double k : geomspace(1e-3, 1e-6, 13)) {
      const ProtocolTrace t = reconstruct_protocol(make_branch(-k, kind, b, te), p.gamma, 16);
      const double jump = std::abs(t.jump_start.after - t.jump_start.before) +
                          std::abs(t.jump_end.after - t.jump_end.before);
      monotone = monotone && jump < previous;
      if (previous == INFINITY) first = std::max(first, jump);
      previous = jump;
    }
    last = std::max(last, previous);
  }
  return {el_worst <= kELResidualTol && quad_worst <= kQuadraticTol && monotone,
          fmt("EL residual %.3g, quadratic identity residual %.3g, "
              "jumps monotone over |K| 1e-3..1e-6: %s (%.3g -> %.3g)",
              el_worst, quad_worst, monotone ? "yes" : "no", first, last)};
}

Outcome closed_form() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> log_coef(-3.0, 3.0), eff(0.02, 0.98);
  double worst = 0.0;
  for (std::size_t i = 0; i < kGridTriples; ++i) {
    const double a = std::pow(10.0, log_coef(rng));
    const double c = std::pow(10.0, log_coef(rng));
    const Bath hot{1.0, 0.0}, cold{1.0 - eff(rng), 0.0};
    const double drive = hot.temperature - cold.temperature;
    const auto opt = low_dissipation_optimum({-a, -c, 1.0}, hot, cold);
    const auto grid = testing::grid_search_power(a, c, drive);
    worst = std::max(worst, rel(opt.power, grid.power));
  }
  std::uniform_real_distribution<double> log_t(-2.0, 2.0), tuning(0.0, 2.5);
  std::size_t outside = 0, tried = 0;
  while (tried < kBoundsTriples) {
    const Bath hot{std::pow(10.0, log_t(rng)), tuning(rng)};
    const Bath cold{std::pow(10.0, log_t(rng)), tuning(rng)};
    if (effective_temperature(hot) <= effective_temperature(cold)) continue;
    ++tried;
    const double a = std::pow(10.0, log_coef(rng));
    const double c = std::pow(10.0, log_coef(rng));
    const auto opt = low_dissipation_optimum({-a, -c, 1.0}, hot, cold);
    const EmpBounds bnd = emp_bounds(generalized_carnot(hot, cold));
    if (opt.emp < bnd.eta_min - kContainmentSlack || opt.emp > bnd.eta_max + kContainmentSlack) {
      ++outside;
    }
  }
  return {worst <= kClosedFormRelTol && outside == 0,
          fmt("%zu triples: max P* rel dev vs grid search %.3g; "
              "%zu of %zu random triples outside the bounds",
              kGridTriples, worst, outside, kBoundsTriples)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, Criterion> criteria{
      {1, {"bounds reduction", bounds_reduction}},
      {2, {"super-Carnot region", super_carnot}},
      {3, {"EMP containment", containment}},
      {4, {"gCA agreement", gca_agreement}},
      {5, {"Gamma independence", gamma_independence}},
      {6, {"symmetry diagnostics", symmetry}},
      {7, {"low-dissipation fidelity", low_dissipation_fidelity}},
      {8, {"oracle equivalence", oracle_equivalence}},
      {9, {"Euler-Lagrange properties", el_properties}},
      {10, {"closed-form cross-check", closed_form}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (!criteria.contains(id)) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(id);
  }
  if (selected.empty()) {
    for (const auto& [id, c] : criteria) selected.push_back(id);
  }

  int failures = 0;
  for (int id : selected) {
    const Criterion& c = criteria.at(id);
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", out.pass ? "PASS" : "FAIL", id, c.name,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
