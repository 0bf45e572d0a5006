// Command-line front end: bounds curves, power optimization, Carnot sweeps,
// optimal protocol export and oracle verification.
//
// Exit codes: 0 success, 1 numerical or physical failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcarnot/config.hpp"
#include "qcarnot/errors.hpp"
#include "qcarnot/power_opt.hpp"
#include "qcarnot/report_io.hpp"
#include "qcarnot/verify_oracle.hpp"

namespace {

using namespace qcarnot;

struct Overrides {
  std::string config_path;
  std::optional<double> t_hot, t_cold_min, t_cold_max, r_hot, r_cold, delta_a,
      delta_b, gamma;
  std::optional<int> t_cold_steps;
  std::optional<std::string> output;
};

RunConfig resolve(const Overrides& o) {
  RunConfig c;
  if (!o.config_path.empty()) c = load_config(o.config_path, c);
  auto set = [](auto& field, const auto& value) {
    if (value) field = *value;
  };
  set(c.t_hot, o.t_hot);
  set(c.t_cold_min, o.t_cold_min);
  set(c.t_cold_max, o.t_cold_max);
  set(c.t_cold_steps, o.t_cold_steps);
  set(c.r_hot, o.r_hot);
  set(c.r_cold, o.r_cold);
  set(c.delta_a, o.delta_a);
  set(c.delta_b, o.delta_b);
  set(c.gamma, o.gamma);
  set(c.output, o.output);
  return c;
}

// Writes to the configured output path, or stdout when none is set.
template <typename Writer>
void emit(const RunConfig& config, Writer&& write) {
  if (config.output.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(config.output);
  if (!out) throw ConfigError("cannot open output file " + config.output);
  write(out);
}

void emit_json(const RunConfig& config, const nlohmann::json& doc) {
  emit(config, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

void add_engine_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--t-hot", o.t_hot, "hot bath temperature T_H (meV)");
  app.add_option("--t-cold-min,--t-cold", o.t_cold_min,
                 "cold bath temperature; sweep start (meV)");
  app.add_option("--t-cold-max", o.t_cold_max, "sweep end (meV)");
  app.add_option("--t-cold-steps", o.t_cold_steps, "sweep points")
      ->check(CLI::PositiveNumber);
  app.add_option("--r-hot", o.r_hot, "hot bath tuning parameter");
  app.add_option("--r-cold", o.r_cold, "cold bath tuning parameter");
  app.add_option("--delta-a", o.delta_a, "gap at corner A (meV)");
  app.add_option("--delta-b", o.delta_b, "gap at corner B (meV)");
  app.add_option("--gamma", o.gamma, "exchange rate constant (meV)");
  app.add_option("--output,-o", o.output, "output file (default stdout)");
}

int run_bounds(const RunConfig& config, const std::vector<double>& ratios,
               int eta_steps) {
  std::vector<BoundsRow> rows;
  const Bath hot{1.0, config.r_hot};
  const double te_hot = effective_temperature(hot);
  for (double ratio : ratios) {
    for (int i = 0; i < eta_steps; ++i) {
      const double eta_c = static_cast<double>(i) / eta_steps;
      const Bath cold{1.0 - eta_c, ratio * config.r_hot};
      const double eta_s = 1.0 - effective_temperature(cold) / te_hot;
      rows.push_back({eta_c, ratio, emp_bounds(eta_s)});
    }
  }
  emit(config, [&](std::ostream& out) { write_bounds_csv(out, rows); });
  return 0;
}

int run_optimize(const RunConfig& config) {
  const OptimumReport report = maximize_power(config.engine());
  nlohmann::json doc = to_json(report);
  doc["config"] = to_json(config);
  emit_json(config, doc);
  return 0;
}

int run_sweep(const RunConfig& config, unsigned jobs) {
  const auto t_cold = linspace(config.t_cold_min, config.t_cold_max,
                               static_cast<std::size_t>(config.t_cold_steps));
  const auto rows = emp_vs_carnot_sweep(config.engine(), t_cold, jobs);
  int failures = 0;
  for (const auto& row : rows) {
    if (!row.report) {
      ++failures;
      std::cerr << "T_C=" << row.t_cold << ": " << row.error << '\n';
    }
  }
  emit(config, [&](std::ostream& out) { write_sweep_csv(out, rows); });
  return failures == 0 ? 0 : 1;
}

int run_protocol(const RunConfig& config, const std::string& branch_name,
                 std::optional<double> duration, std::size_t samples) {
  const EngineParams params = config.engine();
  const CycleBoundaries b = cycle_boundaries(params);
  const BranchKind branch =
      branch_name == "hot" ? BranchKind::HotPlus : BranchKind::ColdMinus;
  const double t_eff = effective_temperature(
      branch == BranchKind::HotPlus ? params.hot : params.cold);
  double target = 0.0;
  if (duration) {
    target = *duration;
  } else {
    MaximizeOptions opts;
    opts.fit_coefficients = false;
    const OptimumReport r = maximize_power(params, opts);
    target = branch == BranchKind::HotPlus ? r.t_hot_star : r.t_cold_star;
  }
  const ELBranch el = solve_k_for_duration(target, branch, b, params.gamma, t_eff);
  const ProtocolTrace trace = reconstruct_protocol(el, params.gamma, samples);
  emit(config, [&](std::ostream& out) { write_protocol_csv(out, trace); });
  return 0;
}

int run_verify(const RunConfig& config, std::size_t samples) {
  const EngineParams params = config.engine();
  const OptimumReport report = maximize_power(params);
  const CycleAudit cycle =
      audit_cycle(params, report.k_hot, report.k_cold, samples);
  const double t_ref = std::max(report.t_hot_star, report.t_cold_star);
  const auto grid = geomspace(t_ref, 1000.0 * t_ref, 10);
  const QuasiStaticAudit qs = quasi_static_audit(params, grid);

  const bool cycle_ok = cycle.heat_rel_error_hot <= 1e-6 &&
                        cycle.heat_rel_error_cold <= 1e-6 &&
                        std::abs(cycle.first_law_residual) <=
                            1e-10 * std::abs(report.q_hot) &&
                        std::abs(cycle.energy_change) <=
                            1e-10 * std::abs(report.q_hot);
  nlohmann::json doc;
  doc["config"] = to_json(config);
  doc["optimum"] = to_json(report);
  doc["cycle_audit"] = to_json(cycle);
  doc["cycle_audit"]["passed"] = cycle_ok;
  doc["quasi_static_audit"] = to_json(qs);
  doc["passed"] = cycle_ok && qs.passed();
  emit_json(config, doc);
  return cycle_ok && qs.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-power Carnot cycles of a driven spin between tunable baths"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides overrides;
  add_engine_options(app, overrides);
  unsigned jobs = 1;

  auto* bounds = app.add_subcommand("bounds", "EMP bounds against eta_C");
  std::vector<double> ratios{0.5, 0.75, 1.0};
  int eta_steps = 100;
  bounds->add_option("--ratios", ratios, "r_C / r_H values")->delimiter(',');
  bounds->add_option("--eta-steps", eta_steps, "eta_C grid i/n, i < n")
      ->check(CLI::PositiveNumber);

  auto* optimize = app.add_subcommand("optimize", "maximum-power report (JSON)");
  auto* sweep = app.add_subcommand("sweep", "EMP against the Carnot limit (CSV)");
  sweep->add_option("--jobs,-j", jobs, "parallel optimizations")
      ->check(CLI::PositiveNumber);

  auto* protocol = app.add_subcommand("protocol", "optimal protocol trace (CSV)");
  std::string branch = "hot";
  std::optional<double> duration;
  std::size_t samples = kDefaultProtocolSamples;
  protocol->add_option("--branch", branch, "hot or cold")
      ->check(CLI::IsMember({"hot", "cold"}));
  protocol->add_option("--duration", duration,
                       "isotherm duration (default: the maximum-power one)");
  protocol->add_option("--samples", samples, "samples along the trace")
      ->check(CLI::Range(2, 1 << 22));

  auto* verify = app.add_subcommand("verify", "oracle audit (JSON)");
  std::size_t verify_samples = 8192;
  verify->add_option("--samples", verify_samples, "protocol samples per stroke")
      ->check(CLI::Range(16, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig config = resolve(overrides);
    if (*bounds) return run_bounds(config, ratios, eta_steps);
    if (*optimize) return run_optimize(config);
    if (*sweep) return run_sweep(config, jobs);
    if (*protocol) return run_protocol(config, branch, duration, samples);
    if (*verify) return run_verify(config, verify_samples);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateCycleError& e) {
    std::cerr << "degenerate cycle: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
