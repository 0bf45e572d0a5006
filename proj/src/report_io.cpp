#include "qcarnot/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace qcarnot {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 15);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"t_hot", c.t_hot},           {"t_cold_min", c.t_cold_min},
          {"t_cold_max", c.t_cold_max}, {"t_cold_steps", c.t_cold_steps},
          {"r_hot", c.r_hot},           {"r_cold", c.r_cold},
          {"delta_a", c.delta_a},       {"delta_b", c.delta_b},
          {"gamma", c.gamma},           {"output", c.output}};
}

nlohmann::json to_json(const EngineParams& p) {
  return {{"t_hot", p.hot.temperature}, {"r_hot", p.hot.tuning},
          {"t_cold", p.cold.temperature}, {"r_cold", p.cold.tuning},
          {"delta_a", p.delta_a},       {"delta_b", p.delta_b},
          {"gamma", p.gamma}};
}

nlohmann::json to_json(const EmpBounds& b) {
  return {{"eta_s", b.eta_s},
          {"eta_min", b.eta_min},
          {"eta_max", b.eta_max},
          {"eta_gca", b.eta_gca}};
}

nlohmann::json to_json(const OptimumReport& r) {
  return {{"params", to_json(r.params)},
          {"t_hot_star", r.t_hot_star},
          {"t_cold_star", r.t_cold_star},
          {"k_hot", r.k_hot},
          {"k_cold", r.k_cold},
          {"q_hot", r.q_hot},
          {"q_cold", r.q_cold},
          {"power_star", r.power_star},
          {"emp", r.emp},
          {"eta_s", r.eta_s},
          {"eta_c", r.eta_c},
          {"eta_min", r.bounds.eta_min},
          {"eta_max", r.bounds.eta_max},
          {"eta_gca", r.bounds.eta_gca},
          {"k_ratio", r.k_ratio},
          {"duration_ratio", r.duration_ratio},
          {"q1_hot_fit", r.q1_hot_fit},
          {"q1_cold_fit", r.q1_cold_fit},
          {"search_power", r.search_power},
          {"stationarity_residual", r.stationarity_residual},
          {"warnings", r.warnings}};
}

nlohmann::json to_json(const CycleAudit& a) {
  return {{"q_hot_quadrature", a.q_hot_quadrature},
          {"q_cold_quadrature", a.q_cold_quadrature},
          {"q_hot_ode", a.q_hot_ode},
          {"q_cold_ode", a.q_cold_ode},
          {"heat_rel_error_hot", a.heat_rel_error_hot},
          {"heat_rel_error_cold", a.heat_rel_error_cold},
          {"p1_error", a.p1_error},
          {"p0_error", a.p0_error},
          {"work_total", a.work_total},
          {"heat_total", a.heat_total},
          {"energy_change", a.energy_change},
          {"first_law_residual", a.first_law_residual},
          {"adiabat_population_change", a.adiabat_population_change},
          {"adiabat_entropy_change", a.adiabat_entropy_change}};
}

nlohmann::json to_json(const QuasiStaticAudit& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : a.rows) {
    rows.push_back({{"duration", r.duration},
                    {"q_hot", r.q_hot},
                    {"q_cold", r.q_cold},
                    {"efficiency", r.efficiency},
                    {"power", r.power}});
  }
  return {{"rows", rows},
          {"eta_s", a.eta_s},
          {"q0_hot", a.q0_hot},
          {"q0_cold", a.q0_cold},
          {"final_efficiency_gap", a.final_efficiency_gap},
          {"final_heat_error", a.final_heat_error},
          {"efficiency_monotone", a.efficiency_monotone},
          {"power_vanishing", a.power_vanishing},
          {"q1_hot", a.q1_hot},
          {"q1_cold", a.q1_cold},
          {"residual_exponent_hot", a.residual_exponent_hot},
          {"residual_exponent_cold", a.residual_exponent_cold},
          {"passed", a.passed()}};
}

void write_bounds_csv(std::ostream& out, std::span<const BoundsRow> rows) {
  out << "eta_c,ratio,eta_s,eta_min,eta_max\n";
  for (const auto& r : rows) {
    out << format_double(r.eta_c) << ',' << format_double(r.ratio) << ','
        << format_double(r.bounds.eta_s) << ','
        << format_double(r.bounds.eta_min) << ','
        << format_double(r.bounds.eta_max) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "T_C,eta_c,eta_s,emp,eta_gca,eta_min,eta_max,t_hot_star,t_cold_star,"
         "k_hot,k_cold,q_hot,q_cold,power_star\n";
  for (const auto& row : rows) {
    out << format_double(row.t_cold);
    if (!row.report) {
      for (int i = 0; i < 13; ++i) out << ",nan";
      out << '\n';
      continue;
    }
    const OptimumReport& r = *row.report;
    for (double v : {r.eta_c, r.eta_s, r.emp, r.bounds.eta_gca,
                     r.bounds.eta_min, r.bounds.eta_max, r.t_hot_star,
                     r.t_cold_star, r.k_hot, r.k_cold, r.q_hot, r.q_cold,
                     r.power_star}) {
      out << ',' << format_double(v);
    }
    out << '\n';
  }
}

void write_protocol_csv(std::ostream& out, const ProtocolTrace& trace) {
  out << "# jump_start,gap_nominal=" << format_double(trace.jump_start.before)
      << ",gap_plus=" << format_double(trace.jump_start.after) << '\n';
  out << "# jump_end,gap_minus=" << format_double(trace.jump_end.before)
      << ",gap_nominal=" << format_double(trace.jump_end.after) << '\n';
  out << "t,p,gap\n";
  for (const auto& s : trace.samples) {
    out << format_double(s.t) << ',' << format_double(s.p) << ','
        << format_double(s.gap) << '\n';
  }
}

}  // namespace qcarnot
