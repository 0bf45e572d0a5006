#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "qcarnot/config.hpp"
#include "qcarnot/optimal_protocol.hpp"
#include "qcarnot/power_opt.hpp"
#include "qcarnot/verify_oracle.hpp"

namespace qcarnot {

/// Shortest round-trippable text for doubles in CSV: 15 significant digits,
/// '.' decimal separator regardless of locale.
std::string format_double(double value);

nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const EngineParams& params);
nlohmann::json to_json(const EmpBounds& bounds);
nlohmann::json to_json(const OptimumReport& report);
nlohmann::json to_json(const CycleAudit& audit);
nlohmann::json to_json(const QuasiStaticAudit& audit);

struct BoundsRow {
  double eta_c;
  double ratio;
  EmpBounds bounds;
};

void write_bounds_csv(std::ostream& out, std::span<const BoundsRow> rows);

/// Columns: T_C, eta_c, eta_s, emp, eta_gca, eta_min, eta_max, t_hot_star,
/// t_cold_star, k_hot, k_cold, q_hot, q_cold, power_star. Failed rows carry
/// nan in every column after T_C.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Two `#` header lines with the endpoint jumps, then t,p,gap rows.
void write_protocol_csv(std::ostream& out, const ProtocolTrace& trace);

}  // namespace qcarnot
