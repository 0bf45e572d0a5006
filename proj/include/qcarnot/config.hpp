#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "qcarnot/spin_engine.hpp"

namespace qcarnot {

/// Malformed configuration; the CLI maps it to a usage error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resolved run configuration. Defaults are the reference sweep:
/// r_H = 2, r_C = 1.8, Delta_A = 5, Delta_B = 3, T_H = 25.8, Gamma = 0.005,
/// T_C from 8.6 to 24.94 meV.
struct RunConfig {
  double t_hot = 25.8;
  double t_cold_min = 8.6;
  double t_cold_max = 24.94;
  int t_cold_steps = 20;
  double r_hot = 2.0;
  double r_cold = 1.8;
  double delta_a = 5.0;
  double delta_b = 3.0;
  double gamma = 0.005;
  std::string output;  ///< empty means stdout

  /// Engine at a given cold temperature.
  EngineParams engine(double t_cold) const;
  /// Engine used by single-point commands: T_C = t_cold_min.
  EngineParams engine() const { return engine(t_cold_min); }
};

/// Applies one `key = value` assignment. Throws ConfigError on unknown keys
/// or unparsable values.
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

/// Reads a flat `key = value` file; blank lines and `#` comments are
/// skipped.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

}  // namespace qcarnot
