#include "qcarnot/config.hpp"

#include <charconv>
#include <fstream>

namespace qcarnot {

EngineParams RunConfig::engine(double t_cold) const {
  EngineParams p;
  p.hot = {t_hot, r_hot};
  p.cold = {t_cold, r_cold};
  p.delta_a = delta_a;
  p.delta_b = delta_b;
  p.gamma = gamma;
  return p;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("bad value for '" + key + "': '" + text + "'");
  }
  return value;
}

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "output") {
    config.output = value;
  } else if (key == "t_cold_steps") {
    config.t_cold_steps = parse_number<int>(key, value);
    if (config.t_cold_steps < 1) throw ConfigError("t_cold_steps must be >= 1");
  } else {
    const double v = parse_number<double>(key, value);
    if (key == "t_hot") config.t_hot = v;
    else if (key == "t_cold_min") config.t_cold_min = v;
    else if (key == "t_cold_max") config.t_cold_max = v;
    else if (key == "r_hot") config.r_hot = v;
    else if (key == "r_cold") config.r_cold = v;
    else if (key == "delta_a") config.delta_a = v;
    else if (key == "delta_b") config.delta_b = v;
    else if (key == "gamma") config.gamma = v;
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    apply_config_entry(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

}  // namespace qcarnot
