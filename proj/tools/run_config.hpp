#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace wdc_cli {

// Bad configuration: unknown preset, wrong type, violated constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double zf_tol = 1e-9;
  double residual_tol = 1e-6;
  double gain_floor = 1e-6;
  double rank_tol = 1e-8;
};

struct RunConfig {
  int K = 4;
  int N = 6;
  int Q = 4;
  int r = 2;
  // Tradeoff grid as written ("3", "3/2", "1.5"); empty means 1..K.
  std::vector<std::string> r_values;
  std::uint64_t seed = 1;
  double power_db = 40.0;
  bool noise = false;
  int tau = 64;
  int workers = 1;
  Tolerances tol;
  double h_min = 0.1;
  double h_max = 10.0;
  std::string out = "out";
  std::optional<std::string> preset;
  // Explicit placement document; replaces the symmetric placement.
  std::optional<nlohmann::json> placement;
  std::optional<std::string> placement_file;
  int oracle_cap = 8;
  bool compact_padding = true;
  bool simulate_grid = true;

  double power_linear() const;
};

std::vector<std::string> preset_names();

/// Throws ConfigError for unknown names.
void apply_preset(RunConfig& cfg, const std::string& name);

/// Overlays the keys present in `doc` onto cfg. Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

/// defaults < preset < file. The preset is taken from `preset_override`
/// when given, otherwise from the file's "preset" key.
RunConfig load_config(const std::optional<std::string>& file_text,
                      const std::optional<std::string>& preset_override);

/// Names the first violated constraint.
void validate(const RunConfig& cfg, const std::string& command);

struct RationalText {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// "3", "3/2" or "1.5".
RationalText parse_r(const std::string& text);

}  // namespace wdc_cli
