#pragma once

// Flat `key = value` configuration files.
//
// Recognized keys: scenario, method, d, n_o, L, dt, t0, t_end, epsilon,
// sigma, q_o, q, seed, deterministic, normalize_weights, output_dir,
// snapshot_every, error_every, support_L, n_o_init, delta_min.
// `#` starts a comment. Unknown keys are errors.

#include <string>
#include <vector>

#include "landau/core.hpp"

namespace landau {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;  ///< 0 for command-line overrides
};

/// Ordered key-value pairs; later entries override earlier ones.
struct KeyValues {
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }
  void set(const std::string& key, const std::string& value, int line = 0);
  /// Parses "key=value" (command-line form).
  void set_assignment(const std::string& assignment);
};

const std::vector<std::string>& known_config_keys();

/// Splits text into entries. Errors name the line.
KeyValues parse_key_values(const std::string& text, const std::string& source = "config");
KeyValues read_key_values(const std::string& path);

/// Applies defaults and validates. Omitted epsilon becomes 0.64 h^1.98 with
/// h = 2L/n_o; omitted sigma becomes 4 sqrt(epsilon).
SimConfig resolve_config(const KeyValues& kv);

/// read_key_values + resolve_config.
SimConfig parse_config(const std::string& path);

/// Resolved config rendered back as key-value text (manifest form).
std::string to_key_values(const SimConfig& c);

/// Shortest round-trippable decimal form.
std::string format_double(double x);

}  // namespace landau
