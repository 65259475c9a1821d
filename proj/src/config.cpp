#include "landau/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "landau/analytic.hpp"

namespace landau {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string where(const ConfigEntry& e) {
  return e.line > 0 ? "line " + std::to_string(e.line) + ": " : "override: ";
}

double as_double(const ConfigEntry& e) {
  double x = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [p, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || p != last)
    throw ConfigError(where(e) + "key '" + e.key + "' expects a number, got '" + e.value + "'");
  return x;
}

std::int64_t as_int(const ConfigEntry& e) {
  std::int64_t x = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [p, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || p != last)
    throw ConfigError(where(e) + "key '" + e.key + "' expects an integer, got '" + e.value + "'");
  return x;
}

std::uint64_t as_uint(const ConfigEntry& e) {
  std::uint64_t x = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [p, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || p != last)
    throw ConfigError(where(e) + "key '" + e.key + "' expects a non-negative integer, got '" +
                      e.value + "'");
  return x;
}

int as_int32(const ConfigEntry& e) {
  const std::int64_t x = as_int(e);
  if (x < -(std::int64_t{1} << 31) || x >= (std::int64_t{1} << 31))
    throw ConfigError(where(e) + "key '" + e.key + "' is out of range");
  return static_cast<int>(x);
}

bool as_bool(const ConfigEntry& e) {
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(where(e) + "key '" + e.key + "' expects true/false, got '" + e.value + "'");
}

struct ScenarioDefaults {
  double dt;
  double t_end;
};

ScenarioDefaults defaults_for(Scenario s) {
  switch (s) {
    case Scenario::BKW2D: return {0.01, 5.0};
    case Scenario::BKW3D: return {0.01, 6.0};
    case Scenario::BiMaxwellian2D: return {0.1, 20.0};
    case Scenario::Rosenbluth3D: return {0.2, 10.0};
  }
  return {0.01, 1.0};
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys{
      "scenario", "method",   "d",        "n_o",          "L",
      "dt",       "t0",       "t_end",    "epsilon",      "sigma",
      "q_o",      "q",        "seed",     "deterministic", "normalize_weights",
      "output_dir", "snapshot_every", "error_every", "support_L", "n_o_init",
      "delta_min"};
  return keys;
}

const ConfigEntry* KeyValues::find(const std::string& key) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    if (it->key == key) return &*it;
  return nullptr;
}

void KeyValues::set(const std::string& key, const std::string& value, int line) {
  const auto& keys = known_config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw ConfigError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                      "unknown key '" + key + "'");
  entries.push_back({key, value, line});
}

void KeyValues::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty())
    throw ConfigError("override '" + assignment + "' has an empty key or value");
  set(key, value, 0);
}

KeyValues parse_key_values(const std::string& text, const std::string& source) {
  KeyValues kv;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line) + ": missing key");
    if (value.empty())
      throw ConfigError(source + ":" + std::to_string(line) + ": missing value for '" + key + "'");
    const auto& keys = known_config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(source + ":" + std::to_string(line) + ": unknown key '" + key + "'");
    kv.set(key, value, line);
  }
  return kv;
}

KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str(), path);
}

SimConfig resolve_config(const KeyValues& kv) {
  const ConfigEntry* sc = kv.find("scenario");
  if (!sc) throw ConfigError("missing required key 'scenario'");

  SimConfig c;
  c.init.scenario = parse_scenario(sc->value);
  const ScenarioInfo info = scenario_info(c.init.scenario);
  const ScenarioDefaults defs = defaults_for(c.init.scenario);
  c.kernel = info.kernel;

  if (const auto* e = kv.find("d")) {
    if (as_int(*e) != info.d)
      throw ConfigError(where(*e) + "d = " + e->value + " contradicts scenario " + sc->value);
  }
  if (const auto* e = kv.find("method")) c.method = parse_method(e->value);
  c.reg.reg_type = reg_type_of(c.method);

  c.reg.L = info.default_L;
  if (const auto* e = kv.find("L")) c.reg.L = as_double(*e);
  c.reg.n_o = 40;
  if (const auto* e = kv.find("n_o")) c.reg.n_o = as_int32(*e);

  c.t0 = info.default_t0;
  if (const auto* e = kv.find("t0")) c.t0 = as_double(*e);
  c.dt = defs.dt;
  if (const auto* e = kv.find("dt")) c.dt = as_double(*e);
  c.t_end = std::max(defs.t_end, c.t0);
  if (const auto* e = kv.find("t_end")) c.t_end = as_double(*e);

  const double h = c.reg.n_o > 0 ? 2.0 * c.reg.L / c.reg.n_o : 0.0;
  c.reg.epsilon = default_epsilon(h);
  if (const auto* e = kv.find("epsilon")) c.reg.epsilon = as_double(*e);
  c.reg.sigma = default_sigma(c.reg.epsilon);
  if (const auto* e = kv.find("sigma")) c.reg.sigma = as_double(*e);

  if (const auto* e = kv.find("q_o")) c.batches_per_dim = as_int32(*e);
  if (const auto* e = kv.find("q")) c.q_override = as_int(*e);
  if (const auto* e = kv.find("seed")) {
    c.seed = as_uint(*e);
  } else if (is_random_batch(c.method)) {
    throw ConfigError("random batch methods need a seed (key 'seed' or --seed)");
  }
  if (const auto* e = kv.find("deterministic")) c.deterministic = as_bool(*e);
  else c.deterministic = false;
  if (const auto* e = kv.find("delta_min")) c.kernel.delta_min = as_double(*e);

  c.init.support_L = info.default_support_L;
  if (const auto* e = kv.find("support_L")) c.init.support_L = as_double(*e);
  c.init.n_o_init = c.reg.n_o;
  if (const auto* e = kv.find("n_o_init")) c.init.n_o_init = as_int32(*e);
  if (const auto* e = kv.find("normalize_weights")) c.init.normalize = as_bool(*e);

  if (const auto* e = kv.find("output_dir")) c.output.dir = e->value;
  if (const auto* e = kv.find("snapshot_every")) c.output.snapshot_every = as_int32(*e);
  if (const auto* e = kv.find("error_every")) c.output.error_every = as_int32(*e);

  const ValidationReport report = validate(c);
  if (!report.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& r : report) msg += "\n  - " + r;
    throw ConfigError(msg);
  }
  return c;
}

SimConfig parse_config(const std::string& path) { return resolve_config(read_key_values(path)); }

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, p);
}

std::string to_key_values(const SimConfig& c) {
  std::ostringstream os;
  os << "scenario = " << scenario_name(c.init.scenario) << "\n"
     << "method = " << method_name(c.method) << "\n"
     << "d = " << c.d() << "\n"
     << "n_o = " << c.reg.n_o << "\n"
     << "L = " << format_double(c.reg.L) << "\n"
     << "dt = " << format_double(c.dt) << "\n"
     << "t0 = " << format_double(c.t0) << "\n"
     << "t_end = " << format_double(c.t_end) << "\n"
     << "epsilon = " << format_double(c.reg.epsilon) << "\n"
     << "sigma = " << format_double(c.reg.sigma) << "\n"
     << "q_o = " << c.batches_per_dim << "\n";
  if (c.q_override) os << "q = " << *c.q_override << "\n";
  os << "seed = " << c.seed << "\n"
     << "deterministic = " << (c.deterministic ? "true" : "false") << "\n"
     << "normalize_weights = " << (c.init.normalize ? "true" : "false") << "\n"
     << "output_dir = " << c.output.dir << "\n"
     << "snapshot_every = " << c.output.snapshot_every << "\n"
     << "error_every = " << c.output.error_every << "\n"
     << "support_L = " << format_double(c.init.support_L) << "\n"
     << "n_o_init = " << c.init.n_o_init << "\n"
     << "delta_min = " << format_double(c.kernel.delta_min) << "\n";
  return os.str();
}

}  // namespace landau
