#include "memgrav/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "memgrav/profiles.hpp"

namespace memgrav {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      current = trim(t.substr(1, t.size() - 2));
      if (current.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      for (const Section& s : cfg.sections_)
        if (s.name == current)
          throw ConfigError("config line " + std::to_string(lineno) +
                            ": duplicate section [" + current + "]");
      cfg.sections_.push_back({current, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    if (current.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": key outside any [section]");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    Section& sec = cfg.sections_.back();
    for (const Entry& e : sec.entries)
      if (e.key == key)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": duplicate key '" + key + "' in [" + current + "]");
    sec.entries.push_back({key, value});
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Config::serialize() const {
  std::ostringstream out;
  for (const Section& s : sections_) {
    out << '[' << s.name << "]\n";
    for (const Entry& e : s.entries) out << e.key << " = " << e.value << '\n';
    out << '\n';
  }
  return out.str();
}

void Config::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open config file for write: " + path);
  out << serialize();
}

const Config::Entry* Config::find(const std::string& section,
                                  const std::string& key) const {
  for (const Section& s : sections_)
    if (s.name == section)
      for (const Entry& e : s.entries)
        if (e.key == key) return &e;
  return nullptr;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const std::string& Config::get(const std::string& section,
                               const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e)
    throw ConfigError("missing config key [" + section + "] " + key);
  return e->value;
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
  const std::string& v = get(section, key);
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key +
                      ": not a number: '" + v + "'");
  }
}

double Config::get_double_or(const std::string& section,
                             const std::string& key, double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_int_or(const std::string& section, const std::string& key,
                        long fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& v = get(section, key);
  try {
    std::size_t used = 0;
    const long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key +
                      ": not an integer: '" + v + "'");
  }
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& v = get(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key [" + section + "] " + key +
                    ": not a boolean: '" + v + "'");
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& value) {
  for (Section& s : sections_)
    if (s.name == section) {
      for (Entry& e : s.entries)
        if (e.key == key) {
          e.value = value;
          return;
        }
      s.entries.push_back({key, value});
      return;
    }
  sections_.push_back({section, {{key, value}}});
}

void Config::set_double(const std::string& section, const std::string& key,
                        double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  set(section, key, out.str());
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const Section& s : sections_) out.push_back(s.name);
  return out;
}

std::vector<std::string> Config::keys(const std::string& section) const {
  for (const Section& s : sections_)
    if (s.name == section) {
      std::vector<std::string> out;
      for (const Entry& e : s.entries) out.push_back(e.key);
      return out;
    }
  return {};
}

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

VehicleParams vehicle_from_section(const Config& cfg,
                                   const std::string& sec) {
  const std::string preset = cfg.get_or(sec, "preset", "heavy");
  VehicleParams p;
  if (preset == "heavy")
    p = VehicleParams::heavy();
  else if (preset == "light")
    p = VehicleParams::light();
  else
    throw ConfigError("[" + sec + "] preset: expected heavy|light, got '" +
                      preset + "'");
  p.mass = cfg.get_double_or(sec, "mass", p.mass);
  p.Rv = cfg.get_double_or(sec, "Rv", p.Rv);
  p.Lc = cfg.get_double_or(sec, "Lc", p.Lc);
  p.dB = cfg.get_double_or(sec, "dB", p.dB);
  p.g = cfg.get_double_or(sec, "g", p.g);
  p.speed = cfg.get_double_or(sec, "speed", p.speed);
  return p;
}

}  // namespace

Scenario scenario_from_config(const Config& cfg) {
  Scenario sc;
  sc.dt = cfg.get_double_or("run", "dt", 1e-3);
  sc.t_end = cfg.get_double_or("run", "t_end", 30.0);
  sc.seed = static_cast<std::uint64_t>(cfg.get_int_or("run", "seed", 0));
  sc.record_stride =
      static_cast<int>(cfg.get_int_or("run", "record_stride", 1));

  sc.membrane.R = cfg.get_double_or("membrane", "R", 1.2);
  sc.membrane.R0 = cfg.get_double_or("membrane", "R0", 0.0);
  sc.membrane.D = cfg.get_double_or("membrane", "D", 0.0);
  sc.membrane.lambda = cfg.get_double_or("membrane", "lambda", 6.5);
  sc.membrane.sigma = cfg.get_double_or("membrane", "sigma", 0.137);
  sc.membrane.heterogeneity_amp =
      cfg.get_double_or("membrane", "heterogeneity_amp", 0.0);
  sc.membrane.heterogeneity_seed = static_cast<std::uint64_t>(
      cfg.get_int_or("membrane", "heterogeneity_seed", 0));

  for (int i = 1;; ++i) {
    const std::string sec = "vehicle." + std::to_string(i);
    const auto names = cfg.sections();
    if (std::find(names.begin(), names.end(), sec) == names.end()) break;
    VehicleSpec spec;
    spec.params = vehicle_from_section(cfg, sec);
    const double r0 = cfg.get_double(sec, "r0");
    const double theta0 = cfg.get_double_or(sec, "theta0_deg", 90.0) * kDeg;
    const double phi0 = cfg.get_double_or(sec, "phi0_deg", 0.0) * kDeg;
    const std::string ctl = cfg.get_or(sec, "controller", "none");
    if (ctl == "tilt") {
      spec.controller.enabled = true;
      TiltFeedback& fb = spec.controller.feedback;
      fb.A = cfg.get_double_or(sec, "A", 0.0);
      fb.gamma0 = cfg.get_double_or(sec, "gamma0_deg", 15.0) * kDeg;
      fb.v0 = cfg.get_double_or(sec, "v0", spec.params.speed);
      fb.v_min = cfg.get_double_or(sec, "v_min", 0.05);
      fb.v_max = cfg.get_double_or(sec, "v_max", 0.40);
      fb.lag_tau = cfg.get_double_or(sec, "lag_tau", 0.0);
    } else if (ctl != "none") {
      throw ConfigError("[" + sec + "] controller: expected none|tilt");
    }
    spec.start = PolarState::launch(r0, theta0, spec.params.speed, phi0);
    sc.vehicles.push_back(spec);
  }
  if (sc.vehicles.empty())
    throw ConfigError("config defines no [vehicle.1] section");

  const std::string type = cfg.get_or("terrain", "type", "membrane");
  if (type == "flat") {
    sc.terrain = std::make_shared<FlatTerrain>();
  } else if (type == "membrane") {
    sc.terrain = std::make_shared<MembraneTerrain>(sc.membrane);
  } else if (type == "axisym") {
    const std::string name = cfg.get("terrain", "profile");
    KProfile profile;
    if (name.find('.') != std::string::npos ||
        name.find('/') != std::string::npos) {
      profile = KProfile::from_csv(name);
    } else {
      profile = standin_profile(name).profile;
    }
    const VehicleParams& lead = sc.vehicles.front().params;
    sc.terrain = std::make_shared<AxisymKTerrain>(
        std::move(profile), mechanical_constant(lead), lead.g);
  } else {
    throw ConfigError("[terrain] type: expected flat|membrane|axisym, got '" +
                      type + "'");
  }
  return sc;
}

}  // namespace memgrav
