#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "memgrav/simulation.hpp"

namespace memgrav {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat sectioned key-value configuration:
///   # comment
///   [section]
///   key = value
/// Section and key order are preserved; serialize() emits a canonical text
/// that re-parses to an equal Config.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  std::string serialize() const;
  void write_file(const std::string& path) const;

  bool has(const std::string& section, const std::string& key) const;
  const std::string& get(const std::string& section,
                         const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_int_or(const std::string& section, const std::string& key,
                  long fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key,
                   bool fallback) const;

  void set(const std::string& section, const std::string& key,
           const std::string& value);
  void set_double(const std::string& section, const std::string& key,
                  double value);

  std::vector<std::string> sections() const;
  std::vector<std::string> keys(const std::string& section) const;

  bool operator==(const Config& other) const = default;

 private:
  struct Entry {
    std::string key, value;
    bool operator==(const Entry&) const = default;
  };
  struct Section {
    std::string name;
    std::vector<Entry> entries;
    bool operator==(const Section&) const = default;
  };
  std::vector<Section> sections_;

  const Entry* find(const std::string& section, const std::string& key) const;
};

/// Builds a runnable Scenario from a parsed config (sections: run, terrain,
/// membrane, vehicle.<n>, controller bindings inline per vehicle).
Scenario scenario_from_config(const Config& cfg);

}  // namespace memgrav
