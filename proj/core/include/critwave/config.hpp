#pragma once
/*
 * Run configuration: plain-text `key = value` files plus command-line
 * overrides. Unknown keys are rejected; every run can write back the
 * fully resolved configuration next to its outputs together with a
 * deterministic hash.
 */

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace critwave {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class RunConfig {
 public:
  RunConfig() = default;

  // Parses `key = value` lines; '#' starts a comment; blank lines ignored.
  static RunConfig from_file(const std::string& path);
  static RunConfig from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  // Throws ConfigError when any key is outside `known`.
  void require_known_keys(const std::vector<std::string>& known) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;

  // `start:end:step` range or comma-separated list.
  std::vector<double> get_values(const std::string& key) const;

  // Sorted `key = value` lines; the canonical form that is hashed.
  std::string resolved_text() const;
  std::uint64_t hash() const;  // FNV-1a over resolved_text()

 private:
  std::map<std::string, std::string> kv_;
};

std::vector<double> parse_value_list(const std::string& spec);

}  // namespace critwave
