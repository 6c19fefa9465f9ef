#include "critwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace critwave {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected `key = value`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    }
    cfg.kv_[key] = value;
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

void RunConfig::require_known_keys(const std::vector<std::string>& known) const {
  for (const auto& [key, value] : kv_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key: " + key);
    }
  }
}

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key `" + key + "`: not a number: " + it->second);
  }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const double v = get_double(key, fallback);
  if (v != std::floor(v)) {
    throw ConfigError("config key `" + key + "`: not an integer");
  }
  return static_cast<int>(v);
}

std::vector<double> RunConfig::get_values(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key: " + key);
  return parse_value_list(it->second);
}

std::string RunConfig::resolved_text() const {
  std::string out;
  for (const auto& [key, value] : kv_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::uint64_t RunConfig::hash() const {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : resolved_text()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<double> parse_value_list(const std::string& spec) {
  const auto to_double = [&](const std::string& tok) {
    try {
      size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad numeric token: " + tok);
    }
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    // start:end:step
    std::istringstream ss(spec);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
        !std::getline(ss, c)) {
      throw ConfigError("bad range (want start:end:step): " + spec);
    }
    const double start = to_double(a), end = to_double(b), step = to_double(c);
    if (!(step > 0.0) || end < start) {
      throw ConfigError("bad range bounds: " + spec);
    }
    for (int k = 0;; ++k) {
      const double v = start + k * step;
      if (v > end + 1e-9 * step) break;
      out.push_back(v);
    }
  } else {
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      out.push_back(to_double(tok));
    }
  }
  if (out.empty()) throw ConfigError("empty value list: " + spec);
  return out;
}

}  // namespace critwave
