#ifndef NHFC_CONFIG_HPP
#define NHFC_CONFIG_HPP

#include "nhfc/io.hpp"

namespace nhfc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value sections: [problem], [grid], [experiment].
struct Config {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& sec, const std::string& key) const {
    auto it = sections.find(sec);
    return it != sections.end() && it->second.count(key) > 0;
  }
  std::string get(const std::string& sec, const std::string& key,
                  const std::string& fallback) const {
    auto it = sections.find(sec);
    if (it == sections.end()) return fallback;
    auto jt = it->second.find(key);
    return jt == it->second.end() ? fallback : jt->second;
  }
  std::string require(const std::string& sec, const std::string& key) const {
    if (!has(sec, key)) throw ConfigError("missing config key [" + sec + "] " + key);
    return sections.at(sec).at(key);
  }
  int get_int(const std::string& sec, const std::string& key, int fallback) const {
    const std::string v = get(sec, key, "");
    if (v.empty()) return fallback;
    try {
      return std::stoi(v);
    } catch (...) {
      throw ConfigError("config key [" + sec + "] " + key + ": not an integer: '" + v + "'");
    }
  }
  double get_double(const std::string& sec, const std::string& key, double fallback) const {
    const std::string v = get(sec, key, "");
    if (v.empty()) return fallback;
    try {
      return std::stod(v);
    } catch (...) {
      throw ConfigError("config key [" + sec + "] " + key + ": not a number: '" + v + "'");
    }
  }
};

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline Config parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config: " + path);
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError(path + ": line " + std::to_string(lineno) + ": unterminated section");
      section = trim(t.substr(1, t.size() - 2));
      cfg.sections[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ": line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError(path + ": line " + std::to_string(lineno) + ": key outside any section");
    cfg.sections[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return cfg;
}

inline ModelProblem problem_from_config(const Config& cfg) {
  const std::string kind = cfg.get("problem", "kind", "Oh1D");
  std::vector<double> h;
  std::istringstream hs(cfg.get("problem", "h", "2"));
  std::string part;
  while (std::getline(hs, part, ',')) {
    try {
      h.push_back(std::stod(trim(part)));
    } catch (...) {
      throw ConfigError("config key [problem] h: not a number: '" + part + "'");
    }
  }
  if (kind == "Oh1D") {
    if (h.size() != 1) throw ConfigError("[problem] kind=Oh1D requires a single h");
    return ModelProblem::oh1d(h[0]);
  }
  if (kind == "OhND") {
    const int d = cfg.get_int("problem", "d", static_cast<int>(h.size()));
    if (static_cast<size_t>(d) != h.size())
      throw ConfigError("[problem] d does not match the number of h components");
    return ModelProblem::ohnd(h);
  }
  throw ConfigError("[problem] unknown kind: " + kind);
}

}  // namespace nhfc

#endif  // NHFC_CONFIG_HPP
