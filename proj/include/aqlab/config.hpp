#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "aqlab/errors.hpp"

namespace aqlab {

/// Desk-scale bounds. Every unary-flavoured computation in the library is
/// linear in operand magnitude, so each carries a configurable ceiling.
struct Config {
  std::uint64_t ordinal_bound = 64;            // largest von Neumann ordinal built
  std::uint64_t successor_chain_bound = 10000; // largest n in successor_chain_add(m, n)
  std::uint64_t prove_bound = 1000;            // largest constant magnitude prove() expands
  std::uint64_t peano_render_cap = 32;         // longest S(...) chain printed literally

  static const Config& defaults() {
    static const Config c{};
    return c;
  }
};

/// key=value text, one entry per line, '#' comments.
inline Config load_config(std::istream& in) {
  Config c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = line.substr(0, line.find('#'));
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw error(errc::format_error,
                  "FormatError: config line " + std::to_string(lineno) + " has no '='");
    auto trim = [](std::string v) {
      std::size_t b = v.find_first_not_of(" \t\r");
      std::size_t e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : v.substr(b, e - b + 1);
    };
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    std::uint64_t n = 0;
    try {
      n = std::stoull(value);
    } catch (...) {
      throw error(errc::format_error, "FormatError: config value for '" + key +
                                          "' is not a number: '" + value + "'");
    }
    if (key == "ordinal_bound") c.ordinal_bound = n;
    else if (key == "successor_chain_bound") c.successor_chain_bound = n;
    else if (key == "prove_bound") c.prove_bound = n;
    else if (key == "peano_render_cap") c.peano_render_cap = n;
    else
      throw error(errc::format_error, "FormatError: unknown config key '" + key + "'");
  }
  return c;
}

inline Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::format_error, "FormatError: cannot open config file " + path);
  return load_config(in);
}

/// Resolves the active configuration: explicit path > AQLAB_CONFIG > defaults.
inline Config resolve_config(const std::string& explicit_path = {}) {
  if (!explicit_path.empty()) return load_config_file(explicit_path);
  if (const char* env = std::getenv("AQLAB_CONFIG"); env && *env) return load_config_file(env);
  return Config::defaults();
}

}  // namespace aqlab
