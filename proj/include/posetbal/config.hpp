#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "posetbal/balance.hpp"
#include "posetbal/errors.hpp"
#include "posetbal/rational.hpp"
#include "posetbal/verifier.hpp"

namespace posetbal {

struct Config {
  std::size_t ideal_cap = kDefaultIdealCap;
  std::uint64_t enum_cap = kDefaultEnumCap;
  std::size_t tau_cap = 5;
  std::uint64_t delta_k_budget = kDefaultDeltaKBudget;
  std::uint64_t fishburn_pairs = std::uint64_t{1} << 20;
  std::size_t xyz_max_set = 4;
  Rational gaptau_threshold = Rational(2);
  std::uint64_t seed = 1;
  std::size_t parallelism = 1;
  std::string format = "json";  // json | csv | text
  double tolerance_sigma = 3.0;

  VerifyCaps verify_caps() const {
    VerifyCaps c;
    c.ideal_cap = ideal_cap;
    c.enum_cap = enum_cap;
    c.xyz_max_set = xyz_max_set;
    c.fishburn_pairs = fishburn_pairs;
    c.gaptau_threshold = gaptau_threshold;
    c.tau_subset_cap = tau_cap;
    return c;
  }

  BalanceOptions balance_options() const {
    BalanceOptions b;
    b.ideal_cap = ideal_cap;
    b.enum_cap = enum_cap;
    b.tau_subset_cap = tau_cap;
    return b;
  }
};

namespace detail {
inline std::uint64_t positive_integer(const std::string& key, const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size() || x <= 0) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(x);
  } catch (const std::logic_error&) {
    throw ParseError(key + " must be a positive integer, got '" + v + "'", line);
  }
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}
}  // namespace detail

/// Applies one key=value setting.
inline void set_config_value(Config& c, const std::string& key, const std::string& value, std::size_t line = 0) {
  using detail::positive_integer;
  if (key == "ideal_cap") c.ideal_cap = positive_integer(key, value, line);
  else if (key == "enum_cap") c.enum_cap = positive_integer(key, value, line);
  else if (key == "tau_cap") c.tau_cap = positive_integer(key, value, line);
  else if (key == "delta_k_budget") c.delta_k_budget = positive_integer(key, value, line);
  else if (key == "fishburn_pairs") c.fishburn_pairs = positive_integer(key, value, line);
  else if (key == "xyz_max_set") c.xyz_max_set = positive_integer(key, value, line);
  else if (key == "parallelism") c.parallelism = positive_integer(key, value, line);
  else if (key == "seed") {
    try {
      c.seed = std::stoull(value);
    } catch (const std::logic_error&) {
      throw ParseError("seed must be an unsigned integer", line);
    }
  } else if (key == "gaptau_threshold") {
    try {
      c.gaptau_threshold = parse_rational(value);
    } catch (const std::invalid_argument&) {
      throw ParseError("gaptau_threshold must be a rational", line);
    }
  } else if (key == "format") {
    if (value != "json" && value != "csv" && value != "text") throw ParseError("format must be json, csv or text", line);
    c.format = value;
  } else if (key == "tolerance_sigma") {
    try {
      c.tolerance_sigma = std::stod(value);
    } catch (const std::logic_error&) {
      throw ParseError("tolerance_sigma must be a number", line);
    }
    if (!(c.tolerance_sigma > 0)) throw ParseError("tolerance_sigma must be positive", line);
  } else {
    throw ParseError("unknown config key '" + key + "'", line);
  }
}

/// key = value lines; '#' starts a comment; [sections] are ignored.
inline Config parse_config(const std::string& text, Config base = {}) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = detail::trim(raw.substr(0, raw.find('#')));
    if (s.empty() || s.front() == '[') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    std::string value = detail::trim(s.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    set_config_value(base, detail::trim(s.substr(0, eq)), value, line);
  }
  return base;
}

inline Config load_config_file(const std::string& path, Config base = {}) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace posetbal
