#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "posetbal/canonical.hpp"
#include "posetbal/errors.hpp"
#include "posetbal/poset.hpp"

namespace posetbal {

// Text format: first non-blank line holds n; every later line holds "u v"
// meaning u < v. '#' starts a comment. JSON alternative:
// {"n": 3, "relations": [[0, 1], [0, 2]]}.

namespace detail {

struct NumberedRelation {
  Relation pair;
  std::size_t line;
};

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

inline bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

// Adds relations one at a time so a cycle can be blamed on the line that
// closed it.
inline Poset build_with_line_blame(std::size_t n, const std::vector<NumberedRelation>& rels) {
  std::vector<std::uint64_t> reach(n, 0);  // reach[a]: elements forced above a
  for (const auto& r : rels) {
    auto [u, v] = r.pair;
    if (u >= n || v >= n) {
      throw ParseError("element out of range (n=" + std::to_string(n) + ")", r.line);
    }
    if (u == v || ((reach[v] >> u) & 1U)) throw ParseError("relation creates a cycle", r.line);
    const std::uint64_t lifted = reach[v] | (std::uint64_t{1} << v);
    for (std::size_t a = 0; a < n; ++a) {
      if (a == u || ((reach[a] >> u) & 1U)) reach[a] |= lifted;
    }
  }
  return Poset::from_up_masks(std::move(reach));
}

inline Poset parse_json_poset(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 1);
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 0) {
    throw ParseError("JSON poset needs a non-negative integer field \"n\"", 1);
  }
  const auto n = j["n"].get<std::size_t>();
  if (n > kMaxElements) throw ParseError("posets are limited to 64 elements", 1);
  std::vector<NumberedRelation> rels;
  if (j.contains("relations")) {
    const auto& arr = j["relations"];
    if (!arr.is_array()) throw ParseError("\"relations\" must be an array", 1);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& r = arr[i];
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer() ||
          r[0].get<long long>() < 0 || r[1].get<long long>() < 0) {
        throw ParseError("relation #" + std::to_string(i) + " must be a pair of element indices", 1);
      }
      // Relations are numbered from 1 so the blamed "line" is the entry index.
      rels.push_back({{r[0].get<std::size_t>(), r[1].get<std::size_t>()}, i + 1});
    }
  }
  return build_with_line_blame(n, rels);
}

}  // namespace detail

/// Accepts the text format, the JSON form, or a bare matrix form "n:0101..."
/// as printed in check witnesses.
inline Poset parse_poset(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return detail::parse_json_poset(text);
    break;
  }
  {
    std::istringstream words(text);
    std::string first, rest;
    if (words >> first && !(words >> rest) && first.find(':') != std::string::npos) return from_canonical_form(first);
  }
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool have_n = false;
  std::size_t n = 0;
  std::vector<detail::NumberedRelation> rels;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::strip_comment(raw);
    if (detail::blank(line)) continue;
    std::istringstream fields(line);
    if (!have_n) {
      long long value = -1;
      std::string extra;
      if (!(fields >> value) || value < 0 || (fields >> extra)) {
        throw ParseError("expected the element count n", line_no);
      }
      if (value > static_cast<long long>(kMaxElements)) throw ParseError("posets are limited to 64 elements", line_no);
      n = static_cast<std::size_t>(value);
      have_n = true;
      continue;
    }
    long long u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0) {
      throw ParseError("expected a relation \"u v\"", line_no);
    }
    rels.push_back({{static_cast<Element>(u), static_cast<Element>(v)}, line_no});
  }
  if (!have_n) throw ParseError("missing element count", line_no == 0 ? 1 : line_no);
  return detail::build_with_line_blame(n, rels);
}

inline Poset read_poset(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_poset(buf.str());
}

inline Poset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return read_poset(in);
}

/// Text form listing cover relations only.
inline std::string to_text(const Poset& p, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += std::to_string(p.size()) + "\n";
  for (auto [x, y] : p.cover_relations()) out += std::to_string(x) + " " + std::to_string(y) + "\n";
  return out;
}

inline nlohmann::json to_json(const Poset& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (auto [x, y] : p.cover_relations()) rels.push_back({x, y});
  return {{"n", p.size()}, {"relations", rels}};
}

}  // namespace posetbal
