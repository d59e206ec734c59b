#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "posetbal/canonical.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/rational.hpp"

namespace posetbal {

enum class CheckStatus { pass, fail, report_only, skipped };

/// Proved statements fail hard; conjectures are logged as discoveries; report
/// checks only collect ratios.
enum class Severity { theorem, conjecture, report };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::report_only: return "report-only";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

inline const char* to_string(Severity s) {
  switch (s) {
    case Severity::theorem: return "theorem";
    case Severity::conjecture: return "conjecture";
    case Severity::report: return "report";
  }
  return "?";
}

using NamedValues = std::vector<std::pair<std::string, std::string>>;

/// Row-major strict-order matrix in the poset's own labelling, "n:0101...".
/// from_canonical_form parses it back, so a witness can be re-run as is.
inline std::string matrix_form(const Poset& p) {
  const std::size_t n = p.size();
  std::string bits(n * n, '0');
  for (Element x = 0; x < n; ++x)
    for (Element y : p.above(x)) bits[x * n + y] = '1';
  return std::to_string(n) + ":" + bits;
}

struct Witness {
  std::string poset;
  std::vector<Element> elements;
  NamedValues values;
};

struct CheckReport {
  std::string check;
  Severity severity = Severity::theorem;
  CheckStatus status = CheckStatus::pass;
  std::string poset;  // matrix form of the checked poset
  std::size_t instances = 0;  // tuples examined
  std::optional<Witness> witness;
  /// Tightest lhs - rhs seen (pass/fail checks) or the reported extremal
  /// ratio (report checks).
  std::optional<Rational> extremal;
  NamedValues values;
  std::string note;

  bool hard_failure() const { return status == CheckStatus::fail && severity == Severity::theorem; }
};

/// Accumulates "lhs >= rhs" comparisons for one poset: counts instances,
/// keeps the minimum slack and the first violation.
class SlackTracker {
 public:
  SlackTracker(std::string check, Severity severity, const Poset& p)
      : poset_(&p) {
    report_.check = std::move(check);
    report_.severity = severity;
    report_.poset = matrix_form(p);
  }

  /// Records lhs >= rhs. Returns whether it held.
  bool at_least(const Rational& lhs, const Rational& rhs, std::vector<Element> elements = {},
                const NamedValues& values = {}) {
    ++report_.instances;
    Rational slack = lhs - rhs;
    if (!report_.extremal || slack < *report_.extremal) report_.extremal = slack;
    if (slack >= 0) return true;
    if (report_.status != CheckStatus::fail) {
      report_.status = CheckStatus::fail;
      Witness w{report_.poset, std::move(elements), values};
      w.values.emplace_back("lhs", to_string(lhs));
      w.values.emplace_back("rhs", to_string(rhs));
      report_.witness = std::move(w);
    }
    return false;
  }

  bool equal(const Rational& lhs, const Rational& rhs, std::vector<Element> elements = {}) {
    ++report_.instances;
    Rational gap = abs(lhs - rhs);
    Rational slack = -gap;
    if (!report_.extremal || slack < *report_.extremal) report_.extremal = slack;
    if (gap == 0) return true;
    if (report_.status != CheckStatus::fail) {
      report_.status = CheckStatus::fail;
      report_.witness = Witness{report_.poset, std::move(elements), {{"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}}};
    }
    return false;
  }

  void value(std::string key, std::string v) { report_.values.emplace_back(std::move(key), std::move(v)); }
  void note(std::string text) { report_.note = std::move(text); }
  const Poset& poset() const { return *poset_; }
  CheckReport& report() { return report_; }
  CheckReport finish() { return std::move(report_); }

 private:
  const Poset* poset_;
  CheckReport report_;
};

inline CheckReport skipped_report(std::string check, Severity severity, const Poset& p, std::string why) {
  CheckReport r;
  r.check = std::move(check);
  r.severity = severity;
  r.status = CheckStatus::skipped;
  r.poset = matrix_form(p);
  r.note = std::move(why);
  return r;
}

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["severity"] = to_string(r.severity);
  j["status"] = to_string(r.status);
  j["poset"] = r.poset;
  j["instances"] = r.instances;
  if (r.extremal) j["extremal"] = to_string(*r.extremal);
  if (r.witness) {
    nlohmann::json w;
    w["poset"] = r.witness->poset;
    w["elements"] = r.witness->elements;
    nlohmann::json vals = nlohmann::json::object();
    for (const auto& [k, v] : r.witness->values) vals[k] = v;
    w["values"] = vals;
    j["witness"] = w;
  }
  if (!r.values.empty()) {
    nlohmann::json vals = nlohmann::json::object();
    for (const auto& [k, v] : r.values) vals[k] = v;
    j["values"] = vals;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace posetbal
