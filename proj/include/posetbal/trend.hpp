#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "posetbal/balance.hpp"
#include "posetbal/errors.hpp"
#include "posetbal/extensions.hpp"
#include "posetbal/families.hpp"
#include "posetbal/ideal_lattice.hpp"
#include "posetbal/poset.hpp"

namespace posetbal {

/// Families a trend can walk. The size parameter is k for chain/antichain and
/// t for komlos/bit.
inline Poset generate_family(const std::string& family, std::size_t param) {
  if (family == "chain") return chain(param);
  if (family == "antichain") return antichain(param);
  if (family == "komlos") return komlos_chains(param);
  if (family == "bit") return bit_example(param);
  throw InvalidArgument("unknown family '" + family + "' (chain, antichain, komlos, bit)");
}

struct TrendRow {
  std::string family;
  std::size_t param = 0;
  std::size_t n = 0;
  std::optional<Rational> delta;
  std::optional<Rational> delta3;
  std::optional<Rational> winP;
  std::optional<Rational> gap;
  std::size_t width = 0;
  std::string note;  // why a column is empty
};

struct TrendOptions {
  std::size_t ideal_cap = kDefaultIdealCap;
  std::uint64_t enum_cap = kDefaultEnumCap;
  double delta3_work_cap = 5e7;  // order evaluations x lattice size
};

inline TrendRow trend_row(const std::string& family, std::size_t param, const TrendOptions& opt = {}) {
  Poset p = generate_family(family, param);
  TrendRow row;
  row.family = family;
  row.param = param;
  row.n = p.size();
  row.width = width(p);
  std::optional<IdealLattice> lat;
  try {
    lat.emplace(p, opt.ideal_cap);
  } catch (const IdealCapExceeded& e) {
    row.note = e.what();
    return row;
  }
  ExtensionStats s = exact_stats(*lat, opt.enum_cap);
  Rational delta(0);
  for (Element x = 0; x < row.n; ++x)
    for (Element y = x + 1; y < row.n; ++y) delta = std::max(delta, std::min(s.prec[x][y], s.prec[y][x]));
  row.delta = delta;
  row.gap = height_gap(s.h);
  if (s.win) row.winP = *std::max_element(s.win->begin(), s.win->end());
  if (row.n >= 3) {
    const double triples = static_cast<double>(row.n) * static_cast<double>(row.n - 1) * static_cast<double>(row.n - 2);
    if (triples * static_cast<double>(lat->size()) <= opt.delta3_work_cap) {
      row.delta3 = delta_k(p, p.all(), 3, kDefaultDeltaKBudget, opt.ideal_cap).value;
    } else {
      row.note = "delta3 over work cap";
    }
  }
  return row;
}

inline std::vector<TrendRow> trend_report(const std::string& family, const std::vector<std::size_t>& params,
                                          const TrendOptions& opt = {}) {
  std::vector<TrendRow> rows;
  for (std::size_t v : params) rows.push_back(trend_row(family, v, opt));
  return rows;
}

inline void write_trend_csv(std::ostream& out, const std::vector<TrendRow>& rows) {
  auto cell = [](const std::optional<Rational>& q) { return q ? to_string(*q) : std::string(); };
  out << "family,n,delta,delta3,winP,gap,width\n";
  for (const auto& r : rows) {
    out << r.family << ',' << r.n << ',' << cell(r.delta) << ',' << cell(r.delta3) << ',' << cell(r.winP) << ','
        << cell(r.gap) << ',' << r.width << '\n';
  }
}

}  // namespace posetbal
