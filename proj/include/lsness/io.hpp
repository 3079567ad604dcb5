// Serialization of operators and scan results: JSON records (schema_version
// tagged) and CSV tables with complex values split into _re/_im columns.

#pragma once

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "lsness/physical_op.hpp"

namespace lsness {

inline constexpr const char* kSchemaVersion = "1";

using Json = nlohmann::ordered_json;

// [[eps_pow, z_pow, re, im], ...] with big integers rendered as strings.
inline Json to_json(const ExactScalar& s) {
  Json terms = Json::array();
  for (const auto& [k, c] : s.terms())
    terms.push_back({k.first, k.second, c.re.str(), c.im.str()});
  return terms;
}

inline Json to_json(const PhysicalOperator<ExactScalar>& op) {
  std::vector<std::pair<long, long>> keys;
  for (const auto& [k, v] : op.entries())
    keys.emplace_back(PhysicalOperator<ExactScalar>::row_of(k),
                      PhysicalOperator<ExactScalar>::col_of(k));
  std::sort(keys.begin(), keys.end());
  Json entries = Json::array();
  for (const auto& [r, c] : keys)
    entries.push_back({r, c, to_json(op.get(r, c))});
  return Json{{"n", op.sites()}, {"mode", "exact"}, {"entries", entries}};
}

inline Json to_json(const PhysicalOperator<NumericScalar>& op) {
  std::vector<std::pair<long, long>> keys;
  for (const auto& [k, v] : op.entries())
    keys.emplace_back(PhysicalOperator<NumericScalar>::row_of(k),
                      PhysicalOperator<NumericScalar>::col_of(k));
  std::sort(keys.begin(), keys.end());
  Json entries = Json::array();
  for (const auto& [r, c] : keys) {
    const NumericScalar v = op.get(r, c);
    entries.push_back({r, c, v.real(), v.imag()});
  }
  return Json{{"n", op.sites()}, {"mode", "numeric"}, {"entries", entries}};
}

// Row-oriented table convertible to either output format.
struct ResultTable {
  std::vector<std::string> columns;  // complex values enter as _re/_im pairs
  std::vector<std::vector<Json>> rows;

  void add_row(std::vector<Json> row) { rows.push_back(std::move(row)); }

  Json json(const Json& header) const {
    Json out = header;
    out["schema_version"] = kSchemaVersion;
    Json recs = Json::array();
    for (const auto& row : rows) {
      Json rec;
      for (std::size_t i = 0; i < columns.size(); ++i) rec[columns[i]] = row[i];
      recs.push_back(std::move(rec));
    }
    out["rows"] = std::move(recs);
    return out;
  }

  std::string csv() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ",";
        if (row[i].is_string())
          os << row[i].get<std::string>();
        else
          os << row[i].dump();
      }
      os << "\n";
    }
    return os.str();
  }
};

inline void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
}

}  // namespace lsness
