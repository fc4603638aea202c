#include "plateball/output_record.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace plateball {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_number(std::string_view t) {
  if (t == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (t == "inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size())
    throw std::invalid_argument("not a number: '" + std::string(t) + "'");
  return v;
}

std::size_t OutputRecord::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no column '" + std::string(name) + "' in " + schema);
}

std::vector<double> OutputRecord::column_values(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r[c]);
  return v;
}

std::string OutputRecord::to_csv() const {
  std::string out = "# schema: " + schema + "\n";
  for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += format_number(r[i]);
    }
    out += "\n";
  }
  return out;
}

std::string OutputRecord::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  j["meta"] = m;
  j["columns"] = columns;
  nlohmann::ordered_json rs = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (double v : r) {
      if (std::isfinite(v)) row.push_back(v);
      else row.push_back(nullptr);
    }
    rs.push_back(row);
  }
  j["rows"] = rs;
  return j.dump(2) + "\n";
}

OutputRecord OutputRecord::from_csv(std::string_view text) {
  OutputRecord rec;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) throw std::invalid_argument("bad meta line: " + line);
      std::string key = line.substr(2, colon - 2), value = line.substr(colon + 2);
      if (key == "schema") rec.schema = value;
      else rec.add_meta(std::move(key), std::move(value));
      continue;
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!header) {
      rec.columns = std::move(cells);
      header = true;
      continue;
    }
    if (cells.size() != rec.columns.size()) throw std::invalid_argument("row width differs from header: " + line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c));
    rec.rows.push_back(std::move(row));
  }
  if (!header) throw std::invalid_argument("CSV has no header line");
  return rec;
}

}  // namespace plateball
