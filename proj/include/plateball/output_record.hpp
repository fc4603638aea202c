#pragma once
// Tabular command output: CSV with "# key: value" header lines, or JSON.
// Numbers are written as the shortest decimal that round-trips, with a dot
// separator regardless of locale.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plateball {

struct OutputRecord {
  std::string schema;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  // Index of a column; std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> column_values(std::string_view name) const;

  std::string to_csv() const;
  std::string to_json() const;
  // Inverse of to_csv; std::invalid_argument on malformed input.
  static OutputRecord from_csv(std::string_view text);
};

std::string format_number(double v);
double parse_number(std::string_view text);

}  // namespace plateball
