#pragma once

#include <cstdint>
#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace azsweep {

// Header-first CSV with optional double-quoted fields.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws FormatError if absent
  bool has_column(std::string_view name) const;
  void require_columns(std::initializer_list<std::string_view> names) const;

  const std::string& get(std::size_t row, std::string_view name) const;
  double get_double(std::size_t row, std::string_view name) const;
  std::int64_t get_int(std::size_t row, std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(std::string_view field);

}  // namespace azsweep
