#pragma once

// Minimal CSV tables: header row, '.' decimals, shortest round-trip number
// formatting, optional leading '#' comment lines. Non-finite numbers are
// refused so NaN or inf can never reach an output file.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hetbeam::csv {

/// Shortest text that parses back to the same double. Throws
/// InvalidParameter for NaN or inf.
std::string format_number(double value);

class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_comment(std::string line);
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> comments_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string cell(double v) { return format_number(v); }
inline std::string cell(int v) { return std::to_string(v); }
inline std::string cell(bool v) { return v ? "1" : "0"; }
inline std::string cell(std::string_view v) { return std::string(v); }

/// Reads a table written by Table::write; comment lines are skipped.
/// Throws std::runtime_error on a missing file or ragged rows.
Table read(const std::filesystem::path& path);

/// Column index by name; throws std::runtime_error if absent.
std::size_t column(const Table& table, std::string_view name);

/// Parses a numeric cell; throws std::runtime_error on junk.
double parse_number(std::string_view text);

}  // namespace hetbeam::csv
