#include "hetbeam/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hetbeam/errors.hpp"

namespace hetbeam::csv {

std::string format_number(double value) {
  if (!std::isfinite(value)) throw InvalidParameter("refusing to write a non-finite number");
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw InvalidParameter("number formatting failed");
  return std::string(buf, end);
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw InvalidParameter("a table needs at least one column");
}

void Table::add_comment(std::string line) { comments_.push_back(std::move(line)); }

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InvalidParameter("row width differs from header");
  for (const auto& c : cells) {
    if (c.find_first_of(",\n\"") != std::string::npos) {
      throw InvalidParameter("cell contains a separator: " + c);
    }
  }
  rows_.push_back(std::move(cells));
}

std::string Table::str() const {
  std::string out;
  for (const auto& c : comments_) out += "# " + c + "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void Table::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << str();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) cells.push_back(cur);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

Table read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::vector<std::string> comments;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      comments.push_back(line.substr(2));
      continue;
    }
    break;
  }
  if (line.empty()) throw std::runtime_error(path.string() + " has no header");
  Table t(split(line));
  for (auto& c : comments) t.add_comment(std::move(c));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header().size()) {
      throw std::runtime_error(path.string() + ": ragged row '" + line + "'");
    }
    t.add_row(std::move(cells));
  }
  return t;
}

std::size_t column(const Table& table, std::string_view name) {
  const auto& h = table.header();
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] == name) return i;
  }
  throw std::runtime_error("missing column " + std::string(name));
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error("not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace hetbeam::csv
