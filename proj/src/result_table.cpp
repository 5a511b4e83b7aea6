#include "cornerpump/result_table.hpp"

#include <cstdio>
#include <fstream>

#include "cornerpump/errors.hpp"

namespace cornerpump {

ResultTable::ResultTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw InputError("ResultTable: header must not be empty");
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != header_.size()) {
    throw InputError("ResultTable: row has " + std::to_string(row.size()) + " values, expected " +
                     std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t k = 0; k < header_.size(); ++k) {
    if (header_[k] == name) return k;
  }
  throw InputError("ResultTable: no column named '" + name + "'");
}

std::vector<double> ResultTable::column(const std::string& name) const {
  const std::size_t k = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row[k]);
  return out;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t k = 0; k < header_.size(); ++k) {
    if (k) out += ',';
    out += header_[k];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace cornerpump
