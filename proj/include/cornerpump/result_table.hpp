#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cornerpump {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Rectangular numeric table with named columns.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t column_count() const { return header_.size(); }
  std::size_t row_count() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  void add_row(std::vector<double> row);
  /// Throws InputError for an unknown name.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;

  /// Header plus one line per row, ',' separated, 17 significant digits.
  std::string to_csv() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

/// Round-trip-exact %.17g formatting shared by CSV and metadata output.
std::string format_number(double x);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cornerpump
