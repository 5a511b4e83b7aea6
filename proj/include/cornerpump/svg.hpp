#pragma once

#include <string>
#include <vector>

#include "cornerpump/result_table.hpp"

namespace cornerpump {

enum class PlotKind { Line, Heatmap };

struct PlotSpec {
  PlotKind kind = PlotKind::Line;
  std::string title;
  /// Line: x column (first column when empty) and y columns (all others
  /// when empty). Heatmap: columns "i", "j" and `value_column`.
  std::string x_column;
  std::vector<std::string> y_columns;
  std::string value_column = "probability";
};

/// Self-contained 800x600 SVG with ticked axes. Output depends only on the
/// table and spec.
std::string emit_svg(const ResultTable& table, const PlotSpec& spec);

}  // namespace cornerpump
