#include "cornerpump/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cornerpump/errors.hpp"

namespace cornerpump {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 40, kTop = 50, kBottom = 60;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string px(double x) { return fmt("%.2f", x); }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> checked_column(const ResultTable& table, const std::string& name) {
  std::vector<double> values = table.column(name);
  for (double x : values) {
    if (!std::isfinite(x)) throw InputError("emit_svg: column '" + name + "' holds non-numeric values");
  }
  return values;
}

struct Range {
  double lo, hi;
};

Range padded_range(const std::vector<std::vector<double>>& series) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : series) {
    for (double x : s) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (hi - lo <= 1e-300) {
    const double pad = std::max(1.0, std::abs(lo)) * 0.5;
    return {lo - pad, hi + pad};
  }
  return {lo, hi};
}

// Ticks at multiples of 1, 2 or 5 times a power of ten, about five per axis.
std::vector<double> nice_ticks(Range r) {
  const double raw = (r.hi - r.lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    step = f * mag;
    if (raw <= step) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!title.empty()) {
    os << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << xml_escape(title)
       << "</text>\n";
  }
}

void draw_axes(std::ostringstream& os, Range xr, Range yr, const std::string& xlabel,
               const std::string& ylabel, bool y_down) {
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * kPlotW; };
  auto sy = [&](double y) {
    const double f = (y - yr.lo) / (yr.hi - yr.lo);
    return y_down ? kTop + f * kPlotH : kTop + (1.0 - f) * kPlotH;
  };
  os << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(kPlotW)
     << "\" height=\"" << px(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(xr)) {
    const double x = sx(t);
    os << "<line x1=\"" << px(x) << "\" y1=\"" << px(kTop + kPlotH) << "\" x2=\"" << px(x)
       << "\" y2=\"" << px(kTop + kPlotH + 5) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(x) << "\" y=\"" << px(kTop + kPlotH + 20)
       << "\" text-anchor=\"middle\">" << fmt("%.4g", t) << "</text>\n";
  }
  for (double t : nice_ticks(yr)) {
    const double y = sy(t);
    os << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft)
       << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\">"
       << fmt("%.4g", t) << "</text>\n";
  }
  os << "<text x=\"" << px(kLeft + kPlotW / 2) << "\" y=\"" << px(kHeight - 15)
     << "\" text-anchor=\"middle\">" << xml_escape(xlabel) << "</text>\n"
     << "<text x=\"20\" y=\"" << px(kTop + kPlotH / 2) << "\" text-anchor=\"middle\" "
     << "transform=\"rotate(-90 20 " << px(kTop + kPlotH / 2) << ")\">" << xml_escape(ylabel)
     << "</text>\n";
}

// Piecewise-linear viridis approximation.
std::string heat_color(double f) {
  static constexpr std::array<std::array<double, 3>, 5> stops = {{{68, 1, 84},
                                                                   {59, 82, 139},
                                                                   {33, 145, 140},
                                                                   {94, 201, 98},
                                                                   {253, 231, 37}}};
  f = std::clamp(f, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(f), stops.size() - 2);
  const double u = f - k;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[k][0] + u * (stops[k + 1][0] - stops[k][0]))),
                static_cast<int>(std::lround(stops[k][1] + u * (stops[k + 1][1] - stops[k][1]))),
                static_cast<int>(std::lround(stops[k][2] + u * (stops[k + 1][2] - stops[k][2]))));
  return buf;
}

std::string line_plot(const ResultTable& table, const PlotSpec& spec) {
  const std::string x_name = spec.x_column.empty() ? table.header().front() : spec.x_column;
  std::vector<std::string> y_names = spec.y_columns;
  if (y_names.empty()) {
    for (const auto& h : table.header()) {
      if (h != x_name) y_names.push_back(h);
    }
  }
  if (y_names.empty()) throw InputError("emit_svg: line plot needs at least one y column");
  const std::vector<double> xs = checked_column(table, x_name);
  std::vector<std::vector<double>> ys;
  for (const auto& name : y_names) ys.push_back(checked_column(table, name));

  const Range xr = padded_range({xs});
  const Range yr = padded_range(ys);
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * kPlotW; };
  auto sy = [&](double y) { return kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * kPlotH; };

  std::ostringstream os;
  open_svg(os, spec.title);
  draw_axes(os, xr, yr, x_name, y_names.size() == 1 ? y_names.front() : "", false);
  for (std::size_t s = 0; s < ys.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k) os << ' ';
      os << px(sx(xs[k])) << ',' << px(sy(ys[s][k]));
    }
    os << "\"/>\n";
    if (ys.size() > 1) {
      const double ly = kTop + 15 + 16 * static_cast<double>(s);
      os << "<line x1=\"" << px(kLeft + kPlotW - 150) << "\" y1=\"" << px(ly) << "\" x2=\""
         << px(kLeft + kPlotW - 125) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
         << "\" stroke-width=\"2\"/>\n"
         << "<text x=\"" << px(kLeft + kPlotW - 120) << "\" y=\"" << px(ly + 4) << "\">"
         << xml_escape(y_names[s]) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap_plot(const ResultTable& table, const PlotSpec& spec) {
  const std::vector<double> is = checked_column(table, "i");
  const std::vector<double> js = checked_column(table, "j");
  const std::vector<double> values = checked_column(table, spec.value_column);
  const auto [imin, imax] = std::minmax_element(is.begin(), is.end());
  const auto [jmin, jmax] = std::minmax_element(js.begin(), js.end());
  const double i0 = *imin, j0 = *jmin;
  const double ni = *imax - i0 + 1, nj = *jmax - j0 + 1;
  const double vmax = *std::max_element(values.begin(), values.end());
  const double vmin = std::min(0.0, *std::min_element(values.begin(), values.end()));
  const double span = vmax - vmin > 0 ? vmax - vmin : 1.0;
  const double cw = kPlotW / ni, ch = kPlotH / nj;

  std::ostringstream os;
  open_svg(os, spec.title);
  for (std::size_t k = 0; k < values.size(); ++k) {
    os << "<rect x=\"" << px(kLeft + (is[k] - i0) * cw) << "\" y=\"" << px(kTop + (js[k] - j0) * ch)
       << "\" width=\"" << px(cw) << "\" height=\"" << px(ch) << "\" fill=\""
       << heat_color((values[k] - vmin) / span) << "\"/>\n";
  }
  // Axis ranges span cell edges so ticks sit on cell centers.
  draw_axes(os, {i0 - 0.5, *imax + 0.5}, {j0 - 0.5, *jmax + 0.5}, "i", "j", true);
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string emit_svg(const ResultTable& table, const PlotSpec& spec) {
  if (table.empty()) throw InputError("emit_svg: table is empty");
  return spec.kind == PlotKind::Line ? line_plot(table, spec) : heatmap_plot(table, spec);
}

}  // namespace cornerpump
