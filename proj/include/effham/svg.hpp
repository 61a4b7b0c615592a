#pragma once

#include <string>
#include <vector>

namespace effham {

// Minimal timestamp-free SVG renderings; the CSV files are the
// authoritative artifacts, these are for eyeballing.
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

// Line plot; non-finite samples break the polyline.  `log_abs_y` plots
// log10(|y|) instead of y.
std::string svg_line_plot(const std::string& title,
                          const std::vector<SvgSeries>& series,
                          bool log_abs_y = false);

// Heatmap of z[row][col] over the given axes; NaN cells are left blank.
std::string svg_heatmap(const std::string& title,
                        const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const std::vector<std::vector<double>>& z,
                        bool log_abs = false);

}  // namespace effham
