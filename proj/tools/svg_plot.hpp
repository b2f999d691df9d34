#pragma once

#include <string>
#include <vector>

namespace helmholtz::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

/// Static line chart with min/max tick labels. Non-finite points are skipped.
std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<Series>& series);

}  // namespace helmholtz::cli
