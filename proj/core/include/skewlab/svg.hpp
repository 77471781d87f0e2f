#pragma once

#include <string>
#include <vector>

namespace skewlab {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Self-contained 800x600 line plot with axes, ticks and a legend. Purely
// presentational: callers pass the already-computed values.
std::string render_line_plot(const PlotSpec& spec);

}  // namespace skewlab
