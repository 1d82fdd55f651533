#pragma once

#include <string>
#include <vector>

namespace kdvlab {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 400;
};

/// Minimal SVG line plot: a frame, min/max tick labels and one polyline per
/// series. Non-finite points, and non-positive points on log axes, are skipped.
std::string line_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt);

}  // namespace kdvlab
