#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracdyn {

struct PlotSeries {
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 480;
};

// Minimal SVG line plot: frame, axis labels with min/max ticks, one polyline
// per series. Non-finite points are skipped.
void write_svg_plot(std::ostream& out, const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace fracdyn
