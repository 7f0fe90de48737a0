#pragma once

#include "optiverse/types.hpp"

#include <string>
#include <vector>

namespace optiverse {

struct PlotSeries
{
  std::string label;
  VecX x;
  VecX y;
};

struct PlotSpec
{
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  bool equal_aspect = false; // for ray paths
};

// Static SVG line plot.
std::string svg_line_plot(PlotSpec const &spec);

} // namespace optiverse
