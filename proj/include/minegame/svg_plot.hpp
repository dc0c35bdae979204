#pragma once

// Minimal self-contained SVG line/scatter plots for sweep output.

#include <string>
#include <utility>
#include <vector>

namespace minegame::svg {

using Point = std::pair<double, double>;

struct Series {
  std::string label;
  std::string color;
  // Disconnected polylines; a single-point polyline is drawn as a dot.
  std::vector<std::vector<Point>> segments;
  bool dashed = false;
};

struct Rect {
  double x0, y0, x1, y1;
  std::string color;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  std::vector<Series> series;
  std::vector<Rect> cells;  // filled rectangles drawn under the series
};

// Panels laid out left to right.
std::string render(const std::vector<Panel>& panels, const std::string& title);

}  // namespace minegame::svg
