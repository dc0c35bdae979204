#include "minegame/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace minegame::svg {
namespace {

constexpr double kPanelWidth = 420;
constexpr double kPanelHeight = 320;
constexpr double kMarginLeft = 56;
constexpr double kMarginRight = 16;
constexpr double kMarginTop = 40;
constexpr double kMarginBottom = 48;
constexpr double kLegendHeight = 18;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
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

struct Frame {
  double left, top, width, height;
  const Panel* panel;

  double px(double x) const {
    const double span = panel->x_max - panel->x_min;
    return left + (span > 0 ? (x - panel->x_min) / span : 0.5) * width;
  }
  double py(double y) const {
    const double span = panel->y_max - panel->y_min;
    return top + height - (span > 0 ? (y - panel->y_min) / span : 0.5) * height;
  }
};

void draw_panel(std::ostringstream& out, const Panel& panel, double offset_x) {
  const Frame f{offset_x + kMarginLeft, kMarginTop, kPanelWidth - kMarginLeft - kMarginRight,
                kPanelHeight - kMarginTop - kMarginBottom, &panel};
  for (const auto& c : panel.cells) {
    const double x = f.px(c.x0), y = f.py(c.y1);
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(f.px(c.x1) - x) << "\" height=\""
        << num(f.py(c.y0) - y) << "\" fill=\"" << c.color << "\" shape-rendering=\"crispEdges\"/>\n";
  }
  out << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\"" << num(f.width) << "\" height=\""
      << num(f.height) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = panel.x_min + (panel.x_max - panel.x_min) * i / 4.0;
    const double yv = panel.y_min + (panel.y_max - panel.y_min) * i / 4.0;
    out << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(f.top + f.height + 14)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    out << "<text x=\"" << num(f.left - 4) << "\" y=\"" << num(f.py(yv) + 3)
        << "\" font-size=\"10\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  out << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\"" << num(f.top - 8)
      << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(panel.title) << "</text>\n";
  out << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\"" << num(f.top + f.height + 32)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(panel.x_label) << "</text>\n";
  out << "<text x=\"" << num(offset_x + 14) << "\" y=\"" << num(f.top + f.height / 2)
      << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(offset_x + 14) << " "
      << num(f.top + f.height / 2) << ")\">" << escape(panel.y_label) << "</text>\n";

  for (const auto& s : panel.series) {
    const std::string dash = s.dashed ? " stroke-dasharray=\"5,3\"" : "";
    for (const auto& seg : s.segments) {
      if (seg.size() == 1) {
        out << "<circle cx=\"" << num(f.px(seg[0].first)) << "\" cy=\"" << num(f.py(seg[0].second))
            << "\" r=\"2\" fill=\"" << s.color << "\"/>\n";
        continue;
      }
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"" << dash << " points=\"";
      for (std::size_t i = 0; i < seg.size(); ++i) {
        if (i) out << ' ';
        out << num(f.px(seg[i].first)) << ',' << num(f.py(seg[i].second));
      }
      out << "\"/>\n";
    }
  }
  double ly = kPanelHeight + 4;
  for (const auto& s : panel.series) {
    if (s.label.empty()) continue;
    out << "<rect x=\"" << num(f.left) << "\" y=\"" << num(ly) << "\" width=\"10\" height=\"10\" fill=\"" << s.color
        << "\"/>\n";
    out << "<text x=\"" << num(f.left + 14) << "\" y=\"" << num(ly + 9) << "\" font-size=\"10\">" << escape(s.label)
        << "</text>\n";
    ly += kLegendHeight;
  }
}

}  // namespace

std::string render(const std::vector<Panel>& panels, const std::string& title) {
  std::size_t legend_rows = 0;
  for (const auto& p : panels) {
    std::size_t rows = 0;
    for (const auto& s : p.series) rows += s.label.empty() ? 0 : 1;
    legend_rows = std::max(legend_rows, rows);
  }
  const double width = kPanelWidth * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  const double height = kPanelHeight + 8 + kLegendHeight * static_cast<double>(legend_rows);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
  out << "<title>" << escape(title) << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(out, panels[i], kPanelWidth * static_cast<double>(i));
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace minegame::svg
