#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace planestat {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string svg_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace detail

/// Static polyline chart; deterministic byte-for-byte for identical input.
inline std::string render_chart(const std::string& title, const std::string& x_label,
                                const std::string& y_label,
                                const std::vector<SvgSeries>& series) {
  const double width = 720, height = 480;
  const double ml = 70, mr = 160, mt = 40, mb = 50;  // margins (legend on the right)
  const double pw = width - ml - mr, ph = height - mt - mb;

  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool any = false;
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!any) {
        x0 = x1 = x;
        y0 = y1 = y;
        any = true;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  double ypad = 0.05 * (y1 - y0);
  y0 -= ypad;
  y1 += ypad;

  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return mt + ph - (y - y0) / (y1 - y0) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
         "viewBox=\"0 0 720 480\">\n";
  out += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  out += "<text x=\"" + detail::svg_num(ml + pw / 2) + "\" y=\"24\" font-size=\"15\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">" + title + "</text>\n";

  // axes
  out += "<rect x=\"" + detail::svg_num(ml) + "\" y=\"" + detail::svg_num(mt) +
         "\" width=\"" + detail::svg_num(pw) + "\" height=\"" + detail::svg_num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    double tx = x0 + (x1 - x0) * i / nticks;
    double ty = y0 + (y1 - y0) * i / nticks;
    out += "<line x1=\"" + detail::svg_num(px(tx)) + "\" y1=\"" + detail::svg_num(mt + ph) +
           "\" x2=\"" + detail::svg_num(px(tx)) + "\" y2=\"" + detail::svg_num(mt + ph + 5) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + detail::svg_num(px(tx)) + "\" y=\"" + detail::svg_num(mt + ph + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" +
           detail::svg_tick(tx) + "</text>\n";
    out += "<line x1=\"" + detail::svg_num(ml - 5) + "\" y1=\"" + detail::svg_num(py(ty)) +
           "\" x2=\"" + detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(py(ty)) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + detail::svg_num(ml - 8) + "\" y=\"" + detail::svg_num(py(ty) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" +
           detail::svg_tick(ty) + "</text>\n";
  }
  out += "<text x=\"" + detail::svg_num(ml + pw / 2) + "\" y=\"" +
         detail::svg_num(height - 12) + "\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">" + x_label + "</text>\n";
  out += "<text x=\"18\" y=\"" + detail::svg_num(mt + ph / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 18 " + detail::svg_num(mt + ph / 2) + ")\">" + y_label +
         "</text>\n";

  // series + legend
  double ly = mt + 10;
  for (const auto& s : series) {
    std::string pts;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!pts.empty()) pts += " ";
      pts += detail::svg_num(px(x)) + "," + detail::svg_num(py(y));
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" +
           pts + "\"/>\n";
    out += "<line x1=\"" + detail::svg_num(width - mr + 10) + "\" y1=\"" + detail::svg_num(ly) +
           "\" x2=\"" + detail::svg_num(width - mr + 34) + "\" y2=\"" + detail::svg_num(ly) +
           "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + detail::svg_num(width - mr + 40) + "\" y=\"" +
           detail::svg_num(ly + 4) + "\" font-size=\"12\" font-family=\"sans-serif\">" +
           s.label + "</text>\n";
    ly += 18;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace planestat
