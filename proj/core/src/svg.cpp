#include "skewlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace skewlab {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 160.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;
constexpr int kTicks = 5;

const char* const kPalette[] = {"#000000", "#d62728", "#cc00cc", "#1f77b4",
                                "#2ca02c", "#ff7f0e", "#9467bd", "#17becf"};
constexpr int kPaletteSize = 8;

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string tick_label(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finalize() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      const double pad = (lo == 0.0) ? 0.5 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string render_line_plot(const PlotSpec& spec) {
  Range xr, yr;
  for (const Series& s : spec.series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.finalize();
  yr.finalize();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) {
    return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  auto py = [&](double y) {
    return kMarginTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h;
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"600\" viewBox=\"0 0 800 600\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"" + num(kMarginLeft + plot_w / 2.0) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         xml_escape(spec.title) + "</text>\n";

  for (int i = 0; i < kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / (kTicks - 1);
    const double gx = px(fx);
    out += "<line x1=\"" + num(gx) + "\" y1=\"" + num(kMarginTop) +
           "\" x2=\"" + num(gx) + "\" y2=\"" + num(kMarginTop + plot_h) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(gx) + "\" y=\"" +
           num(kMarginTop + plot_h + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(fx) + "</text>\n";
    const double fy = yr.lo + (yr.hi - yr.lo) * i / (kTicks - 1);
    const double gy = py(fy);
    out += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(gy) +
           "\" x2=\"" + num(kMarginLeft + plot_w) + "\" y2=\"" + num(gy) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(kMarginLeft - 8.0) + "\" y=\"" +
           num(gy + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(fy) + "</text>\n";
  }

  out += "<rect x=\"" + num(kMarginLeft) + "\" y=\"" + num(kMarginTop) +
         "\" width=\"" + num(plot_w) + "\" height=\"" + num(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (size_t s = 0; s < spec.series.size(); ++s) {
    const Series& series = spec.series[s];
    const char* color = kPalette[s % kPaletteSize];
    std::string points;
    const size_t n = std::min(series.x.size(), series.y.size());
    for (size_t i = 0; i < n; ++i) {
      if (!std::isfinite(series.x[i]) || !std::isfinite(series.y[i])) {
        continue;
      }
      if (!points.empty()) points.push_back(' ');
      points += num(px(series.x[i])) + "," + num(py(series.y[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  const double legend_x = kWidth - kMarginRight + 14.0;
  for (size_t s = 0; s < spec.series.size(); ++s) {
    const double ly = kMarginTop + 14.0 + 20.0 * static_cast<double>(s);
    const char* color = kPalette[s % kPaletteSize];
    out += "<line x1=\"" + num(legend_x) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(legend_x + 22.0) + "\" y2=\"" + num(ly) + "\" stroke=\"" +
           std::string(color) + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(legend_x + 28.0) + "\" y=\"" + num(ly + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(spec.series[s].label) + "</text>\n";
  }

  out += "<text x=\"" + num(kMarginLeft + plot_w / 2.0) + "\" y=\"" +
         num(kHeight - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         xml_escape(spec.x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + num(kMarginTop + plot_h / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 " +
         num(kMarginTop + plot_h / 2.0) + ")\">" + xml_escape(spec.y_label) +
         "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace skewlab
