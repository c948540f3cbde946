#include "genmi/figures.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace genmi {

std::string format_value(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 56.0;

const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868",
                          "#c44e52", "#8172b3", "#937860"};

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const GroupedBarChart& chart) {
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double x0 = kMarginLeft;
  const double y0 = kMarginTop + plot_h;  // baseline

  double max_value = 0.0;
  for (const BarGroup& g : chart.groups) {
    for (const auto& v : g.values) {
      if (v) max_value = std::max(max_value, *v);
    }
  }
  const double y_max = max_value > 0.0 ? max_value * 1.15 : 1.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
         " " + num(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         xml_escape(chart.title) + "</text>\n";

  // y axis with 5 ticks
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(kMarginTop) + "\" x2=\"" +
         num(x0) + "\" y2=\"" + num(y0) + "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double frac = static_cast<double>(t) / 5.0;
    const double y = y0 - frac * plot_h;
    svg += "<line x1=\"" + num(x0 - 4) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(x0) + "\" y2=\"" + num(y) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(x0 + plot_w) + "\" y2=\"" + num(y) +
           "\" stroke=\"#dddddd\"/>\n";
    char tick[32];
    std::snprintf(tick, sizeof(tick), "%.3g", frac * y_max);
    svg += "<text x=\"" + num(x0 - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick + "</text>\n";
  }
  svg += "<text x=\"14\" y=\"" + num(kMarginTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 14 " +
         num(kMarginTop + plot_h / 2) + ")\">" +
         xml_escape(chart.y_label) + "</text>\n";
  svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" +
         num(x0 + plot_w) + "\" y2=\"" + num(y0) + "\" stroke=\"black\"/>\n";

  const std::size_t n_groups = chart.groups.size();
  const std::size_t n_series = chart.series.size();
  if (n_groups > 0 && n_series > 0) {
    const double group_w = plot_w / static_cast<double>(n_groups);
    const double bar_w = group_w * 0.8 / static_cast<double>(n_series);

    for (std::size_t gi = 0; gi < n_groups; ++gi) {
      const BarGroup& group = chart.groups[gi];
      const double gx = x0 + group_w * static_cast<double>(gi) + group_w * 0.1;
      for (std::size_t si = 0; si < n_series && si < group.values.size(); ++si) {
        const double bx = gx + bar_w * static_cast<double>(si);
        const auto& v = group.values[si];
        if (!v) {
          svg += "<text x=\"" + num(bx + bar_w / 2) + "\" y=\"" + num(y0 - 6) +
                 "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                 "font-size=\"10\" fill=\"#888888\">N/A</text>\n";
          continue;
        }
        const double h = std::max(0.0, *v) / y_max * plot_h;
        const std::string value_str = format_value(*v);
        svg += "<rect x=\"" + num(bx) + "\" y=\"" + num(y0 - h) + "\" width=\"" +
               num(bar_w * 0.92) + "\" height=\"" + num(h) + "\" fill=\"" +
               kPalette[si % 6] + "\" data-value=\"" + value_str + "\"/>\n";
        svg += "<text x=\"" + num(bx + bar_w / 2) + "\" y=\"" +
               num(y0 - h - 4) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"9\">" +
               value_str + "</text>\n";
      }
      svg += "<text x=\"" + num(gx + group_w * 0.4) + "\" y=\"" +
             num(y0 + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"11\">" +
             xml_escape(group.label) + "</text>\n";
    }

    // legend across the bottom
    double lx = x0;
    const double ly = kHeight - 14;
    for (std::size_t si = 0; si < n_series; ++si) {
      svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 10) +
             "\" width=\"12\" height=\"12\" fill=\"" + kPalette[si % 6] +
             "\"/>\n";
      svg += "<text x=\"" + num(lx + 16) + "\" y=\"" + num(ly) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" +
             xml_escape(chart.series[si]) + "</text>\n";
      lx += 18 + 8.0 * static_cast<double>(chart.series[si].size()) + 24;
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace genmi
