#pragma once

#include <optional>
#include <string>
#include <vector>

namespace genmi {

// One cluster of bars (e.g. a normalizer), one value slot per series.
// A nullopt value renders as an "N/A" marker instead of a bar.
struct BarGroup {
  std::string label;
  std::vector<std::optional<double>> values;
};

struct GroupedBarChart {
  std::string title;
  std::string y_label;
  std::vector<std::string> series;  // legend entries, one color each
  std::vector<BarGroup> groups;
};

// Self-contained SVG document. Every bar carries a data-value attribute and
// a text label produced by format_value, so plotted values can be compared
// byte-for-byte against the CSV sidecar.
std::string render_svg(const GroupedBarChart& chart);

// Shortest round-trip decimal rendering of a double.
std::string format_value(double v);

}  // namespace genmi
