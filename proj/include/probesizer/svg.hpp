#pragma once

#include <string>
#include <utility>
#include <vector>

namespace probesizer {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Minimal line chart (one polyline per series, log2 x axis optional).
void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<SvgSeries>& series, bool log2_x);

}  // namespace probesizer
