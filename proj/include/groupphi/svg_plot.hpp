// Minimal standalone SVG line chart with error bars.
#pragma once

#include <span>
#include <string>

namespace groupphi {

struct ChartLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

void write_line_chart_svg(const std::string& path, const ChartLabels& labels,
                          std::span<const double> x, std::span<const double> y,
                          std::span<const double> yerr);

} // namespace groupphi
