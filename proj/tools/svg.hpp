// svg.hpp — self-contained SVG heatmap / line-plot emitter for the CLI.
// Pure functions of the data: no timestamps or other run-dependent content.

#pragma once

#include <string>
#include <vector>

namespace tpdsvg {

struct HeatmapData {
    std::vector<double> x, y, value;  // one entry per grid point
    std::string title, x_label, y_label, value_label;
    bool log_color{false};
};

struct LineSeries {
    std::string label;
    std::vector<double> x, y;
};

struct LinePlotData {
    std::vector<LineSeries> series;
    std::string title, x_label, y_label;
};

std::string render_heatmap(const HeatmapData& data);
std::string render_lines(const LinePlotData& data);

}  // namespace tpdsvg
