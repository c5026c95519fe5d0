#pragma once

#include <string>
#include <vector>

namespace bhwave::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;  // scatter points instead of a polyline
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
    // optional fitted line y = intercept + slope * x in plot coordinates
    bool with_fit = false;
    double fit_slope = 0.0;
    double fit_intercept = 0.0;
};

/// Deterministic standalone SVG: fixed 800x560 viewport, no external assets,
/// no timestamps. Byte-identical output for identical input.
std::string render(const PlotSpec& spec);

}  // namespace bhwave::svg
