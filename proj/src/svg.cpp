#include "bhwave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bhwave::svg {

namespace {

const char* kPalette[] = {"#1f6fb4", "#d1495b", "#3a7d44", "#8d5a97", "#c98a2b"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string render(const PlotSpec& spec) {
    constexpr double W = 800, H = 560;
    constexpr double L = 70, R = 20, T = 40, B = 50;

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
    auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
    size_t points = 0;
    for (const auto& s : spec.series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            const double x = tx(s.x[i]), y = ty(s.y[i]);
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
            ++points;
        }
    if (points == 0) throw std::invalid_argument("svg::render: empty table");
    if (xmax - xmin < 1e-12) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return L + (tx(x) - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (ty(y) - ymin) / (ymax - ymin) * (H - T - B); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
           "viewBox=\"0 0 800 560\">\n";
    out += "<rect width=\"800\" height=\"560\" fill=\"white\"/>\n";
    out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"16\">" + spec.title + "</text>\n";

    // frame and ticks
    out += "<rect x=\"" + num(L) + "\" y=\"" + num(T) + "\" width=\"" + num(W - L - R) +
           "\" height=\"" + num(H - T - B) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = xmin + i * (xmax - xmin) / 5.0;
        const double fy = ymin + i * (ymax - ymin) / 5.0;
        const double sx = L + i * (W - L - R) / 5.0;
        const double sy = H - B - i * (H - T - B) / 5.0;
        const double lx = spec.log_x ? std::pow(10.0, fx) : fx;
        const double ly = spec.log_y ? std::pow(10.0, fy) : fy;
        out += "<line x1=\"" + num(sx) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(sx) +
               "\" y2=\"" + num(H - B + 5) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + num(sx) + "\" y=\"" + num(H - B + 20) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">" +
               num(lx) + "</text>\n";
        out += "<line x1=\"" + num(L - 5) + "\" y1=\"" + num(sy) + "\" x2=\"" + num(L) +
               "\" y2=\"" + num(sy) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + num(L - 8) + "\" y=\"" + num(sy + 4) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" +
               num(ly) + "</text>\n";
    }
    out += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 12) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">" +
           spec.x_label + "</text>\n";
    out += "<text x=\"16\" y=\"" + num((T + H - B) / 2) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
           "transform=\"rotate(-90 16 " + num((T + H - B) / 2) + ")\">" + spec.y_label +
           "</text>\n";

    int color = 0;
    for (const auto& s : spec.series) {
        const std::string c = kPalette[color % 5];
        ++color;
        if (s.markers) {
            for (size_t i = 0; i < s.x.size(); ++i)
                out += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" + num(py(s.y[i])) +
                       "\" r=\"4\" fill=\"" + c + "\"/>\n";
        } else {
            std::string pts;
            for (size_t i = 0; i < s.x.size(); ++i)
                pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + c +
                   "\" stroke-width=\"1.5\"/>\n";
        }
        if (!s.label.empty())
            out += "<text x=\"" + num(W - R - 8) + "\" y=\"" + num(T + 18.0 * color) +
                   "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\" fill=\"" +
                   c + "\">" + s.label + "</text>\n";
    }

    if (spec.with_fit) {
        const double y0 = spec.fit_intercept + spec.fit_slope * xmin;
        const double y1 = spec.fit_intercept + spec.fit_slope * xmax;
        auto pxr = [&](double xr) { return L + (xr - xmin) / (xmax - xmin) * (W - L - R); };
        auto pyr = [&](double yr) { return H - B - (yr - ymin) / (ymax - ymin) * (H - T - B); };
        out += "<line x1=\"" + num(pxr(xmin)) + "\" y1=\"" + num(pyr(y0)) + "\" x2=\"" +
               num(pxr(xmax)) + "\" y2=\"" + num(pyr(y1)) +
               "\" stroke=\"#222\" stroke-dasharray=\"6 4\"/>\n";
        out += "<text x=\"" + num(L + 10) + "\" y=\"" + num(T + 18) +
               "\" font-family=\"monospace\" font-size=\"12\">slope " + num(spec.fit_slope) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace bhwave::svg
