#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace tpdsvg {

namespace {

// viridis anchors, linearly interpolated to a fixed 256-step ramp.
constexpr int kAnchors[17][3] = {
    {68, 1, 84},    {72, 24, 106},  {71, 45, 123},  {66, 64, 134},  {59, 82, 139},
    {51, 99, 141},  {44, 114, 142}, {38, 130, 142}, {33, 145, 140}, {31, 160, 136},
    {40, 174, 128}, {63, 188, 115}, {94, 201, 98},  {132, 212, 75}, {173, 220, 48},
    {216, 226, 25}, {253, 231, 37}};

std::string ramp_color(double f) {
    if (!(f >= 0.0)) f = 0.0;
    if (f > 1.0) f = 1.0;
    const int step = std::min(static_cast<int>(f * 255.0), 255);
    const double pos = step / 255.0 * 16.0;
    const int lo = std::min(static_cast<int>(pos), 15);
    const double t = pos - lo;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(std::lround(kAnchors[lo][0] +
                                               t * (kAnchors[lo + 1][0] - kAnchors[lo][0]))),
                  static_cast<int>(std::lround(kAnchors[lo][1] +
                                               t * (kAnchors[lo + 1][1] - kAnchors[lo][1]))),
                  static_cast<int>(std::lround(kAnchors[lo][2] +
                                               t * (kAnchors[lo + 1][2] - kAnchors[lo][2]))));
    return buf;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<double> unique_sorted(const std::vector<double>& v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

constexpr double kW = 720, kH = 560;
constexpr double kL = 80, kR = 110, kT = 48, kB = 64;  // margins

std::string text(double x, double y, const std::string& s, int size = 13,
                 const char* anchor = "middle") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" +
           std::to_string(size) +
           "\" font-family=\"sans-serif\" text-anchor=\"" + anchor + "\">" + s +
           "</text>\n";
}

}  // namespace

std::string render_heatmap(const HeatmapData& d) {
    if (d.x.size() != d.y.size() || d.x.size() != d.value.size() || d.x.empty())
        throw std::invalid_argument("render_heatmap: inconsistent data");
    const auto xs = unique_sorted(d.x);
    const auto ys = unique_sorted(d.y);
    std::map<double, int> xi, yi;
    for (std::size_t i = 0; i < xs.size(); ++i) xi[xs[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < ys.size(); ++i) yi[ys[i]] = static_cast<int>(i);

    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    double pos_min = std::numeric_limits<double>::infinity();
    for (double v : d.value) {
        if (std::isnan(v)) continue;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        if (v > 0.0) pos_min = std::min(pos_min, v);
    }
    if (!std::isfinite(vmin)) {
        vmin = 0.0;
        vmax = 1.0;
    }
    auto scale = [&](double v) {
        if (d.log_color) {
            const double floor_v = std::isfinite(pos_min) ? pos_min : 1e-12;
            const double lv = std::log10(std::max(v, floor_v));
            const double lmin = std::log10(floor_v);
            const double lmax = std::log10(std::max(vmax, floor_v * 10.0));
            return lmax > lmin ? (lv - lmin) / (lmax - lmin) : 0.0;
        }
        return vmax > vmin ? (v - vmin) / (vmax - vmin) : 0.0;
    };

    const double pw = kW - kL - kR, ph = kH - kT - kB;
    const double cw = pw / xs.size(), ch = ph / ys.size();

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) +
           "\" height=\"" + num(kH) + "\" viewBox=\"0 0 " + num(kW) + " " + num(kH) +
           "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += text(kW / 2, 24, d.title, 15);
    for (std::size_t i = 0; i < d.x.size(); ++i) {
        const int cx = xi[d.x[i]];
        const int cy = yi[d.y[i]];
        const double px = kL + cx * cw;
        const double py = kT + ph - (cy + 1) * ch;  // y axis upward
        const std::string color =
            std::isnan(d.value[i]) ? "#bbbbbb" : ramp_color(scale(d.value[i]));
        svg += "<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" +
               num(cw + 0.5) + "\" height=\"" + num(ch + 0.5) + "\" fill=\"" + color +
               "\"/>\n";
    }
    // axes
    svg += "<rect x=\"" + num(kL) + "\" y=\"" + num(kT) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += text(kL, kH - kB + 18, num(xs.front()), 12, "start");
    svg += text(kL + pw, kH - kB + 18, num(xs.back()), 12, "end");
    svg += text(kL - 6, kH - kB, num(ys.front()), 12, "end");
    svg += text(kL - 6, kT + 12, num(ys.back()), 12, "end");
    svg += text(kW / 2 - kR / 2, kH - 20, d.x_label, 13);
    svg += "<g transform=\"translate(20," + num(kT + ph / 2) + ") rotate(-90)\">" +
           text(0, 0, d.y_label, 13) + "</g>\n";
    // color bar with min/max annotations
    const double bx = kW - kR + 28, bw = 18;
    for (int i = 0; i < 256; ++i) {
        const double by = kT + ph - (i + 1) * ph / 256.0;
        svg += "<rect x=\"" + num(bx) + "\" y=\"" + num(by) + "\" width=\"" + num(bw) +
               "\" height=\"" + num(ph / 256.0 + 0.5) + "\" fill=\"" +
               ramp_color(i / 255.0) + "\"/>\n";
    }
    svg += "<rect x=\"" + num(bx) + "\" y=\"" + num(kT) + "\" width=\"" + num(bw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += text(bx + bw + 4, kT + ph, (d.log_color ? "min>0: " : "min: ") +
                                          num(d.log_color ? pos_min : vmin),
                11, "start");
    svg += text(bx + bw + 4, kT + 12, "max: " + num(vmax), 11, "start");
    svg += text(bx + bw / 2, kT - 8, d.value_label, 12);
    svg += "</svg>\n";
    return svg;
}

std::string render_lines(const LinePlotData& d) {
    if (d.series.empty()) throw std::invalid_argument("render_lines: no series");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : d.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double pw = kW - kL - kR, ph = kH - kT - kB;
    auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kT + ph - (y - ymin) / (ymax - ymin) * ph; };

    static const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                     "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) +
           "\" height=\"" + num(kH) + "\" viewBox=\"0 0 " + num(kW) + " " + num(kH) +
           "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += text(kW / 2, 24, d.title, 15);
    svg += "<rect x=\"" + num(kL) + "\" y=\"" + num(kT) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t si = 0; si < d.series.size(); ++si) {
        const auto& s = d.series[si];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
            pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               kPalette[si % 8] + "\" stroke-width=\"1.6\"/>\n";
        svg += "<g><rect x=\"" + num(kW - kR + 14) + "\" y=\"" +
               num(kT + 16.0 * si + 4) + "\" width=\"14\" height=\"4\" fill=\"" +
               kPalette[si % 8] + "\"/>" +
               text(kW - kR + 32, kT + 16.0 * si + 10, s.label, 11, "start") + "</g>\n";
    }
    svg += text(kL, kH - kB + 18, num(xmin), 12, "start");
    svg += text(kL + pw, kH - kB + 18, num(xmax), 12, "end");
    svg += text(kL - 6, kH - kB, num(ymin), 12, "end");
    svg += text(kL - 6, kT + 12, num(ymax), 12, "end");
    svg += text(kW / 2 - kR / 2, kH - 20, d.x_label, 13);
    svg += "<g transform=\"translate(20," + num(kT + ph / 2) + ") rotate(-90)\">" +
           text(0, 0, d.y_label, 13) + "</g>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace tpdsvg
