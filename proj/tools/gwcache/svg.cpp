#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gwcache::cli {

namespace {

constexpr double kW = 720, kH = 480;
constexpr double kLeft = 72, kRight = 24, kTop = 24, kBottom = 56;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Tick spacing of the form {1, 2, 2.5, 5} * 10^k giving at most `most` ticks.
double nice_step(double span, int most) {
    if (span <= 0) return 1;
    double raw = span / most;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (m * mag >= raw) return m * mag;
    return 10 * mag;
}

}  // namespace

std::string render_chart(const std::vector<SvgSeries>& series, const std::string& x_label,
                         const std::string& y_label) {
    double xmax = 0, ymax = 0;
    for (const SvgSeries& s : series)
        for (auto [x, y] : s.pts) {
            xmax = std::max(xmax, x);
            ymax = std::max(ymax, y);
        }
    if (xmax <= 0) xmax = 1;
    if (ymax <= 0) ymax = 1;
    ymax *= 1.04;  // headroom so the top curve does not touch the frame

    double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
    auto px = [&](double x) { return kLeft + x / xmax * pw; };
    auto py = [&](double y) { return kTop + ph - y / ymax * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kW) + "\" height=\"" +
           fmt(kH) + "\" viewBox=\"0 0 " + fmt(kW) + " " + fmt(kH) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    double xs = nice_step(xmax, 8), ys = nice_step(ymax, 8);
    out += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double t = xs; t <= xmax + 1e-12; t += xs)
        out += "<line x1=\"" + fmt(px(t)) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(px(t)) +
               "\" y2=\"" + fmt(kTop + ph) + "\"/>\n";
    for (double t = ys; t <= ymax + 1e-12; t += ys)
        out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(py(t)) + "\" x2=\"" +
               fmt(kLeft + pw) + "\" y2=\"" + fmt(py(t)) + "\"/>\n";
    out += "</g>\n";

    out += "<g fill=\"none\" stroke-width=\"1.5\">\n";
    for (const SvgSeries& s : series) {
        if (s.pts.empty()) continue;
        out += "<polyline stroke=\"" + s.color + "\" points=\"";
        for (size_t i = 0; i < s.pts.size(); ++i) {
            if (i) out += " ";
            out += fmt(px(s.pts[i].first)) + "," + fmt(py(s.pts[i].second));
        }
        out += "\"/>\n";
    }
    out += "</g>\n";

    out += "<g stroke=\"black\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop + ph) + "\" x2=\"" +
           fmt(kLeft + pw) + "\" y2=\"" + fmt(kTop + ph) + "\"/>\n";
    out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(kTop + ph) + "\"/>\n";
    out += "</g>\n";

    out += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (double t = 0; t <= xmax + 1e-12; t += xs)
        out += "<text x=\"" + fmt(px(t)) + "\" y=\"" + fmt(kTop + ph + 16) +
               "\" text-anchor=\"middle\">" + fmt(t) + "</text>\n";
    for (double t = 0; t <= ymax + 1e-12; t += ys)
        out += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(t) + 4) +
               "\" text-anchor=\"end\">" + fmt(t) + "</text>\n";
    out += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kH - 12) +
           "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt(kTop + ph / 2) + ")\">" + y_label + "</text>\n";

    double ly = kTop + 10;
    for (const SvgSeries& s : series) {
        double lx = kLeft + pw - 150;
        out += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(lx + 24) +
               "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + fmt(lx + 30) + "\" y=\"" + fmt(ly) + "\">" + s.name + "</text>\n";
        ly += 18;
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace gwcache::cli
