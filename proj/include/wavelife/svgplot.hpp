#pragma once

// Minimal standalone SVG line chart: axes, ticks, optional log scales, a
// fixed palette. A pure function of its inputs, so rerenders are bit-stable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wavelife {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string fmt4g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

} // namespace detail

inline std::string render_line_chart(const std::string& title, const std::string& xlabel,
                                     const std::string& ylabel,
                                     const std::vector<PlotSeries>& series, bool logx = false,
                                     bool logy = false) {
    const double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 55;
    auto tx = [&](double v) { return logx ? std::log10(v) : v; };
    auto ty = [&](double v) { return logy ? std::log10(v) : v; };

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [px, py] : s.points) {
            if ((logx && !(px > 0)) || (logy && !(py > 0)))
                throw std::invalid_argument("render_line_chart: log scale needs positive data");
            double x = tx(px), y = ty(py);
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!any) throw std::invalid_argument("render_line_chart: no data");
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    auto sx = [&](double v) { return ML + (tx(v) - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto sy = [&](double v) { return H - MB - (ty(v) - ymin) / (ymax - ymin) * (H - MT - MB); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" + title + "</text>\n";

    // axes
    svg += "<line x1=\"" + detail::fmt2(ML) + "\" y1=\"" + detail::fmt2(H - MB) + "\" x2=\"" +
           detail::fmt2(W - MR) + "\" y2=\"" + detail::fmt2(H - MB) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::fmt2(ML) + "\" y1=\"" + detail::fmt2(MT) + "\" x2=\"" +
           detail::fmt2(ML) + "\" y2=\"" + detail::fmt2(H - MB) + "\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        double fx = xmin + (xmax - xmin) * k / 4.0;
        double fy = ymin + (ymax - ymin) * k / 4.0;
        double px = ML + (W - ML - MR) * k / 4.0;
        double py = H - MB - (H - MT - MB) * k / 4.0;
        double labx = logx ? std::pow(10.0, fx) : fx;
        double laby = logy ? std::pow(10.0, fy) : fy;
        svg += "<line x1=\"" + detail::fmt2(px) + "\" y1=\"" + detail::fmt2(H - MB) + "\" x2=\"" +
               detail::fmt2(px) + "\" y2=\"" + detail::fmt2(H - MB + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::fmt2(px) + "\" y=\"" + detail::fmt2(H - MB + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt4g(labx) + "</text>\n";
        svg += "<line x1=\"" + detail::fmt2(ML - 5) + "\" y1=\"" + detail::fmt2(py) + "\" x2=\"" +
               detail::fmt2(ML) + "\" y2=\"" + detail::fmt2(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + detail::fmt2(ML - 8) + "\" y=\"" + detail::fmt2(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt4g(laby) + "</text>\n";
    }

    svg += "<text x=\"" + detail::fmt2((ML + W - MR) / 2) + "\" y=\"" + detail::fmt2(H - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + xlabel +
           (logx ? " (log)" : "") + "</text>\n";
    svg += "<text x=\"18\" y=\"" + detail::fmt2((MT + H - MB) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " +
           detail::fmt2((MT + H - MB) / 2) + ")\">" + ylabel + (logy ? " (log)" : "") +
           "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = palette[si % 5];
        std::string pts;
        for (const auto& [px, py] : series[si].points) {
            if (!pts.empty()) pts += ' ';
            pts += detail::fmt2(sx(px)) + ',' + detail::fmt2(sy(py));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        double ly = MT + 16.0 * double(si);
        svg += "<line x1=\"" + detail::fmt2(W - MR - 110) + "\" y1=\"" + detail::fmt2(ly) +
               "\" x2=\"" + detail::fmt2(W - MR - 90) + "\" y2=\"" + detail::fmt2(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + detail::fmt2(W - MR - 84) + "\" y=\"" + detail::fmt2(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + series[si].label +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace wavelife
