#pragma once

// Hand-rolled SVG line plots: fixed canvas, numeric ticks, optional log10
// y-axis, circle markers for data points, rectangle swatches in the legend
// (so circles count data points only). Output is byte-deterministic: fixed
// formatting, no timestamps, series rendered in insertion order.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hps {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool line = true;
    bool markers = true;
    bool dashed = false;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 840;
    int height = 600;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f6fb4", "#d1483a", "#2c8c4b", "#8a56b0",
                                    "#c78a22", "#3aa6a6", "#b0568a", "#666666"};
    return palette[i % 8];
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

inline std::string render_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
    if (series.empty()) throw std::invalid_argument("render_plot: no series");
    // collect plottable points (log axis skips non-positive values)
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    std::size_t points = 0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("render_plot: series x/y lengths differ");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double yv = s.y[i];
            if (opt.log_y && !(yv > 0.0)) continue;
            if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
            double ty = opt.log_y ? std::log10(yv) : yv;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty);
            ymax = std::max(ymax, ty);
            ++points;
        }
    }
    if (points == 0) throw std::invalid_argument("render_plot: no plottable points");
    if (xmax <= xmin) { xmin -= 0.5; xmax += 0.5; }
    if (ymax <= ymin) { ymin -= 0.5; ymax += 0.5; }
    double xpad = 0.05 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

    const double ml = 72, mr = 24, mt = 42, mb = 52;
    const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
    auto px = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    auto py = [&](double yt) { return mt + ph * (1.0 - (yt - ymin) / (ymax - ymin)); };
    auto ty = [&](double y) { return opt.log_y ? std::log10(y) : y; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
           "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
           std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
           std::to_string(opt.height) + "\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + detail::fmt(ml) + "\" y=\"" + detail::fmt(mt) + "\" width=\"" +
           detail::fmt(pw) + "\" height=\"" + detail::fmt(ph) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    if (!opt.title.empty())
        svg += "<text x=\"" + detail::fmt(ml + pw / 2) +
               "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
               detail::xml_escape(opt.title) + "</text>\n";

    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        double fx = xmin + (xmax - xmin) * i / nticks;
        double gx = px(fx);
        svg += "<line x1=\"" + detail::fmt(gx) + "\" y1=\"" + detail::fmt(mt + ph) + "\" x2=\"" +
               detail::fmt(gx) + "\" y2=\"" + detail::fmt(mt + ph + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + detail::fmt(gx) + "\" y=\"" + detail::fmt(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt(fx) + "</text>\n";
        double fy = ymin + (ymax - ymin) * i / nticks;
        double gy = py(fy);
        svg += "<line x1=\"" + detail::fmt(ml - 5) + "\" y1=\"" + detail::fmt(gy) + "\" x2=\"" +
               detail::fmt(ml) + "\" y2=\"" + detail::fmt(gy) + "\" stroke=\"#333333\"/>\n";
        std::string label = opt.log_y ? ("1e" + detail::fmt(fy)) : detail::fmt(fy);
        svg += "<text x=\"" + detail::fmt(ml - 8) + "\" y=\"" + detail::fmt(gy + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label +
               "</text>\n";
    }
    if (!opt.x_label.empty())
        svg += "<text x=\"" + detail::fmt(ml + pw / 2) + "\" y=\"" +
               detail::fmt(opt.height - 12.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
               detail::xml_escape(opt.x_label) + "</text>\n";
    if (!opt.y_label.empty())
        svg += "<text x=\"18\" y=\"" + detail::fmt(mt + ph / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
               detail::fmt(mt + ph / 2) + ")\">" + detail::xml_escape(opt.y_label) + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = detail::series_color(si);
        std::string path;
        bool pen_up = true;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((opt.log_y && !(s.y[i] > 0.0)) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                pen_up = true;
                continue;
            }
            path += (pen_up ? "M" : "L");
            path += detail::fmt(px(s.x[i])) + " " + detail::fmt(py(ty(s.y[i])));
            pen_up = false;
        }
        if (s.line && !path.empty())
            svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
                   (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if ((opt.log_y && !(s.y[i] > 0.0)) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                    continue;
                svg += "<circle cx=\"" + detail::fmt(px(s.x[i])) + "\" cy=\"" +
                       detail::fmt(py(ty(s.y[i]))) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
            }
        }
    }

    // legend: rectangle swatches only
    double ly = mt + 10;
    for (std::size_t si = 0; si < series.size(); ++si) {
        if (series[si].name.empty()) continue;
        svg += "<rect x=\"" + detail::fmt(ml + 10) + "\" y=\"" + detail::fmt(ly) +
               "\" width=\"16\" height=\"4\" fill=\"" + detail::series_color(si) + "\"/>\n";
        svg += "<text x=\"" + detail::fmt(ml + 32) + "\" y=\"" + detail::fmt(ly + 6) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::xml_escape(series[si].name) + "</text>\n";
        ly += 18;
    }
    svg += "</svg>\n";
    return svg;
}

inline void write_plot(const std::string& path, const std::vector<PlotSeries>& series,
                       const PlotOptions& opt) {
    std::string svg = render_plot(series, opt);  // render before opening: no file on error
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open SVG file for writing: " + path);
    out << svg;
    if (!out) throw std::runtime_error("failed writing SVG file: " + path);
}

}  // namespace hps
