#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "projbound/io.hpp"

namespace projbound {

struct SvgSeries {
    std::string name;
    std::vector<double> values;
};

namespace detail {

inline std::string fmt2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

}  // namespace detail

/**
 * Static 800x600 line chart: axes, one polyline per series, legend with the
 * series names. The plotted values are also embedded verbatim in a
 * <metadata> block ("name:v,v,..." per line, full precision), so emitted
 * figures can be checked against their source tables without rasterizing.
 */
inline std::string render_line_chart(const std::string& title, const std::string& x_label,
                                     const std::vector<double>& x, const std::vector<SvgSeries>& series) {
    const double width = 800.0, height = 600.0;
    const double left = 70.0, right = 770.0, top = 50.0, bottom = 540.0;

    double xmin = x.empty() ? 0.0 : x.front(), xmax = xmin;
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    double ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series)
        for (double v : s.values) {
            if (first) {
                ymin = ymax = v;
                first = false;
            }
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (right - left); };
    auto py = [&](double v) { return bottom - (v - ymin) / (ymax - ymin) * (bottom - top); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const std::size_t ncolors = sizeof(palette) / sizeof(palette[0]);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt2(width) + "\" height=\"" +
           detail::fmt2(height) + "\" viewBox=\"0 0 800 600\">\n";
    svg += "<metadata id=\"series-data\">\n";
    {
        std::string line = "epsilon:";
        for (std::size_t i = 0; i < x.size(); ++i) line += (i ? "," : "") + format_full(x[i]);
        svg += line + "\n";
    }
    for (const auto& s : series) {
        std::string line = s.name + ":";
        for (std::size_t i = 0; i < s.values.size(); ++i) line += (i ? "," : "") + format_full(s.values[i]);
        svg += line + "\n";
    }
    svg += "</metadata>\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" font-family=\"sans-serif\">" + title +
           "</text>\n";

    // axes
    svg += "<line x1=\"" + detail::fmt2(left) + "\" y1=\"" + detail::fmt2(bottom) + "\" x2=\"" + detail::fmt2(right) +
           "\" y2=\"" + detail::fmt2(bottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::fmt2(left) + "\" y1=\"" + detail::fmt2(top) + "\" x2=\"" + detail::fmt2(left) +
           "\" y2=\"" + detail::fmt2(bottom) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 5.0;
        const double fy = ymin + (ymax - ymin) * t / 5.0;
        char label[32];
        svg += "<line x1=\"" + detail::fmt2(px(fx)) + "\" y1=\"" + detail::fmt2(bottom) + "\" x2=\"" +
               detail::fmt2(px(fx)) + "\" y2=\"" + detail::fmt2(bottom + 6.0) + "\" stroke=\"black\"/>\n";
        std::snprintf(label, sizeof(label), "%.3g", fx);
        svg += "<text x=\"" + detail::fmt2(px(fx)) + "\" y=\"" + detail::fmt2(bottom + 22.0) +
               "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" + label + "</text>\n";
        svg += "<line x1=\"" + detail::fmt2(left - 6.0) + "\" y1=\"" + detail::fmt2(py(fy)) + "\" x2=\"" +
               detail::fmt2(left) + "\" y2=\"" + detail::fmt2(py(fy)) + "\" stroke=\"black\"/>\n";
        std::snprintf(label, sizeof(label), "%.3g", fy);
        svg += "<text x=\"" + detail::fmt2(left - 10.0) + "\" y=\"" + detail::fmt2(py(fy) + 4.0) +
               "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">" + label + "</text>\n";
    }
    svg += "<text x=\"420\" y=\"575\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">" + x_label +
           "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        std::string points;
        for (std::size_t i = 0; i < x.size() && i < series[s].values.size(); ++i) {
            if (i) points += ' ';
            points += detail::fmt2(px(x[i])) + "," + detail::fmt2(py(series[s].values[i]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(palette[s % ncolors]) +
               "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
        const double ly = top + 18.0 * static_cast<double>(s);
        svg += "<line x1=\"600\" y1=\"" + detail::fmt2(ly) + "\" x2=\"630\" y2=\"" + detail::fmt2(ly) +
               "\" stroke=\"" + palette[s % ncolors] + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"636\" y=\"" + detail::fmt2(ly + 4.0) +
               "\" font-size=\"12\" font-family=\"sans-serif\">" + series[s].name + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

/// Read back the series embedded by render_line_chart.
inline std::vector<SvgSeries> parse_chart_metadata(const std::string& svg) {
    const std::string open = "<metadata id=\"series-data\">\n";
    const std::string close = "</metadata>";
    const std::size_t lo = svg.find(open);
    const std::size_t hi = svg.find(close);
    if (lo == std::string::npos || hi == std::string::npos)
        throw ParseError("svg: missing series metadata block");
    std::vector<SvgSeries> out;
    std::size_t pos = lo + open.size();
    while (pos < hi) {
        const std::size_t eol = svg.find('\n', pos);
        const std::string line = svg.substr(pos, std::min(eol, hi) - pos);
        pos = (eol == std::string::npos) ? hi : eol + 1;
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("svg: malformed series line '" + line + "'");
        SvgSeries s;
        s.name = line.substr(0, colon);
        std::size_t start = colon + 1;
        while (start <= line.size() && start > colon) {
            const std::size_t comma = line.find(',', start);
            const std::string tok = line.substr(start, comma == std::string::npos ? comma : comma - start);
            if (!tok.empty()) s.values.push_back(detail::parse_double(tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace projbound
