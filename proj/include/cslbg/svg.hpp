#pragma once

// Self-contained SVG line plots: axes, optional log scaling, one polyline
// per data series, text labels. No external plotting dependency; the output
// is plain XML whose structure tests can assert on.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cslbg/io.hpp"

namespace cslbg {

struct SvgPoint {
    double x;
    double y;
};

struct SvgSeries {
    std::string label;
    std::vector<SvgPoint> points;
};

struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<SvgSeries> series;
};

namespace detail {

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string svg_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace detail

//! Write the plot as a standalone SVG file. Log axes require all
//! coordinates on that axis to be strictly positive.
inline void write_svg(const std::string& path, const SvgPlot& plot)
{
    if (plot.series.empty())
        throw std::invalid_argument("SVG plot needs at least one series");
    for (const auto& s : plot.series)
        if (s.points.empty())
            throw std::invalid_argument("SVG series '" + s.label + "' has no points");

    auto tx = [&](double x) {
        if (!plot.log_x) return x;
        if (!(x > 0))
            throw std::domain_error("log x axis needs positive values, got "
                                    + std::to_string(x));
        return std::log10(x);
    };
    auto ty = [&](double y) {
        if (!plot.log_y) return y;
        if (!(y > 0))
            throw std::domain_error("log y axis needs positive values, got "
                                    + std::to_string(y));
        return std::log10(y);
    };

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& s : plot.series)
        for (const auto& p : s.points) {
            const double x = tx(p.x), y = ty(p.y);
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    constexpr double width = 720, height = 480;
    constexpr double ml = 90, mr = 30, mt = 50, mb = 60;
    auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) {
        return height - mb - (ty(y) - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    static const char* palette[] = {"#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2", "#b8860b"};

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << detail::xml_escape(plot.title)
        << "</text>\n";

    // axes
    out << "  <line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << detail::xml_escape(plot.x_label) << "</text>\n";
    out << "  <text x=\"20\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << (mt + height - mb) / 2 << ")\">"
        << detail::xml_escape(plot.y_label) << "</text>\n";

    // ticks: 5 per axis in transformed coordinates
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double sx = ml + (width - ml - mr) * i / 4.0;
        const double sy = height - mb - (height - mt - mb) * i / 4.0;
        const double vx = plot.log_x ? std::pow(10.0, fx) : fx;
        const double vy = plot.log_y ? std::pow(10.0, fy) : fy;
        char lbl[32];
        std::snprintf(lbl, sizeof lbl, "%.3g", vx);
        out << "  <line x1=\"" << sx << "\" y1=\"" << height - mb << "\" x2=\"" << sx
            << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << sx << "\" y=\"" << height - mb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << lbl
            << "</text>\n";
        std::snprintf(lbl, sizeof lbl, "%.3g", vy);
        out << "  <line x1=\"" << ml - 5 << "\" y1=\"" << sy << "\" x2=\"" << ml << "\" y2=\""
            << sy << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << ml - 8 << "\" y=\"" << sy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << lbl
            << "</text>\n";
    }

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto& s = plot.series[i];
        const char* color = palette[i % (sizeof palette / sizeof palette[0])];
        out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
            << "points=\"";
        for (std::size_t j = 0; j < s.points.size(); ++j) {
            if (j) out << ' ';
            out << detail::svg_num(px(s.points[j].x)) << ','
                << detail::svg_num(py(s.points[j].y));
        }
        out << "\"/>\n";
        out << "  <text x=\"" << width - mr - 6 << "\" y=\"" << mt + 16 + 16 * i
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << color << "\">" << detail::xml_escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace cslbg
