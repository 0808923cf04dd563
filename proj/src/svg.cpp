#include "probesizer/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "probesizer/error.hpp"

namespace probesizer {

namespace {

const char* kPalette[] = {"#4363d8", "#e6194b", "#3cb44b", "#f58231",
                          "#911eb4", "#46f0f0", "#808000", "#000075"};

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4g", v);
    return buffer;
}

}  // namespace

void write_svg_line_chart(const std::string& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<SvgSeries>& series, bool log2_x) {
    std::ofstream out(path);
    if (!out) {
        fail_io("cannot open '" + path + "' for writing");
    }

    const double width = 640.0;
    const double height = 400.0;
    const double left = 64.0;
    const double right = 150.0;
    const double top = 36.0;
    const double bottom = 52.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -y_min;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            const double xt = log2_x ? std::log2(std::max(x, 1e-12)) : x;
            x_min = std::min(x_min, xt);
            x_max = std::max(x_max, xt);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!std::isfinite(x_min) || x_max <= x_min) {
        x_min = 0.0;
        x_max = 1.0;
    }
    if (!std::isfinite(y_min) || y_max <= y_min) {
        y_min = 0.0;
        y_max = std::max(1.0, y_max);
    }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const auto sx = [&](double x) {
        const double xt = log2_x ? std::log2(std::max(x, 1e-12)) : x;
        return left + (xt - x_min) / (x_max - x_min) * plot_w;
    };
    const auto sy = [&](double y) {
        return top + (y_max - y) / (y_max - y_min) * plot_h;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double frac = tick / 4.0;
        const double xv = x_min + frac * (x_max - x_min);
        const double yv = y_min + frac * (y_max - y_min);
        const double xp = left + frac * plot_w;
        const double yp = top + plot_h - frac * plot_h;
        const double x_shown = log2_x ? std::exp2(xv) : xv;
        out << "<text x=\"" << xp << "\" y=\"" << top + plot_h + 16
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
            << fmt(x_shown) << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << yp + 3
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << fmt(yv)
            << "</text>\n";
        out << "<line x1=\"" << xp << "\" y1=\"" << top + plot_h << "\" x2=\"" << xp << "\" y2=\""
            << top + plot_h + 4 << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << left - 4 << "\" y1=\"" << yp << "\" x2=\"" << left << "\" y2=\""
            << yp << "\" stroke=\"black\"/>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << top + plot_h / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 14 "
        << top + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : series[i].points) {
            out << fmt(sx(x)) << ',' << fmt(sy(y)) << ' ';
        }
        out << "\"/>\n";
        for (auto [x, y] : series[i].points) {
            out << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        const double ly = top + 14.0 * static_cast<double>(i);
        out << "<rect x=\"" << left + plot_w + 10 << "\" y=\"" << ly << "\" width=\"10\" "
            << "height=\"10\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << left + plot_w + 24 << "\" y=\"" << ly + 9
            << "\" font-family=\"sans-serif\" font-size=\"10\">" << series[i].label
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) {
        fail_io("write to '" + path + "' failed");
    }
}

}  // namespace probesizer
