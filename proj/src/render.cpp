#include "pairprod/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pairprod {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;
constexpr int kMarginLeft = 70, kMarginRight = 20, kMarginTop = 40, kMarginBottom = 50;

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

}  // namespace

std::string render_plot(const std::vector<SpectrumTable>& tables, const PlotStyle& style) {
    if (tables.empty()) throw std::invalid_argument("render_plot: no tables");
    for (const auto& t : tables)
        if (t.empty()) throw std::invalid_argument("render_plot: empty table");

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    double y_min_pos = x_min;
    for (const auto& t : tables) {
        for (const auto& r : t.rows) {
            x_min = std::min(x_min, r.k_parallel);
            x_max = std::max(x_max, r.k_parallel);
            y_min = std::min(y_min, r.f);
            y_max = std::max(y_max, r.f);
            if (r.f > 0.0) y_min_pos = std::min(y_min_pos, r.f);
        }
    }
    if (x_max == x_min) {
        x_min -= 1.0;
        x_max += 1.0;
    }

    // Value -> plot ordinate; log scale floors non-positive f at the bottom.
    double v_lo, v_hi;
    bool log_y = style.log_y;
    if (log_y && !std::isfinite(y_min_pos)) log_y = false;  // nothing positive to show
    if (log_y) {
        v_lo = std::log10(y_min_pos);
        v_hi = std::log10(std::max(y_max, y_min_pos));
        if (v_hi - v_lo < 1.0) v_hi = v_lo + 1.0;
    } else {
        v_lo = y_min;
        v_hi = y_max;
        if (v_hi == v_lo) {
            v_lo -= 1.0;
            v_hi += 1.0;
        }
    }
    auto value_of = [&](double f) {
        if (!log_y) return f;
        return std::log10(std::max(f, std::pow(10.0, v_lo)));
    };

    const double px0 = kMarginLeft, px1 = style.width - kMarginRight;
    const double py0 = style.height - kMarginBottom, py1 = kMarginTop;
    auto sx = [&](double x) { return px0 + (x - x_min) / (x_max - x_min) * (px1 - px0); };
    auto sy = [&](double v) { return py0 + (v - v_lo) / (v_hi - v_lo) * (py1 - py0); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
        << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << " "
        << style.height << "\">\n";
    svg << "<rect width=\"" << style.width << "\" height=\"" << style.height
        << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
        << "\" height=\"" << py0 - py1
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Axis ticks: 5 per axis, labels in %.3g.
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double X = sx(fx);
        svg << "<line x1=\"" << num(X) << "\" y1=\"" << num(py0) << "\" x2=\"" << num(X)
            << "\" y2=\"" << num(py0 + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(X) << "\" y=\"" << num(py0 + 18)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">"
            << sci(fx) << "</text>\n";

        const double v = v_lo + (v_hi - v_lo) * i / 4.0;
        const double fy = log_y ? std::pow(10.0, v) : v;
        const double Y = sy(v);
        svg << "<line x1=\"" << num(px0 - 5) << "\" y1=\"" << num(Y) << "\" x2=\""
            << num(px0) << "\" y2=\"" << num(Y) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(px0 - 8) << "\" y=\"" << num(Y + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">"
            << sci(fy) << "</text>\n";
    }

    svg << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"" << num(style.height - 12)
        << "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">"
        << style.x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << num((py0 + py1) / 2)
        << "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 16 "
        << num((py0 + py1) / 2) << ")\">" << style.y_label
        << (log_y ? " (log)" : "") << "</text>\n";
    if (!style.title.empty())
        svg << "<text x=\"" << num((px0 + px1) / 2) << "\" y=\"24\" "
            << "font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">"
            << style.title << "</text>\n";

    for (std::size_t ti = 0; ti < tables.size(); ++ti) {
        const char* color = kPalette[ti % kPaletteSize];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& r : tables[ti].rows)
            svg << num(sx(r.k_parallel)) << ',' << num(sy(value_of(r.f))) << ' ';
        svg << "\"/>\n";

        const std::string label =
            tables[ti].rows.front().method.empty() ? ("series " + std::to_string(ti + 1))
                                                   : tables[ti].rows.front().method;
        const double ly = py1 + 16.0 + 16.0 * static_cast<double>(ti);
        svg << "<line x1=\"" << num(px1 - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(px1 - 120) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(px1 - 114) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"monospace\" font-size=\"12\">" << label << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void render_plot_to_file(const std::vector<SpectrumTable>& tables, const PlotStyle& style,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << render_plot(tables, style);
}

}  // namespace pairprod
