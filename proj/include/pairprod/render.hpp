#ifndef PAIRPROD_RENDER_HPP
#define PAIRPROD_RENDER_HPP

#include <string>
#include <vector>

#include "pairprod/spectrum_table.hpp"

namespace pairprod {

struct PlotStyle {
    int width = 880;
    int height = 560;
    bool log_y = false;
    std::string title;
    std::string x_label = "k_parallel";
    std::string y_label = "f";
};

// Deterministic SVG line plot of f vs k_parallel, one polyline per table,
// legend from the method tag of each table's first row. Identical inputs
// produce byte-identical output. Throws std::invalid_argument on empty input.
std::string render_plot(const std::vector<SpectrumTable>& tables, const PlotStyle& style);

void render_plot_to_file(const std::vector<SpectrumTable>& tables, const PlotStyle& style,
                         const std::string& path);

}  // namespace pairprod

#endif
