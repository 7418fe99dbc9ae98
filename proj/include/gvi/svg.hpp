#pragma once

#include <string>
#include <vector>

#include "gvi/types.hpp"

namespace gvi {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct AxesSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
};

/// Self-contained SVG line plot; CSVs stay the canonical output, this is a
/// quick look. Throws invalid_input for empty input, io_error on write
/// failure. A single point renders as a marker.
void write_line_svg(const std::string& path, const std::vector<Series>& series,
                    const AxesSpec& axes);

/// Heatmap over a dense grid; values[r*cols+c], row/col labels on the axes.
void write_heatmap_svg(const std::string& path, int rows, int cols,
                       const std::vector<double>& values,
                       const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels, const AxesSpec& axes);

}  // namespace gvi
