#pragma once

#include <string>
#include <vector>

#include "pjlab/timeseries.hpp"

namespace pjlab {

// Standalone SVG line chart of the named columns against the table's
// `t` column. Hand-rolled polylines with linear axes; NaN cells break
// the polyline. Throws std::invalid_argument when a key is missing or
// the key list is empty.
std::string svg_line_chart(const ColumnTable& table, const std::vector<std::string>& keys);

void write_svg_chart(const ColumnTable& table, const std::vector<std::string>& keys,
                     const std::string& path);

}  // namespace pjlab
