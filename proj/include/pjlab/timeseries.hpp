#pragma once

#include <string>
#include <vector>

namespace pjlab {

// One accepted solver step. H is the boundary value u(0,t) (equal to
// -Simpson(v) by construction), l2vsq = ||u_x||_2^2, intv3 = int v^3
// (needed by the energy identity). eq8_residual is filled in by the
// diagnostics pass, which needs neighbouring records.
struct TimeSeriesRecord {
    double t = 0.0;
    double H = 0.0;
    double l2vsq = 0.0;
    double max_v = 0.0;
    double min_u = 0.0;
    double dt = 0.0;
    double eq8_residual = 0.0;
    double intv3 = 0.0;
};

using TimeSeries = std::vector<TimeSeriesRecord>;

// A named-column table used for CSV output and plotting. The run CSV
// starts with the canonical columns t,H,l2vsq,max_v,min_u,dt,eq8_residual;
// diagnostic columns are appended after them.
struct ColumnTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;

    std::size_t rows() const { return cols.empty() ? 0 : cols[0].size(); }
    int find(const std::string& name) const;
};

void write_csv(const ColumnTable& table, const std::string& path);
ColumnTable read_csv(const std::string& path);

}  // namespace pjlab
