#include "pjlab/timeseries.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pjlab/numfmt.hpp"

namespace pjlab {

int ColumnTable::find(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

void write_csv(const ColumnTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < table.names.size(); ++i) {
        if (i) out << ',';
        out << table.names[i];
    }
    out << '\n';
    const std::size_t nrows = table.rows();
    for (std::size_t r = 0; r < nrows; ++r) {
        for (std::size_t c = 0; c < table.cols.size(); ++c) {
            if (c) out << ',';
            out << fmt_double(table.cols[c][r]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

ColumnTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    ColumnTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);
    {
        std::istringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) table.names.push_back(name);
    }
    table.cols.assign(table.names.size(), {});
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= table.cols.size())
                throw std::runtime_error("read_csv: row wider than header in " + path);
            table.cols[c].push_back(std::stod(cell));
            ++c;
        }
        if (c != table.cols.size())
            throw std::runtime_error("read_csv: short row in " + path);
    }
    return table;
}

}  // namespace pjlab
