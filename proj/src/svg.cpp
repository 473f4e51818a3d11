#include "pjlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pjlab/numfmt.hpp"

namespace pjlab {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 20, kTop = 20, kBottom = 50;

const char* kPalette[] = {"#1f6fb4", "#d1495b", "#2e8b57", "#b8860b", "#6a4fb3", "#444444"};

std::string coord(double v) {
    std::ostringstream ss;
    ss.precision(2);
    ss << std::fixed << v;
    return ss.str();
}

// Round tick labels: up to 6 evenly spaced ticks over [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    std::vector<double> out;
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 0.5 * step; v += step) out.push_back(v);
    return out;
}

}  // namespace

std::string svg_line_chart(const ColumnTable& table, const std::vector<std::string>& keys) {
    if (keys.empty()) throw std::invalid_argument("svg_line_chart: no columns selected");
    const int tcol = table.find("t");
    if (tcol < 0) throw std::invalid_argument("svg_line_chart: table has no 't' column");
    std::vector<int> cols;
    for (const auto& key : keys) {
        const int c = table.find(key);
        if (c < 0) throw std::invalid_argument("svg_line_chart: no column named '" + key + "'");
        cols.push_back(c);
    }

    const auto& t = table.cols[tcol];
    double tlo = std::numeric_limits<double>::infinity(), thi = -tlo;
    double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
    for (double v : t) {
        if (!std::isfinite(v)) continue;
        tlo = std::min(tlo, v);
        thi = std::max(thi, v);
    }
    for (int c : cols) {
        for (double v : table.cols[c]) {
            if (!std::isfinite(v)) continue;
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    }
    if (!std::isfinite(tlo) || !std::isfinite(ylo))
        throw std::invalid_argument("svg_line_chart: no finite data to plot");
    if (thi == tlo) thi = tlo + 1.0;
    if (yhi == ylo) {
        yhi += 0.5;
        ylo -= 0.5;
    }
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - tlo) / (thi - tlo) * pw; };
    auto py = [&](double v) { return kTop + (yhi - v) / (yhi - ylo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (double tv : ticks(tlo, thi)) {
        const double x = px(tv);
        svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << coord(x)
            << "\" y2=\"" << coord(kTop + ph + 5) << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << coord(x) << "\" y=\"" << coord(kTop + ph + 18)
            << "\" text-anchor=\"middle\">" << fmt_double(tv) << "</text>\n";
    }
    for (double yv : ticks(ylo, yhi)) {
        const double y = py(yv);
        svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(y) << "\" x2=\""
            << coord(kLeft) << "\" y2=\"" << coord(y) << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(y + 4)
            << "\" text-anchor=\"end\">" << fmt_double(yv) << "</text>\n";
    }
    svg << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 10)
        << "\" text-anchor=\"middle\">t</text>\n";

    for (std::size_t s = 0; s < cols.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const auto& y = table.cols[cols[s]];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool open = false;
        for (std::size_t r = 0; r < t.size(); ++r) {
            if (!std::isfinite(t[r]) || !std::isfinite(y[r])) {
                if (open) {
                    svg << "\"/>\n<polyline fill=\"none\" stroke=\"" << color
                        << "\" stroke-width=\"1.5\" points=\"";
                    open = false;
                }
                continue;
            }
            svg << coord(px(t[r])) << ',' << coord(py(y[r])) << ' ';
            open = true;
        }
        svg << "\"/>\n";
        const double ly = kTop + 16 + 16 * static_cast<double>(s);
        svg << "<rect x=\"" << coord(kLeft + 10) << "\" y=\"" << coord(ly - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << coord(kLeft + 27) << "\" y=\"" << coord(ly + 2) << "\">" << keys[s]
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg_chart(const ColumnTable& table, const std::vector<std::string>& keys,
                     const std::string& path) {
    const std::string svg = svg_line_chart(table, keys);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << svg;
}

}  // namespace pjlab
