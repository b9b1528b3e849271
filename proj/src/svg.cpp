#include "lightfl/svg.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lightfl/csv.hpp"

namespace lightfl::sim {

namespace {

constexpr double kWidth = 860;
constexpr double kHeight = 520;
constexpr double kLeft = 70;
constexpr double kRight = 640;
constexpr double kTop = 40;
constexpr double kBottom = 470;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points; // sweep value, mean
};

double map_x(double v, double lo, double hi) {
    if (hi <= lo) return (kLeft + kRight) / 2;
    return kLeft + (v - lo) / (hi - lo) * (kRight - kLeft);
}

double map_y(double v, double lo, double hi) {
    if (hi <= lo) return (kTop + kBottom) / 2;
    return kBottom - (v - lo) / (hi - lo) * (kBottom - kTop);
}

} // namespace

std::string render_svg(const ExperimentResult& result) {
    std::map<std::string, Series> series;
    std::string sweep_name = "none";
    for (const auto& row : result.rows) {
        if (row.agg.n_feasible == 0) continue;
        std::ostringstream key;
        key << row.metric;
        if (row.device > 0) key << " device " << row.device;
        auto& s = series[key.str()];
        s.label = key.str();
        s.points.emplace_back(row.sweep_value, row.agg.mean);
        sweep_name = row.sweep_name;
    }
    double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
    bool first = true;
    for (auto& [key, s] : series) {
        std::sort(s.points.begin(), s.points.end());
        for (const auto& [x, y] : s.points) {
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                first = false;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    }
    if (y_lo > 0 && y_lo < y_hi * 0.5) y_lo = 0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"20\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << result.experiment << "</text>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << sweep_name
        << "</text>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double fx = x_lo + (x_hi - x_lo) * tick / 4.0;
        const double fy = y_lo + (y_hi - y_lo) * tick / 4.0;
        svg << "<text x=\"" << map_x(fx, x_lo, x_hi) << "\" y=\"" << kBottom + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(fx) << "</text>\n";
        svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << map_y(fy, y_lo, y_hi) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(fy) << "</text>\n";
    }
    int idx = 0;
    for (const auto& [key, s] : series) {
        const char* color = kPalette[idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points)
            svg << map_x(x, x_lo, x_hi) << "," << map_y(y, y_lo, y_hi) << " ";
        svg << "\"/>\n";
        for (const auto& [x, y] : s.points)
            svg << "<circle cx=\"" << map_x(x, x_lo, x_hi) << "\" cy=\"" << map_y(y, y_lo, y_hi)
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << kRight + 12 << "\" y=\"" << kTop + 14 * idx + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const ExperimentResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << render_svg(result);
}

} // namespace lightfl::sim
