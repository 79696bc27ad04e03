#include "hausdorff/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hausdorff::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_csv(const SampledFunction& f, const std::string& path,
               const std::vector<std::string>& coord_names) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open for writing: " + path);
    const Grid& g = f.grid;
    std::vector<std::string> names = coord_names;
    if (names.empty()) {
        names.push_back("coord1");
        if (g.n == 2) names.push_back("coord2");
    }
    if (static_cast<int>(names.size()) != g.n)
        throw UsageError("write_csv: coordinate name count does not match dimension");
    out << names[0];
    if (g.n == 2) out << ',' << names[1];
    out << ",re,im\n";
    for (std::size_t j = 0; j < (g.n == 2 ? g.axes[1].count : 1); ++j) {
        for (std::size_t i = 0; i < g.axes[0].count; ++i) {
            out << format_double(g.axes[0].coord(i));
            if (g.n == 2) out << ',' << format_double(g.axes[1].coord(j));
            const Complex v = f.values[g.index(i, j)];
            out << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
    }
    if (!out) throw UsageError("write failed: " + path);
}

namespace {

Axis axis_from_coords(std::vector<double> vals, const std::string& path) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.size() < 2) throw UsageError("csv grid too small: " + path);
    auto uniform = [&](const std::vector<double>& v) {
        const double h = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (std::abs(v[i] - (v.front() + h * static_cast<double>(i))) >
                1e-6 * std::max(std::abs(h), 1e-300))
                return false;
        return true;
    };
    if (uniform(vals)) return Axis(vals.front(), vals.back(), vals.size());
    bool positive = std::all_of(vals.begin(), vals.end(), [](double v) { return v > 0.0; });
    if (positive) {
        std::vector<double> logs(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) logs[i] = std::log(vals[i]);
        if (uniform(logs)) return Axis(vals.front(), vals.back(), vals.size(), true);
    }
    throw UsageError("csv coordinates are neither uniform nor log-uniform: " + path);
}

std::size_t axis_index(const Axis& ax, double x) {
    const double p = ax.half_line ? (std::log(x) - ax.param_min()) / ax.param_step()
                                  : (x - ax.min) / ax.param_step();
    return static_cast<std::size_t>(std::lround(p));
}

}  // namespace

SampledFunction read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw UsageError("empty csv: " + path);
    const int ncols = 1 + static_cast<int>(std::count(line.begin(), line.end(), ','));
    if (ncols != 3 && ncols != 4) throw UsageError("csv must have 3 or 4 columns: " + path);
    const int n = ncols - 2;

    std::vector<std::array<double, 4>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<double, 4> row{};
        std::stringstream ss(line);
        std::string cell;
        for (int c = 0; c < ncols; ++c) {
            if (!std::getline(ss, cell, ',')) throw UsageError("short csv row in " + path);
            row[static_cast<std::size_t>(c)] = std::stod(cell);
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw UsageError("csv has no data rows: " + path);

    std::vector<double> c0, c1;
    for (const auto& r : rows) {
        c0.push_back(r[0]);
        if (n == 2) c1.push_back(r[1]);
    }
    Grid grid;
    if (n == 1) {
        grid = Grid::line(0, 1, 2);
        grid.axes[0] = axis_from_coords(c0, path);
    } else {
        grid = Grid::plane(axis_from_coords(c0, path), axis_from_coords(c1, path));
    }
    if (rows.size() != grid.size()) throw UsageError("csv does not cover a full grid: " + path);

    SampledFunction f(grid);
    for (const auto& r : rows) {
        const std::size_t i = axis_index(grid.axes[0], r[0]);
        const std::size_t j = n == 2 ? axis_index(grid.axes[1], r[1]) : 0;
        f.values[grid.index(i, j)] =
            Complex(r[static_cast<std::size_t>(n)], r[static_cast<std::size_t>(n) + 1]);
    }
    return f;
}

}  // namespace hausdorff::io
