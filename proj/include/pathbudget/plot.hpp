#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pathbudget/detail/file.hpp"
#include "pathbudget/detail/format.hpp"
#include "pathbudget/sweep.hpp"

namespace pathbudget {

namespace detail {

inline std::string svg_num(double value) { return format_double(value, 6); }

// smallest "nice" tick (1/2/5 times a power of ten) with at most 5 divisions
inline double nice_tick(double max_value) {
    double scale = 1.0;
    while (true) {
        for (const double base : {1.0, 2.0, 5.0}) {
            const double tick = base * scale;
            if (5.0 * tick >= max_value) return tick;
        }
        scale *= 10.0;
    }
}

}  // namespace detail

// Step plot of n_tilde against rho, one series per eps value, rendered as a
// standalone SVG. Rows must be grouped by eps (the run_sweep/read_sweep_csv
// ordering) with at least two rho points per series.
[[nodiscard]] inline std::string render_sweep_svg(const std::vector<SweepRow>& rows,
                                                  std::string_view title = "driver-path budget") {
    if (rows.empty()) throw std::invalid_argument("render_sweep_svg: no rows");

    struct Series {
        double eps;
        std::vector<const SweepRow*> points;
    };
    std::vector<Series> series;
    for (const SweepRow& row : rows) {
        if (series.empty() || series.back().eps != row.eps) series.push_back({row.eps, {}});
        series.back().points.push_back(&row);
    }
    for (const Series& s : series)
        if (s.points.size() < 2)
            throw std::invalid_argument("render_sweep_svg: a series needs at least 2 rho points");

    std::size_t peak = 1;
    for (const SweepRow& row : rows) peak = std::max(peak, row.n_tilde);
    const double tick = detail::nice_tick(static_cast<double>(peak));
    const double y_top = 5.0 * tick;

    constexpr double width = 860.0, height = 540.0;
    constexpr double left = 64.0, right = 150.0, top = 48.0, bottom = 56.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const auto x_px = [&](double rho) { return left + (rho + 1.0) / 2.0 * plot_w; };
    const auto y_px = [&](double value) { return top + (1.0 - value / y_top) * plot_h; };

    static constexpr std::array<std::string_view, 8> palette = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
        "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" height=\"540\" "
           "viewBox=\"0 0 860 540\">\n";
    svg += "<rect width=\"860\" height=\"540\" fill=\"white\"/>\n";
    svg += "<text x=\"" + detail::svg_num(left + plot_w / 2.0) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           std::string(title) + "</text>\n";

    // gridlines and axis labels
    for (const double rho : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const double x = x_px(rho);
        svg += "<line x1=\"" + detail::svg_num(x) + "\" y1=\"" + detail::svg_num(top) +
               "\" x2=\"" + detail::svg_num(x) + "\" y2=\"" + detail::svg_num(top + plot_h) +
               "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + detail::svg_num(x) + "\" y=\"" +
               detail::svg_num(top + plot_h + 20.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::svg_num(rho) + "</text>\n";
    }
    for (int k = 0; k <= 5; ++k) {
        const double value = tick * k;
        const double y = y_px(value);
        svg += "<line x1=\"" + detail::svg_num(left) + "\" y1=\"" + detail::svg_num(y) +
               "\" x2=\"" + detail::svg_num(left + plot_w) + "\" y2=\"" + detail::svg_num(y) +
               "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + detail::svg_num(left - 8.0) + "\" y=\"" + detail::svg_num(y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::svg_num(value) + "</text>\n";
    }
    svg += "<rect x=\"" + detail::svg_num(left) + "\" y=\"" + detail::svg_num(top) +
           "\" width=\"" + detail::svg_num(plot_w) + "\" height=\"" + detail::svg_num(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::svg_num(left + plot_w / 2.0) + "\" y=\"" +
           detail::svg_num(height - 14.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">rho</text>\n";
    svg += "<text x=\"20\" y=\"" + detail::svg_num(top + plot_h / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 " +
           detail::svg_num(top + plot_h / 2.0) + ")\">n_tilde</text>\n";

    // one step polyline per eps series, value held until the next grid point
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& points = series[s].points;
        std::string path = "M" + detail::svg_num(x_px(points[0]->rho)) + " " +
                           detail::svg_num(y_px(static_cast<double>(points[0]->n_tilde)));
        for (std::size_t k = 1; k < points.size(); ++k) {
            path += " H" + detail::svg_num(x_px(points[k]->rho));
            path += " V" + detail::svg_num(y_px(static_cast<double>(points[k]->n_tilde)));
        }
        svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" +
               std::string(palette[s % palette.size()]) + "\" stroke-width=\"1.5\"/>\n";

        const double legend_y = top + 16.0 + 22.0 * static_cast<double>(s);
        svg += "<line x1=\"" + detail::svg_num(width - right + 12.0) + "\" y1=\"" +
               detail::svg_num(legend_y - 4.0) + "\" x2=\"" +
               detail::svg_num(width - right + 40.0) + "\" y2=\"" +
               detail::svg_num(legend_y - 4.0) + "\" stroke=\"" +
               std::string(palette[s % palette.size()]) + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::svg_num(width - right + 46.0) + "\" y=\"" +
               detail::svg_num(legend_y) +
               "\" font-family=\"sans-serif\" font-size=\"12\">eps = " +
               detail::svg_num(series[s].eps) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

inline void write_sweep_svg(const std::vector<SweepRow>& rows, const std::filesystem::path& target,
                            std::string_view title = "driver-path budget") {
    detail::write_file_atomic(target, render_sweep_svg(rows, title));
}

}  // namespace pathbudget
