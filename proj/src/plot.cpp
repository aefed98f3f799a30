#include <algorithm>
#include <cmath>
#include <sstream>

#include "despeckle/bench.hpp"

namespace despeckle {

namespace {

struct Axis {
    double lo;
    double hi;
    std::vector<double> ticks;
};

// 1-2-5 tick spacing covering [lo, hi].
Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / magnitude;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0) * magnitude;
    Axis axis{std::floor(lo / step) * step, std::ceil(hi / step) * step, {}};
    for (double t = axis.lo; t <= axis.hi + step * 1e-9; t += step) {
        axis.ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return axis;
}

Axis log_axis(double lo, double hi) {
    Axis axis{std::floor(std::log10(lo)), std::ceil(std::log10(hi)), {}};
    if (axis.hi <= axis.lo) axis.hi = axis.lo + 1.0;
    for (double e = axis.lo; e <= axis.hi; e += 1.0) axis.ticks.push_back(e);
    return axis;
}

std::string num(double v) { return format_value(v, "%.2f"); }

const char* series_colour(FilterKind kind) {
    return kind == FilterKind::Mean ? "#1f77b4" : "#d62728";
}

}  // namespace

std::string emit_plot(const SweepResult& result, Metric metric, const PlotOptions& options) {
    const SeriesTable table = aggregate(result, metric);

    constexpr double left = 70.0, right = 140.0, top = 40.0, bottom = 50.0;
    const double width = options.width;
    const double height = options.height;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double y_min = INFINITY, y_max = -INFINITY;
    for (const auto& series : table.values) {
        for (double v : series) {
            if (std::isfinite(v)) {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
        }
    }
    if (!std::isfinite(y_min)) y_min = y_max = 0.0;
    const Axis y_axis = nice_axis(y_min, y_max);

    const auto [lv_min, lv_max] = std::minmax_element(table.levels.begin(), table.levels.end());
    const Axis x_axis = options.log_x ? log_axis(*lv_min, *lv_max) : nice_axis(*lv_min, *lv_max);

    auto x_of = [&](double level) {
        const double t = options.log_x ? std::log10(level) : level;
        return left + (t - x_axis.lo) / (x_axis.hi - x_axis.lo) * plot_w;
    };
    // Non-finite values (infinite PSNR) are pinned to the plot edges.
    auto y_of = [&](double v) {
        if (std::isnan(v) || v == -INFINITY) v = y_axis.lo;
        if (v == INFINITY) v = y_axis.hi;
        return top + (y_axis.hi - v) / (y_axis.hi - y_axis.lo) * plot_h;
    };

    const std::string label = metric == Metric::Mse ? "MSE" : "PSNR (dB)";
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n"
        << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << label << " of mean and median filters vs speckle variance</text>\n";

    svg << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double t : y_axis.ticks) {
        svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(y_of(t)) << "\" x2=\""
            << num(left + plot_w) << "\" y2=\"" << num(y_of(t)) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(top + plot_h) << "\"/>\n"
        << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(top + plot_h) << "\"/>\n"
        << "</g>\n";

    svg << "<g text-anchor=\"middle\">\n";
    for (double t : x_axis.ticks) {
        const double x = options.log_x ? left + (t - x_axis.lo) / (x_axis.hi - x_axis.lo) * plot_w
                                       : x_of(t);
        const double value = options.log_x ? std::pow(10.0, t) : t;
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(top + plot_h + 18) << "\">"
            << format_value(value, "%g") << "</text>\n";
    }
    svg << "</g>\n<g text-anchor=\"end\">\n";
    for (double t : y_axis.ticks) {
        svg << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y_of(t) + 4) << "\">"
            << format_value(t, "%g") << "</text>\n";
    }
    svg << "</g>\n";
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 10)
        << "\" text-anchor=\"middle\">speckle variance" << (options.log_x ? " (log scale)" : "")
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << num(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num(top + plot_h / 2) << ")\">" << label << "</text>\n";

    for (std::size_t f = 0; f < table.filters.size(); ++f) {
        svg << "<polyline fill=\"none\" stroke=\"" << series_colour(table.filters[f])
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t l = 0; l < table.levels.size(); ++l) {
            svg << (l ? " " : "") << num(x_of(table.levels[l])) << ',' << num(y_of(table.values[f][l]));
        }
        svg << "\"/>\n";
    }

    for (std::size_t f = 0; f < table.filters.size(); ++f) {
        const double y = top + 10 + 20.0 * static_cast<double>(f);
        const double x = left + plot_w + 15;
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 25)
            << "\" y2=\"" << num(y) << "\" stroke=\"" << series_colour(table.filters[f])
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << num(x + 32) << "\" y=\"" << num(y + 4) << "\">"
            << to_string(table.filters[f]) << " filter</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace despeckle
