/**
 * @file bench.hpp
 * @brief Noise-level sweep over mean and median filters and its reports.
 *
 * run_sweep produces one row per (filter, level, seed). Every report
 * (tables, plots, crossover) goes through aggregate(), so they all see the
 * same seed-averaged numbers.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "despeckle/filters.hpp"
#include "despeckle/image.hpp"

namespace despeckle {

enum class Reference { Clean, Noisy };
enum class Metric { Mse, Psnr };
enum class TableFormat { Csv, Markdown };

std::string_view to_string(Reference reference);
std::string_view to_string(Metric metric);

/// 0.01..0.09 step 0.01, then 0.1..0.9 step 0.1.
std::vector<double> paper_levels();
std::vector<std::uint64_t> default_seeds();

struct SweepConfig {
    std::vector<double> levels = paper_levels();
    std::vector<FilterKind> filters{FilterKind::Mean, FilterKind::Median};
    WindowSpec window{};
    std::vector<std::uint64_t> seeds = default_seeds();
    Reference reference = Reference::Clean;
    /// Worker threads for independent cells; 0 picks the hardware default.
    /// Has no effect on the result.
    unsigned threads = 0;

    void validate() const;
    std::string echo() const;
};

struct SweepRow {
    FilterKind filter;
    double variance;
    std::uint64_t seed;
    double mse;
    double psnr;

    bool operator==(const SweepRow&) const = default;
};

struct SweepMeta {
    std::string image_id;
    std::string config_echo;
    std::string version;
};

struct SweepResult {
    /// Ordered by filter, then level, then seed.
    std::vector<SweepRow> rows;
    SweepMeta meta;
};

/// Seed-averaged metric per (filter, level).
struct SeriesTable {
    Metric metric;
    std::vector<double> levels;
    std::vector<FilterKind> filters;
    std::vector<std::vector<double>> values;  ///< [filter][level]

    /// Throws MissingSeries when `kind` has no rows.
    const std::vector<double>& series(FilterKind kind) const;
};

struct CrossoverReport {
    Metric metric;
    /// Adjacent levels (lo, hi) between which the better filter changes.
    std::optional<std::pair<double, double>> bracket;
    /// Better filter at the low end of the sweep (at bracket.first when a
    /// bracket exists). Empty if the two series tie everywhere.
    std::optional<FilterKind> better_below;
};

SweepResult run_sweep(const ByteImage& img, const SweepConfig& config,
                      std::string image_id = "image");

SeriesTable aggregate(const SweepResult& result, Metric metric);

/// Long form: "filter,variance,seed,mse,psnr", 6 significant digits.
std::string emit_sweep_csv(const SweepResult& result);

/// Wide form: one row per filter, one column per level, 2 decimals.
std::string emit_table(const SweepResult& result, Metric metric, TableFormat format);

struct PlotOptions {
    bool log_x = false;
    int width = 800;
    int height = 480;
};

/// Self-contained SVG line chart, one polyline per filter.
std::string emit_plot(const SweepResult& result, Metric metric, const PlotOptions& options = {});

/// First adjacent pair of levels where sign(mean - median) flips.
CrossoverReport crossover_analysis(const SweepResult& result, Metric metric);

/// Same scan on already-averaged series.
CrossoverReport crossover_from_series(const std::vector<double>& levels,
                                      const std::vector<double>& mean_values,
                                      const std::vector<double>& median_values, Metric metric);

std::string describe(const CrossoverReport& report);

/// Formats a metric value: "inf" for infinity, else printf-style.
std::string format_value(double value, const char* printf_format);

inline constexpr std::uint64_t kDefaultSceneSeed = 7;

/// Deterministic SAR-like test scene (>= 64x64): bright textured sea
/// clutter, dark elliptical slicks and a few saturated point targets.
ByteImage synthetic_scene(int width, int height, std::uint64_t seed = kDefaultSceneSeed);

}  // namespace despeckle
