#include "despeckle/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "despeckle/metrics.hpp"
#include "despeckle/speckle.hpp"

#ifndef DESPECKLE_VERSION
#define DESPECKLE_VERSION "0.0.0"
#endif

namespace despeckle {

std::string_view to_string(Reference reference) {
    return reference == Reference::Clean ? "clean" : "noisy";
}

std::string_view to_string(Metric metric) {
    return metric == Metric::Mse ? "mse" : "psnr";
}

std::vector<double> paper_levels() {
    std::vector<double> levels;
    for (int k = 1; k <= 9; ++k) levels.push_back(k / 100.0);
    for (int k = 1; k <= 9; ++k) levels.push_back(k / 10.0);
    return levels;
}

std::vector<std::uint64_t> default_seeds() { return {1, 2, 3, 4, 5}; }

std::string format_value(double value, const char* printf_format) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, printf_format, value);
    return buf;
}

namespace {

std::string level_label(double level) { return format_value(level, "%g"); }

}  // namespace

void SweepConfig::validate() const {
    if (levels.empty()) {
        throw Error(ErrorKind::InvalidArgument, "sweep needs at least one noise level");
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (!(levels[k] > 0.0 && levels[k] <= 1.0)) {
            throw Error(ErrorKind::InvalidVariance,
                        "noise level " + level_label(levels[k]) + " outside (0, 1]");
        }
        if (k > 0 && !(levels[k] > levels[k - 1])) {
            throw Error(ErrorKind::InvalidArgument, "noise levels must be strictly increasing");
        }
    }
    if (filters.empty()) {
        throw Error(ErrorKind::InvalidArgument, "sweep needs at least one filter");
    }
    if (std::set<FilterKind>(filters.begin(), filters.end()).size() != filters.size()) {
        throw Error(ErrorKind::InvalidArgument, "duplicate filter in sweep");
    }
    if (seeds.empty()) {
        throw Error(ErrorKind::InvalidArgument, "sweep needs at least one seed");
    }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw Error(ErrorKind::InvalidArgument, "duplicate seed in sweep");
    }
}

std::string SweepConfig::echo() const {
    std::ostringstream out;
    out << "levels=";
    for (std::size_t k = 0; k < levels.size(); ++k) out << (k ? "," : "") << level_label(levels[k]);
    out << " filters=";
    for (std::size_t k = 0; k < filters.size(); ++k) out << (k ? "," : "") << to_string(filters[k]);
    out << " window=" << window.size << " border=" << to_string(window.border) << " seeds=";
    for (std::size_t k = 0; k < seeds.size(); ++k) out << (k ? "," : "") << seeds[k];
    out << " reference=" << to_string(reference);
    return out.str();
}

SweepResult run_sweep(const ByteImage& img, const SweepConfig& config, std::string image_id) {
    config.validate();
    config.window.validate_for(img.width(), img.height());

    const std::size_t n_levels = config.levels.size();
    const std::size_t n_seeds = config.seeds.size();
    const std::size_t n_jobs = n_levels * n_seeds;

    SweepResult result;
    result.meta = SweepMeta{std::move(image_id), config.echo(), DESPECKLE_VERSION};
    result.rows.resize(config.filters.size() * n_jobs);

    const UnitImage clean_unit = to_unit(img);

    // A job is one (level, seed) noise realization scored under every filter.
    // Each job writes only its own row slots, so completion order is irrelevant.
    auto run_job = [&](std::size_t job) {
        const std::size_t li = job / n_seeds;
        const std::size_t si = job % n_seeds;
        const NoiseSpec spec{config.levels[li], config.seeds[si], NoiseDistribution::Uniform};
        const ByteImage noisy = to_byte(add_speckle(clean_unit, spec));
        const ByteImage& reference = config.reference == Reference::Clean ? img : noisy;
        for (std::size_t fi = 0; fi < config.filters.size(); ++fi) {
            const ByteImage filtered = apply_filter(config.filters[fi], noisy, config.window);
            const MetricsReport m = metrics_report(reference, filtered);
            result.rows[fi * n_jobs + job] =
                SweepRow{config.filters[fi], spec.variance, spec.seed, m.mse, m.psnr};
        }
    };

    unsigned workers = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(n_jobs));
    if (workers == 1) {
        for (std::size_t job = 0; job < n_jobs; ++job) run_job(job);
        return result;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t job = next++; job < n_jobs; job = next++) {
                    try {
                        run_job(job);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = n_jobs;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return result;
}

const std::vector<double>& SeriesTable::series(FilterKind kind) const {
    for (std::size_t k = 0; k < filters.size(); ++k) {
        if (filters[k] == kind) return values[k];
    }
    throw Error(ErrorKind::MissingSeries,
                "sweep result has no rows for the " + std::string(to_string(kind)) + " filter");
}

SeriesTable aggregate(const SweepResult& result, Metric metric) {
    SeriesTable table{metric, {}, {}, {}};
    for (const SweepRow& row : result.rows) {
        if (std::find(table.levels.begin(), table.levels.end(), row.variance) == table.levels.end())
            table.levels.push_back(row.variance);
        if (std::find(table.filters.begin(), table.filters.end(), row.filter) == table.filters.end())
            table.filters.push_back(row.filter);
    }
    std::vector<std::vector<double>> sums(table.filters.size(),
                                          std::vector<double>(table.levels.size(), 0.0));
    std::vector<std::vector<int>> counts(table.filters.size(),
                                         std::vector<int>(table.levels.size(), 0));
    for (const SweepRow& row : result.rows) {
        const auto fi = std::find(table.filters.begin(), table.filters.end(), row.filter) -
                        table.filters.begin();
        const auto li = std::find(table.levels.begin(), table.levels.end(), row.variance) -
                        table.levels.begin();
        sums[fi][li] += metric == Metric::Mse ? row.mse : row.psnr;
        ++counts[fi][li];
    }
    table.values = sums;
    for (std::size_t f = 0; f < sums.size(); ++f) {
        for (std::size_t l = 0; l < sums[f].size(); ++l) {
            table.values[f][l] = counts[f][l] ? sums[f][l] / counts[f][l] : std::nan("");
        }
    }
    return table;
}

std::string emit_sweep_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "filter,variance,seed,mse,psnr\n";
    for (const SweepRow& row : result.rows) {
        out << to_string(row.filter) << ',' << format_value(row.variance, "%.6g") << ','
            << row.seed << ',' << format_value(row.mse, "%.6g") << ','
            << format_value(row.psnr, "%.6g") << '\n';
    }
    return out.str();
}

std::string emit_table(const SweepResult& result, Metric metric, TableFormat format) {
    const SeriesTable table = aggregate(result, metric);
    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "filter";
        for (double level : table.levels) out << ',' << level_label(level);
        out << '\n';
        for (std::size_t f = 0; f < table.filters.size(); ++f) {
            out << to_string(table.filters[f]);
            for (double v : table.values[f]) out << ',' << format_value(v, "%.2f");
            out << '\n';
        }
        return out.str();
    }
    out << "| filter |";
    for (double level : table.levels) out << ' ' << level_label(level) << " |";
    out << "\n|---|";
    for (std::size_t l = 0; l < table.levels.size(); ++l) out << "---:|";
    out << '\n';
    for (std::size_t f = 0; f < table.filters.size(); ++f) {
        out << "| " << to_string(table.filters[f]) << " |";
        for (double v : table.values[f]) out << ' ' << format_value(v, "%.2f") << " |";
        out << '\n';
    }
    return out.str();
}

CrossoverReport crossover_from_series(const std::vector<double>& levels,
                                      const std::vector<double>& mean_values,
                                      const std::vector<double>& median_values, Metric metric) {
    if (mean_values.size() != levels.size() || median_values.size() != levels.size()) {
        throw Error(ErrorKind::InvalidArgument, "series length does not match level count");
    }
    // +1 where the mean filter is better, -1 where the median is, 0 on ties.
    auto advantage = [&](std::size_t k) {
        const double diff = mean_values[k] - median_values[k];
        if (std::isnan(diff) || diff == 0.0) return 0;
        const bool mean_better = metric == Metric::Mse ? diff < 0.0 : diff > 0.0;
        return mean_better ? 1 : -1;
    };
    auto winner = [](int sign) {
        return sign > 0 ? FilterKind::Mean : FilterKind::Median;
    };

    CrossoverReport report{metric, std::nullopt, std::nullopt};
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (advantage(k) != 0) {
            report.better_below = winner(advantage(k));
            break;
        }
    }
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        const int lo = advantage(k);
        const int hi = advantage(k + 1);
        if (lo != 0 && hi != 0 && lo != hi) {
            report.bracket = std::make_pair(levels[k], levels[k + 1]);
            report.better_below = winner(lo);
            break;
        }
    }
    return report;
}

CrossoverReport crossover_analysis(const SweepResult& result, Metric metric) {
    const SeriesTable table = aggregate(result, metric);
    return crossover_from_series(table.levels, table.series(FilterKind::Mean),
                                 table.series(FilterKind::Median), metric);
}

std::string describe(const CrossoverReport& report) {
    std::ostringstream out;
    out << to_string(report.metric) << ": ";
    if (!report.bracket) {
        out << "no crossover";
        if (report.better_below) out << " (" << to_string(*report.better_below) << " better throughout)";
        return out.str();
    }
    const FilterKind below = *report.better_below;
    const FilterKind above = below == FilterKind::Mean ? FilterKind::Median : FilterKind::Mean;
    out << "crossover between " << level_label(report.bracket->first) << " and "
        << level_label(report.bracket->second) << " (" << to_string(below) << " better at "
        << level_label(report.bracket->first) << ", " << to_string(above) << " better at "
        << level_label(report.bracket->second) << ")";
    return out.str();
}

}  // namespace despeckle
