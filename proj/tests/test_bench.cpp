#include <gtest/gtest.h>

#include <regex>
#include <set>
#include <sstream>
#include <tuple>

#include "despeckle/bench.hpp"
#include "despeckle/metrics.hpp"
#include "despeckle/speckle.hpp"
#include "test_support.hpp"

namespace despeckle {
namespace {

SweepResult result_from_series(const std::vector<double>& levels,
                               const std::vector<std::pair<FilterKind, std::vector<double>>>& series,
                               Metric metric) {
    SweepResult r;
    for (const auto& [kind, values] : series) {
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const double m = metric == Metric::Mse ? values[l] : 0.0;
            const double p = metric == Metric::Psnr ? values[l] : 0.0;
            r.rows.push_back(SweepRow{kind, levels[l], 1, m, p});
        }
    }
    return r;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

const ByteImage& small_scene() {
    static const ByteImage scene = synthetic_scene(64, 64);
    return scene;
}

TEST(DefaultLevels, EighteenIncreasingLevels) {
    const auto levels = paper_levels();
    ASSERT_EQ(levels.size(), 18u);
    EXPECT_EQ(levels.front(), 0.01);
    EXPECT_EQ(levels[9], 0.1);
    EXPECT_EQ(levels.back(), 0.9);
    EXPECT_TRUE(std::is_sorted(levels.begin(), levels.end()));
}

TEST(RunSweep, SingleCellGivesOneRow) {
    SweepConfig config;
    config.levels = {0.1};
    config.filters = {FilterKind::Median};
    config.seeds = {9};
    const SweepResult r = run_sweep(small_scene(), config);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].filter, FilterKind::Median);
    EXPECT_EQ(r.rows[0].variance, 0.1);
    EXPECT_EQ(r.rows[0].seed, 9u);
}

TEST(RunSweep, DefaultConfigCardinalityAndOrder) {
    const SweepResult r = run_sweep(small_scene(), SweepConfig{});
    ASSERT_EQ(r.rows.size(), 180u);
    std::set<std::tuple<int, double, std::uint64_t>> seen;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const SweepRow& row = r.rows[k];
        seen.emplace(static_cast<int>(row.filter), row.variance, row.seed);
        EXPECT_EQ(row.filter, k < 90 ? FilterKind::Mean : FilterKind::Median);
        EXPECT_EQ(row.variance, paper_levels()[(k % 90) / 5]);
        EXPECT_EQ(row.seed, default_seeds()[k % 5]);
        EXPECT_NEAR(row.psnr, psnr_from_mse(row.mse, 255.0), 1e-9);
    }
    EXPECT_EQ(seen.size(), 180u);
}

TEST(RunSweep, RowsMatchManualPipeline) {
    SweepConfig config;
    config.levels = {0.2};
    config.seeds = {4};
    const SweepResult r = run_sweep(small_scene(), config);
    const ByteImage noisy = to_byte(add_speckle(to_unit(small_scene()), {0.2, 4}));
    EXPECT_EQ(r.rows[0].mse, mse(small_scene(), mean_filter(noisy, {3})));
    EXPECT_EQ(r.rows[1].mse, mse(small_scene(), median_filter_naive(noisy, {3})));

    config.reference = Reference::Noisy;
    const SweepResult rn = run_sweep(small_scene(), config);
    EXPECT_EQ(rn.rows[1].mse, mse(noisy, median_filter_naive(noisy, {3})));
}

TEST(RunSweep, DeterministicAndThreadIndependent) {
    SweepConfig config;
    config.levels = {0.01, 0.3, 0.9};
    config.seeds = {1, 2, 3};
    config.threads = 1;
    const SweepResult a = run_sweep(small_scene(), config);
    const SweepResult b = run_sweep(small_scene(), config);
    config.threads = 4;
    const SweepResult c = run_sweep(small_scene(), config);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.rows, c.rows);
}

TEST(RunSweep, RejectsInvalidConfigs) {
    auto kind_for = [](SweepConfig config) {
        try {
            run_sweep(small_scene(), config);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::MissingSeries;  // sentinel: no error
    };
    SweepConfig c;
    c.levels = {};
    EXPECT_EQ(kind_for(c), ErrorKind::InvalidArgument);
    c = {};
    c.levels = {0.2, 0.1};
    EXPECT_EQ(kind_for(c), ErrorKind::InvalidArgument);
    c = {};
    c.levels = {0.5, 1.2};
    EXPECT_EQ(kind_for(c), ErrorKind::InvalidVariance);
    c = {};
    c.filters = {};
    EXPECT_EQ(kind_for(c), ErrorKind::InvalidArgument);
    c = {};
    c.seeds = {1, 1};
    EXPECT_EQ(kind_for(c), ErrorKind::InvalidArgument);
    c = {};
    c.window.size = 4;
    EXPECT_EQ(kind_for(c), ErrorKind::InvalidWindow);
}

TEST(RunSweep, CleanReferenceMseGrowsWithVariance) {
    const SweepResult r = run_sweep(synthetic_scene(512, 512), SweepConfig{});
    const SeriesTable t = aggregate(r, Metric::Mse);
    for (const auto& series : t.values) {
        for (std::size_t l = 1; l < series.size(); ++l) EXPECT_GE(series[l], series[l - 1]);
    }
}

TEST(EmitTable, CsvLayout) {
    const SweepResult r = result_from_series({0.01, 0.02}, {{FilterKind::Mean, {1.0, 2.0}}}, Metric::Mse);
    EXPECT_EQ(emit_table(r, Metric::Mse, TableFormat::Csv), "filter,0.01,0.02\nmean,1.00,2.00\n");
}

TEST(EmitTable, CellsAreSeedAveragedToTwoDecimals) {
    SweepResult r;
    r.rows = {SweepRow{FilterKind::Median, 0.3, 1, 10.0, 0.0}, SweepRow{FilterKind::Median, 0.3, 2, 20.0, 0.0}};
    EXPECT_EQ(emit_table(r, Metric::Mse, TableFormat::Csv), "filter,0.3\nmedian,15.00\n");
}

TEST(EmitTable, InfinitePsnrCell) {
    SweepResult r;
    r.rows = {SweepRow{FilterKind::Mean, 0.1, 1, 0.0, kInfinitePsnr}};
    EXPECT_EQ(emit_table(r, Metric::Psnr, TableFormat::Csv), "filter,0.1\nmean,inf\n");
}

TEST(EmitTable, MarkdownLayout) {
    const std::vector<double> levels{0.1, 0.2, 0.3};
    const SweepResult r = result_from_series(
        levels, {{FilterKind::Mean, {1, 2, 3}}, {FilterKind::Median, {4, 5, 6}}}, Metric::Mse);
    const std::string md = emit_table(r, Metric::Mse, TableFormat::Markdown);
    std::vector<std::string> lines;
    std::istringstream in(md);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    ASSERT_EQ(lines.size(), 2u + 2u);
    for (const auto& line : lines) {
        // |levels| + 1 cells means |levels| + 2 pipes.
        EXPECT_EQ(count(line, "|"), levels.size() + 2) << line;
    }
    EXPECT_EQ(lines[0], "| filter | 0.1 | 0.2 | 0.3 |");
    EXPECT_EQ(lines[3], "| median | 4.00 | 5.00 | 6.00 |");
}

TEST(EmitSweepCsv, LongFormSchema) {
    SweepResult r;
    r.rows = {SweepRow{FilterKind::Mean, 0.05, 3, 123.456789, 27.2159},
              SweepRow{FilterKind::Median, 0.9, 4, 0.0, kInfinitePsnr}};
    EXPECT_EQ(emit_sweep_csv(r),
              "filter,variance,seed,mse,psnr\n"
              "mean,0.05,3,123.457,27.2159\n"
              "median,0.9,4,0,inf\n");
}

TEST(EmitPlot, OnePolylinePerSeriesAndOneVertexPerLevel) {
    const std::vector<double> levels{0.01, 0.05, 0.1, 0.5};
    const SweepResult r = result_from_series(
        levels, {{FilterKind::Mean, {1, 2, 3, 9}}, {FilterKind::Median, {2, 3, 4, 5}}}, Metric::Mse);
    const std::string svg = emit_plot(r, Metric::Mse);
    EXPECT_EQ(count(svg, "<polyline"), 2u);
    const std::regex points_re("points=\"([^\"]*)\"");
    std::size_t series = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), points_re); it != std::sregex_iterator(); ++it) {
        const std::string pts = (*it)[1];
        EXPECT_EQ(count(pts, ",") , levels.size());
        ++series;
    }
    EXPECT_EQ(series, 2u);
    EXPECT_NE(svg.find("mean filter"), std::string::npos);
    EXPECT_NE(svg.find("median filter"), std::string::npos);
    EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(EmitPlot, ByteIdenticalAcrossRenders) {
    const SweepResult r = run_sweep(small_scene(), SweepConfig{});
    EXPECT_EQ(emit_plot(r, Metric::Psnr), emit_plot(r, Metric::Psnr));
    EXPECT_EQ(emit_plot(r, Metric::Mse, {true}), emit_plot(r, Metric::Mse, {true}));
    EXPECT_NE(emit_plot(r, Metric::Mse, {true}), emit_plot(r, Metric::Mse));
}

TEST(EmitPlot, InfiniteValuesStayOnCanvas) {
    SweepResult r;
    r.rows = {SweepRow{FilterKind::Mean, 0.1, 1, 0.0, kInfinitePsnr}, SweepRow{FilterKind::Mean, 0.2, 1, 5.0, 30.0}};
    const std::string svg = emit_plot(r, Metric::Psnr);
    EXPECT_EQ(svg.find("inf"), std::string::npos);
    EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(Crossover, FlipInLastPair) {
    const CrossoverReport c = crossover_from_series({0.1, 0.2, 0.3}, {1, 2, 5}, {2, 3, 4}, Metric::Mse);
    ASSERT_TRUE(c.bracket);
    EXPECT_EQ(*c.bracket, std::make_pair(0.2, 0.3));
    EXPECT_EQ(c.better_below, FilterKind::Mean);
}

TEST(Crossover, NoFlipWhenMeanAlwaysBetter) {
    const CrossoverReport c = crossover_from_series({0.1, 0.2, 0.3}, {1, 2, 3}, {2, 3, 4}, Metric::Mse);
    EXPECT_FALSE(c.bracket);
    EXPECT_EQ(c.better_below, FilterKind::Mean);
}

TEST(Crossover, PsnrPrefersHigherValues) {
    // Mean PSNR higher first, then lower: same flip as for MSE but inverted values.
    const CrossoverReport c = crossover_from_series({0.1, 0.2, 0.3}, {30, 20, 10}, {25, 21, 15}, Metric::Psnr);
    ASSERT_TRUE(c.bracket);
    EXPECT_EQ(*c.bracket, std::make_pair(0.1, 0.2));
    EXPECT_EQ(c.better_below, FilterKind::Mean);
}

TEST(Crossover, TieBetweenOppositeSignsIsNotAdjacentFlip) {
    const CrossoverReport c = crossover_from_series({0.1, 0.2, 0.3}, {1, 3, 5}, {2, 3, 4}, Metric::Mse);
    EXPECT_FALSE(c.bracket);
}

TEST(Crossover, PublishedMseTable) {
    const std::vector<double> levels = paper_levels();
    const std::vector<double> mean{14.79, 18.53, 21.44, 23.89, 25.99, 27.95, 29.70, 31.39, 32.92,
                                   34.32, 45.99, 54.15, 59.93, 62.46, 63.38, 63.61, 63.53, 63.10};
    const std::vector<double> median{25.24, 26.93, 28.29, 29.41, 30.49, 31.48, 32.37, 33.23, 33.95,
                                     34.71, 40.92, 45.59, 49.57, 52.88, 55.74, 58.41, 60.83, 62.86};
    const SweepResult r = result_from_series(levels, {{FilterKind::Mean, mean}, {FilterKind::Median, median}},
                                             Metric::Mse);
    const CrossoverReport c = crossover_analysis(r, Metric::Mse);
    ASSERT_TRUE(c.bracket);
    EXPECT_EQ(*c.bracket, std::make_pair(0.1, 0.2));
}

TEST(Crossover, PublishedPsnrTableHasNoFlip) {
    const std::vector<double> mean{28.65, 26.52, 25.14, 24.11, 23.29, 22.62, 22.04, 21.53, 21.09,
                                   20.69, 18.00, 16.42, 15.34, 14.67, 14.18, 13.80, 13.49, 13.23};
    const std::vector<double> median{24.57, 23.46, 22.60, 21.90, 21.30, 20.78, 20.32, 19.92, 19.55,
                                     19.21, 16.85, 15.39, 14.38, 13.72, 13.25, 12.87, 12.57, 12.30};
    const CrossoverReport c = crossover_from_series(paper_levels(), mean, median, Metric::Psnr);
    EXPECT_FALSE(c.bracket);
    EXPECT_EQ(c.better_below, FilterKind::Mean);
}

TEST(Crossover, MissingSeries) {
    const SweepResult r = result_from_series({0.1}, {{FilterKind::Mean, {1.0}}}, Metric::Mse);
    try {
        crossover_analysis(r, Metric::Mse);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MissingSeries);
    }
}

TEST(Reports, ShareOneAggregation) {
    const SweepResult r = run_sweep(small_scene(), SweepConfig{});
    const SeriesTable t = aggregate(r, Metric::Mse);
    const std::string csv = emit_table(r, Metric::Mse, TableFormat::Csv);
    for (std::size_t f = 0; f < t.filters.size(); ++f) {
        for (double v : t.values[f]) EXPECT_NE(csv.find(format_value(v, "%.2f")), std::string::npos);
    }
    const CrossoverReport c = crossover_analysis(r, Metric::Mse);
    EXPECT_EQ(c.bracket.has_value(),
              crossover_from_series(t.levels, t.series(FilterKind::Mean), t.series(FilterKind::Median),
                                    Metric::Mse).bracket.has_value());
}

TEST(SyntheticScene, Deterministic) {
    EXPECT_EQ(synthetic_scene(96, 80, 3), synthetic_scene(96, 80, 3));
    EXPECT_NE(synthetic_scene(96, 80, 3), synthetic_scene(96, 80, 4));
}

TEST(SyntheticScene, DarkSlicksBelowBackground) {
    const ByteImage scene = synthetic_scene(512, 512);
    const Histogram h = histogram(scene);
    double total = 0.0;
    for (int v = 0; v < 256; ++v) total += static_cast<double>(v) * h.bins[v];
    const double mean = total / static_cast<double>(scene.pixel_count());
    std::uint64_t dark = 0;
    double dark_total = 0.0;
    for (int v = 0; v < 100; ++v) {
        dark += h.bins[v];
        dark_total += static_cast<double>(v) * h.bins[v];
    }
    // Slicks cover a visible fraction of the scene and sit well below the mean.
    EXPECT_GT(dark, scene.pixel_count() / 50);
    EXPECT_LT(dark_total / static_cast<double>(dark), mean - 100.0);
    EXPECT_GT(h.bins[255], 0u);  // point targets
}

TEST(SyntheticScene, RejectsTinyScenes) {
    EXPECT_THROW(synthetic_scene(63, 64), Error);
}

// The mean/median crossover only appears where clipping at full scale
// biases the mean. On flat mid-gray content the mean wins at every level.
TEST(SyntheticScene, MidGrayContentNeverFavoursMedian) {
    const ByteImage flat(128, 128, std::uint8_t{128});
    const SweepResult r = run_sweep(flat, SweepConfig{});
    const CrossoverReport c = crossover_analysis(r, Metric::Mse);
    EXPECT_FALSE(c.bracket);
    EXPECT_EQ(c.better_below, FilterKind::Mean);
}

}  // namespace
}  // namespace despeckle
