#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "despeckle/bench.hpp"
#include "despeckle/filters.hpp"
#include "despeckle/image_io.hpp"
#include "despeckle/metrics.hpp"
#include "despeckle/speckle.hpp"

namespace despeckle::cli {

namespace fs = std::filesystem;

namespace {

// Malformed flag values; reported with the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(sep, start);
        parts.push_back(text.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return parts;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    return value;
}

std::vector<double> parse_levels(const std::string& text) {
    if (text == "paper") return paper_levels();
    std::vector<double> levels;
    for (const auto& part : split(text, ',')) levels.push_back(parse_number<double>(part, "level"));
    return levels;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split(text, ',')) seeds.push_back(parse_number<std::uint64_t>(part, "seed"));
    return seeds;
}

std::pair<int, int> parse_extent(const std::string& text) {
    const auto parts = split(text, 'x');
    if (parts.size() != 2) throw UsageError("expected WxH, got '" + text + "'");
    return {parse_number<int>(parts[0], "width"), parse_number<int>(parts[1], "height")};
}

ImageFormat output_format(const std::string& flag, const fs::path& path) {
    if (flag.empty()) return format_for_path(path);
    if (flag == "pgm") return ImageFormat::PgmBinary;
    if (flag == "pgm-ascii") return ImageFormat::PgmAscii;
    if (flag == "png") return ImageFormat::Png;
    throw UsageError("unknown output format: " + flag);
}

WindowSpec window_from_flags(int size, const std::string& border) {
    return WindowSpec{size, parse_border(border)};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

struct BenchFlags {
    std::string in;
    std::string synthetic;
    std::uint64_t scene_seed = kDefaultSceneSeed;
    std::string out_dir;
    std::string levels = "paper";
    std::string seeds = "1,2,3,4,5";
    int window = 3;
    std::string border = "replicate";
    std::string reference = "clean";
    bool tables = false;
    bool plots = false;
    bool crossover = false;
    bool log_x = false;
    unsigned threads = 0;
};

int run_bench(const BenchFlags& flags, std::ostream& out) {
    SweepConfig config;
    config.levels = parse_levels(flags.levels);
    config.seeds = parse_seeds(flags.seeds);
    config.window = window_from_flags(flags.window, flags.border);
    if (flags.reference == "clean") {
        config.reference = Reference::Clean;
    } else if (flags.reference == "noisy") {
        config.reference = Reference::Noisy;
    } else {
        throw UsageError("--reference must be clean or noisy");
    }
    config.threads = flags.threads;

    std::optional<ByteImage> image;
    std::string image_id;
    if (!flags.synthetic.empty()) {
        const auto [w, h] = parse_extent(flags.synthetic);
        image = synthetic_scene(w, h, flags.scene_seed);
        image_id = "synthetic:" + flags.synthetic + ":seed=" + std::to_string(flags.scene_seed);
    } else {
        image = load_gray(flags.in);
        image_id = fs::path(flags.in).filename().string();
    }

    const SweepResult result = run_sweep(*image, config, image_id);

    // Nothing selected means everything.
    const bool all = !flags.tables && !flags.plots && !flags.crossover;
    std::vector<std::pair<std::string, std::string>> artifacts;
    artifacts.emplace_back("sweep.csv", emit_sweep_csv(result));
    if (all || flags.tables) {
        artifacts.emplace_back("table_mse.csv", emit_table(result, Metric::Mse, TableFormat::Csv));
        artifacts.emplace_back("table_mse.md", emit_table(result, Metric::Mse, TableFormat::Markdown));
        artifacts.emplace_back("table_psnr.csv", emit_table(result, Metric::Psnr, TableFormat::Csv));
        artifacts.emplace_back("table_psnr.md", emit_table(result, Metric::Psnr, TableFormat::Markdown));
    }
    if (all || flags.plots) {
        const PlotOptions options{flags.log_x};
        artifacts.emplace_back("plot_mse.svg", emit_plot(result, Metric::Mse, options));
        artifacts.emplace_back("plot_psnr.svg", emit_plot(result, Metric::Psnr, options));
    }
    if (all || flags.crossover) {
        std::string text = "image: " + result.meta.image_id + "\nconfig: " + result.meta.config_echo +
                           "\nversion: " + result.meta.version + "\n";
        text += describe(crossover_analysis(result, Metric::Mse)) + "\n";
        text += describe(crossover_analysis(result, Metric::Psnr)) + "\n";
        artifacts.emplace_back("crossover.txt", text);
    }

    const fs::path dir(flags.out_dir);
    std::vector<fs::path> written;
    try {
        fs::create_directories(dir);
        for (const auto& [name, text] : artifacts) {
            written.push_back(dir / name);
            write_text(written.back(), text);
        }
    } catch (...) {
        std::error_code ignored;
        for (const auto& path : written) fs::remove(path, ignored);
        throw;
    }
    out << "wrote " << artifacts.size() << " files to " << dir.string() << " ("
        << result.rows.size() << " sweep rows)\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Speckle-noise despeckling evaluation toolkit", "despeckle"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // Each subcommand stores its action here; it runs after parsing succeeds.
    std::function<int()> action;

    std::string in, out_path, format;
    auto* gray = app.add_subcommand("gray", "Convert an RGB image to 8-bit gray");
    gray->add_option("--in", in, "Input image (PGM or PNG)")->required();
    gray->add_option("--out", out_path, "Output image")->required();
    gray->add_option("--format", format, "pgm | pgm-ascii | png (default: from extension)");
    gray->callback([&] {
        action = [&] {
            const LoadedImage loaded = load_image(in);
            const ImageFormat fmt = output_format(format, out_path);
            std::visit([&](const auto& img) {
                if constexpr (std::is_same_v<std::decay_t<decltype(img)>, RgbImage>) {
                    save_image(to_gray(img), out_path, fmt);
                } else {
                    save_image(img, out_path, fmt);
                }
            }, loaded);
            return kExitOk;
        };
    });

    double variance = 0.0;
    std::uint64_t seed = 0;
    auto* noise = app.add_subcommand("noise", "Add multiplicative speckle noise");
    noise->add_option("--in", in, "Input image")->required();
    noise->add_option("--out", out_path, "Output image")->required();
    noise->add_option("--variance", variance, "Noise variance in (0, 1]")->required();
    noise->add_option("--seed", seed, "Noise seed");
    noise->add_option("--format", format, "pgm | pgm-ascii | png (default: from extension)");
    noise->callback([&] {
        action = [&] {
            const NoiseSpec spec{variance, seed, NoiseDistribution::Uniform};
            const ByteImage noisy = to_byte(add_speckle(to_unit(load_gray(in)), spec));
            save_image(noisy, out_path, output_format(format, out_path));
            return kExitOk;
        };
    });

    std::string kind, border = "replicate";
    int window = 3;
    auto* filter = app.add_subcommand("filter", "Apply a mean or median filter");
    filter->add_option("--in", in, "Input image")->required();
    filter->add_option("--out", out_path, "Output image")->required();
    filter->add_option("--kind", kind, "mean | median")->required();
    filter->add_option("--window", window, "Odd window side length");
    filter->add_option("--border", border, "replicate | zero");
    filter->add_option("--format", format, "pgm | pgm-ascii | png (default: from extension)");
    filter->callback([&] {
        action = [&] {
            const ByteImage img = load_gray(in);
            const ByteImage result = apply_filter(parse_filter_kind(kind), img,
                                                  window_from_flags(window, border));
            save_image(result, out_path, output_format(format, out_path));
            return kExitOk;
        };
    });

    std::string ref, cand, metrics_format = "text";
    auto* metrics = app.add_subcommand("metrics", "Print MSE and PSNR of a candidate against a reference");
    metrics->add_option("--ref", ref, "Reference image")->required();
    metrics->add_option("--cand", cand, "Candidate image")->required();
    metrics->add_option("--format", metrics_format, "text | csv")
        ->check(CLI::IsMember({"text", "csv"}));
    metrics->callback([&] {
        action = [&] {
            const MetricsReport r = metrics_report(load_gray(ref), load_gray(cand));
            if (metrics_format == "csv") {
                out << "mse,psnr\n"
                    << format_value(r.mse, "%.6g") << ',' << format_value(r.psnr, "%.6g") << '\n';
            } else {
                out << "mse=" << format_value(r.mse, "%.6f")
                    << " psnr=" << format_value(r.psnr, "%.6f") << '\n';
            }
            return kExitOk;
        };
    });

    auto* hist = app.add_subcommand("histogram", "Write the 256-bin intensity histogram as CSV");
    hist->add_option("--in", in, "Input image")->required();
    hist->add_option("--out", out_path, "Output CSV (default: stdout)");
    hist->callback([&] {
        action = [&] {
            const Histogram h = histogram(load_gray(in));
            std::string text = "level,count\n";
            for (std::size_t v = 0; v < h.bins.size(); ++v) {
                text += std::to_string(v) + ',' + std::to_string(h.bins[v]) + '\n';
            }
            if (out_path.empty()) {
                out << text;
            } else {
                write_text(out_path, text);
            }
            return kExitOk;
        };
    });

    int scene_width = 512, scene_height = 512;
    std::uint64_t scene_seed = kDefaultSceneSeed;
    auto* scene = app.add_subcommand("scene", "Render the synthetic SAR-like test scene");
    scene->add_option("--out", out_path, "Output image")->required();
    scene->add_option("--width", scene_width, "Width in pixels (>= 64)");
    scene->add_option("--height", scene_height, "Height in pixels (>= 64)");
    scene->add_option("--seed", scene_seed, "Scene seed");
    scene->add_option("--format", format, "pgm | pgm-ascii | png (default: from extension)");
    scene->callback([&] {
        action = [&] {
            save_image(synthetic_scene(scene_width, scene_height, scene_seed), out_path,
                       output_format(format, out_path));
            return kExitOk;
        };
    });

    BenchFlags bench_flags;
    auto* bench = app.add_subcommand("bench", "Run the noise-level sweep and write tables, plots and crossover");
    auto* bench_in = bench->add_option("--in", bench_flags.in, "Input image");
    auto* bench_syn = bench->add_option("--synthetic", bench_flags.synthetic,
                                        "Use the synthetic scene at WxH instead of --in");
    bench_in->excludes(bench_syn);
    bench->add_option("--scene-seed", bench_flags.scene_seed, "Seed for --synthetic");
    bench->add_option("--out-dir", bench_flags.out_dir, "Artifact directory")->required();
    bench->add_option("--levels", bench_flags.levels, "Comma-separated variances, or 'paper'");
    bench->add_option("--seeds", bench_flags.seeds, "Comma-separated noise seeds");
    bench->add_option("--window", bench_flags.window, "Odd window side length");
    bench->add_option("--border", bench_flags.border, "replicate | zero");
    bench->add_option("--reference", bench_flags.reference, "clean | noisy");
    bench->add_flag("--metric-tables", bench_flags.tables, "Write MSE/PSNR tables");
    bench->add_flag("--plots", bench_flags.plots, "Write SVG plots");
    bench->add_flag("--crossover", bench_flags.crossover, "Write crossover.txt");
    bench->add_flag("--log-x", bench_flags.log_x, "Logarithmic variance axis in plots");
    bench->add_option("--threads", bench_flags.threads, "Worker threads (0 = hardware)");
    bench->callback([&] {
        if (bench_flags.in.empty() && bench_flags.synthetic.empty()) {
            throw CLI::RequiredError("--in or --synthetic");
        }
        action = [&] { return run_bench(bench_flags, out); };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace despeckle::cli
