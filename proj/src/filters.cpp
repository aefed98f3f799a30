#include "despeckle/filters.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace despeckle {

std::string_view to_string(BorderPolicy border) {
    return border == BorderPolicy::Replicate ? "replicate" : "zero";
}

std::string_view to_string(FilterKind kind) {
    return kind == FilterKind::Mean ? "mean" : "median";
}

BorderPolicy parse_border(std::string_view text) {
    if (text == "replicate") return BorderPolicy::Replicate;
    if (text == "zero" || text == "zeropad") return BorderPolicy::ZeroPad;
    throw Error(ErrorKind::InvalidArgument, "unknown border policy: " + std::string(text));
}

FilterKind parse_filter_kind(std::string_view text) {
    if (text == "mean") return FilterKind::Mean;
    if (text == "median") return FilterKind::Median;
    throw Error(ErrorKind::InvalidArgument, "unknown filter kind: " + std::string(text));
}

void WindowSpec::validate_for(int width, int height) const {
    if (size < 1 || size % 2 == 0) {
        throw Error(ErrorKind::InvalidWindow,
                    "window size must be a positive odd integer, got " + std::to_string(size));
    }
    const int limit = 2 * std::min(width, height) - 1;
    if (size > limit) {
        throw Error(ErrorKind::WindowTooLarge,
                    "window size " + std::to_string(size) + " exceeds " + std::to_string(limit) +
                        " for a " + std::to_string(width) + "x" + std::to_string(height) + " image");
    }
}

namespace {

// Image copy with `radius` border samples on every side.
template <typename Sample>
struct Padded {
    int stride;
    std::vector<Sample> data;

    Sample at(int row, int col) const {
        return data[static_cast<std::size_t>(row) * stride + col];
    }
};

template <typename Sample>
Padded<Sample> pad(const Image<Sample>& img, int radius, BorderPolicy border) {
    const int stride = img.width() + 2 * radius;
    const int rows = img.height() + 2 * radius;
    Padded<Sample> p{stride, std::vector<Sample>(static_cast<std::size_t>(stride) * rows)};
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < stride; ++c) {
            p.data[static_cast<std::size_t>(r) * stride + c] =
                sample_with_border(img, r - radius, c - radius, border);
        }
    }
    return p;
}

template <typename Sample, typename Acc, typename Finish>
Image<Sample> box_mean(const Image<Sample>& img, const WindowSpec& window, Acc offset, Finish finish) {
    window.validate_for(img.width(), img.height());
    if (window.size == 1) return img;
    const int radius = window.radius();
    const int size = window.size;
    const Padded<Sample> p = pad(img, radius, window.border);
    const double count = static_cast<double>(size) * size;

    std::vector<Acc> column_sums(p.stride);
    std::vector<Sample> out(img.pixel_count());
    for (int i = 0; i < img.height(); ++i) {
        for (int c = 0; c < p.stride; ++c) {
            Acc s{};
            for (int k = 0; k < size; ++k) s += p.at(i + k, c) - offset;
            column_sums[c] = s;
        }
        for (int j = 0; j < img.width(); ++j) {
            Acc s{};
            for (int l = 0; l < size; ++l) s += column_sums[j + l];
            out[static_cast<std::size_t>(i) * img.width() + j] = finish(s, count);
        }
    }
    return Image<Sample>(img.width(), img.height(), std::move(out));
}

template <typename Sample>
Image<Sample> naive_median(const Image<Sample>& img, const WindowSpec& window) {
    window.validate_for(img.width(), img.height());
    const int radius = window.radius();
    std::vector<Sample> neighbourhood;
    neighbourhood.reserve(static_cast<std::size_t>(window.size) * window.size);
    std::vector<Sample> out;
    out.reserve(img.pixel_count());
    for (int i = 0; i < img.height(); ++i) {
        for (int j = 0; j < img.width(); ++j) {
            neighbourhood.clear();
            for (int k = -radius; k <= radius; ++k) {
                for (int l = -radius; l <= radius; ++l) {
                    neighbourhood.push_back(sample_with_border(img, i + k, j + l, window.border));
                }
            }
            std::sort(neighbourhood.begin(), neighbourhood.end());
            out.push_back(neighbourhood[(neighbourhood.size() - 1) / 2]);
        }
    }
    return Image<Sample>(img.width(), img.height(), std::move(out));
}

}  // namespace

ByteImage mean_filter(const ByteImage& img, const WindowSpec& window) {
    return box_mean<std::uint8_t, std::int64_t>(
        img, window, 0, [](std::int64_t s, double n) { return to_byte_sample(s / n); });
}

UnitImage mean_filter(const UnitImage& img, const WindowSpec& window) {
    // Summing deviations from one sample keeps constant images exact.
    const double offset = img.samples().front();
    return box_mean<double, double>(
        img, window, offset, [offset](double s, double n) { return std::clamp(offset + s / n, 0.0, 1.0); });
}

ByteImage median_filter_naive(const ByteImage& img, const WindowSpec& window) {
    return naive_median(img, window);
}

UnitImage median_filter_naive(const UnitImage& img, const WindowSpec& window) {
    return naive_median(img, window);
}

ByteImage median_filter_fast(const ByteImage& img, const WindowSpec& window) {
    window.validate_for(img.width(), img.height());
    const int radius = window.radius();
    const int size = window.size;
    const Padded<std::uint8_t> p = pad(img, radius, window.border);
    // Zero-based rank of the median among size*size samples.
    const int rank = (size * size - 1) / 2;

    std::vector<std::uint8_t> out(img.pixel_count());
    std::array<int, 256> hist{};
    for (int i = 0; i < img.height(); ++i) {
        hist.fill(0);
        for (int k = 0; k < size; ++k) {
            const std::uint8_t* src = &p.data[static_cast<std::size_t>(i + k) * p.stride];
            for (int l = 0; l < size; ++l) ++hist[src[l]];
        }

        // Invariant: below == number of window samples strictly less than median.
        int median = 0;
        int below = 0;
        while (below + hist[median] <= rank) {
            below += hist[median];
            ++median;
        }
        std::uint8_t* dst = &out[static_cast<std::size_t>(i) * img.width()];
        dst[0] = static_cast<std::uint8_t>(median);

        for (int j = 1; j < img.width(); ++j) {
            const int leaving = j - 1;
            const int entering = j + size - 1;
            for (int k = 0; k < size; ++k) {
                const std::uint8_t* src = &p.data[static_cast<std::size_t>(i + k) * p.stride];
                const int old_value = src[leaving];
                const int new_value = src[entering];
                --hist[old_value];
                ++hist[new_value];
                below += (new_value < median) - (old_value < median);
            }
            while (below > rank) {
                --median;
                below -= hist[median];
            }
            while (below + hist[median] <= rank) {
                below += hist[median];
                ++median;
            }
            dst[j] = static_cast<std::uint8_t>(median);
        }
    }
    return ByteImage(img.width(), img.height(), std::move(out));
}

ByteImage apply_filter(FilterKind kind, const ByteImage& img, const WindowSpec& window) {
    return kind == FilterKind::Mean ? mean_filter(img, window) : median_filter_fast(img, window);
}

UnitImage apply_filter(FilterKind kind, const UnitImage& img, const WindowSpec& window) {
    return kind == FilterKind::Mean ? mean_filter(img, window) : median_filter_naive(img, window);
}

}  // namespace despeckle
