/**
 * @file filters.hpp
 * @brief Sliding-window mean and median filters.
 *
 * All filters use a square odd-sized window centred on the output pixel.
 * Samples outside the image are resolved by the window's border policy.
 * Byte outputs of the mean filter round half away from zero.
 */
#pragma once

#include <algorithm>
#include <string_view>

#include "despeckle/image.hpp"

namespace despeckle {

enum class BorderPolicy {
    Replicate,  ///< nearest edge pixel
    ZeroPad,    ///< constant 0
};

enum class FilterKind { Mean, Median };

std::string_view to_string(BorderPolicy border);
std::string_view to_string(FilterKind kind);
/// Accepts "replicate" and "zero" (or "zeropad"). Throws InvalidArgument.
BorderPolicy parse_border(std::string_view text);
/// Accepts "mean" and "median". Throws InvalidArgument.
FilterKind parse_filter_kind(std::string_view text);

struct WindowSpec {
    int size = 3;
    BorderPolicy border = BorderPolicy::Replicate;

    int radius() const noexcept { return size / 2; }

    /// InvalidWindow for even or non-positive sizes, WindowTooLarge when
    /// size exceeds 2 * min(width, height) - 1.
    void validate_for(int width, int height) const;
};

template <typename Sample>
Sample sample_with_border(const Image<Sample>& img, int row, int col, BorderPolicy border) {
    const bool inside = row >= 0 && row < img.height() && col >= 0 && col < img.width();
    if (inside) {
        return img(row, col);
    }
    if (border == BorderPolicy::ZeroPad) {
        return Sample{};
    }
    return img(std::clamp(row, 0, img.height() - 1), std::clamp(col, 0, img.width() - 1));
}

ByteImage mean_filter(const ByteImage& img, const WindowSpec& window);
UnitImage mean_filter(const UnitImage& img, const WindowSpec& window);

/// Reference median: gathers and sorts every neighbourhood.
ByteImage median_filter_naive(const ByteImage& img, const WindowSpec& window);
UnitImage median_filter_naive(const UnitImage& img, const WindowSpec& window);

/// Sliding 256-bin histogram median; output is identical to
/// median_filter_naive. Per-pixel cost is O(window size) histogram
/// updates plus a short walk of the tracked median.
ByteImage median_filter_fast(const ByteImage& img, const WindowSpec& window);

/// Mean dispatches to mean_filter, Median to the fast path.
ByteImage apply_filter(FilterKind kind, const ByteImage& img, const WindowSpec& window);
/// Median on real-valued images has no histogram path and uses the naive filter.
UnitImage apply_filter(FilterKind kind, const UnitImage& img, const WindowSpec& window);

}  // namespace despeckle
