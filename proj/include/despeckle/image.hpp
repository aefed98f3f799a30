/**
 * @file image.hpp
 * @brief Image value types and the pointwise conversions between them.
 *
 * Images are immutable row-major grids. The sample type fixes the value
 * domain: ByteImage holds integers 0..255, UnitImage holds reals in
 * [0, 1]. Operations that only make sense on one domain take that type,
 * so most domain mismatches are rejected at compile time.
 */
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "despeckle/error.hpp"

namespace despeckle {

enum class Domain { Byte, Unit };

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

template <typename Sample>
struct SampleTraits;

template <>
struct SampleTraits<std::uint8_t> {
    static constexpr Domain domain = Domain::Byte;
    static constexpr double peak = 255.0;
    static constexpr bool valid(std::uint8_t) { return true; }
};

template <>
struct SampleTraits<double> {
    static constexpr Domain domain = Domain::Unit;
    static constexpr double peak = 1.0;
    // Rejects NaN as well as out-of-range values.
    static constexpr bool valid(double s) { return s >= 0.0 && s <= 1.0; }
};

template <>
struct SampleTraits<Rgb> {
    static constexpr bool valid(const Rgb&) { return true; }
};

template <typename Sample>
class Image {
public:
    using sample_type = Sample;

    /// Constant image. Throws InvalidArgument for non-positive dimensions
    /// or an out-of-domain fill value.
    Image(int width, int height, Sample fill = Sample{})
        : Image(width, height,
                std::vector<Sample>(checked_area(width, height), fill)) {}

    Image(int width, int height, std::vector<Sample> samples)
        : width_(width), height_(height), samples_(std::move(samples)) {
        if (samples_.size() != checked_area(width, height)) {
            throw Error(ErrorKind::InvalidArgument,
                        "sample count does not match image dimensions");
        }
        for (const Sample& s : samples_) {
            if (!SampleTraits<Sample>::valid(s)) {
                throw Error(ErrorKind::InvalidArgument,
                            "sample outside the image domain");
            }
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return samples_.size(); }

    Sample operator()(int row, int col) const {
        return samples_[static_cast<std::size_t>(row) * width_ + col];
    }

    std::span<const Sample> samples() const noexcept { return samples_; }

    std::span<const Sample> row(int r) const {
        return std::span<const Sample>(samples_).subspan(
            static_cast<std::size_t>(r) * width_, width_);
    }

    bool same_shape(const Image& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    bool operator==(const Image&) const = default;

private:
    static std::size_t checked_area(int width, int height) {
        if (width < 1 || height < 1) {
            throw Error(ErrorKind::InvalidArgument,
                        "image dimensions must be positive");
        }
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_;
    int height_;
    std::vector<Sample> samples_;
};

using ByteImage = Image<std::uint8_t>;
using UnitImage = Image<double>;
using RgbImage = Image<Rgb>;

/// One count per byte intensity level.
struct Histogram {
    std::array<std::uint64_t, 256> bins{};

    std::uint64_t total() const noexcept;
    bool operator==(const Histogram&) const = default;
};

/// Rounds half away from zero. The single rounding rule of the toolkit.
inline double round_half_away(double x) { return std::round(x); }

/// round_half_away then clamp into 0..255.
std::uint8_t to_byte_sample(double x);

/// BT.601 luma, rounded half away from zero.
ByteImage to_gray(const RgbImage& img);

/// s / 255.0 exactly.
UnitImage to_unit(const ByteImage& img);

/// round(s * 255) half away from zero, clamped.
ByteImage to_byte(const UnitImage& img);

Histogram histogram(const ByteImage& img);

}  // namespace despeckle
