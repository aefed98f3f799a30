#pragma once

#include <cstdint>
#include <vector>

#include "despeckle/image.hpp"

namespace despeckle {

enum class NoiseDistribution { Uniform };

struct NoiseSpec {
    double variance = 0.04;  ///< v in (0, 1]
    std::uint64_t seed = 0;
    NoiseDistribution distribution = NoiseDistribution::Uniform;

    /// Throws InvalidVariance unless 0 < variance <= 1.
    void validate() const;
};

/// Zero-mean multiplicative perturbation, one value per pixel, row-major.
struct NoiseField {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// 64 random bits that depend only on (seed, index).
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index) noexcept {
    constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    return mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) + (index + 1) * kGolden);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
    return static_cast<double>(counter_hash(seed, index) >> 11) * 0x1.0p-53;
}

/// Noise value at a flat pixel index: uniform on [-sqrt(3v), +sqrt(3v)).
/// Does not validate the spec.
double noise_value(const NoiseSpec& spec, std::uint64_t index) noexcept;

NoiseField noise_field(int width, int height, const NoiseSpec& spec);

/// out = clamp(in + n * in, 0, 1) with n drawn from noise_field.
UnitImage add_speckle(const UnitImage& img, const NoiseSpec& spec);

}  // namespace despeckle
