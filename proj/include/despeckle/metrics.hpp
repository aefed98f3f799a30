#pragma once

#include <limits>

#include "despeckle/image.hpp"

namespace despeckle {

/// PSNR of identical images. Serialized as "inf".
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

struct MetricsReport {
    double mse = 0.0;   ///< squared intensity units of the domain
    double psnr = 0.0;  ///< dB, or kInfinitePsnr when mse == 0
    double peak = 0.0;  ///< 255 for Byte, 1 for Unit

    bool psnr_is_infinite() const noexcept { return psnr == kInfinitePsnr; }
};

/// 10 * log10(peak^2 / mse), kInfinitePsnr for mse == 0.
double psnr_from_mse(double mse, double peak);

// Both images must have identical dimensions (DimensionMismatch otherwise).
double mse(const ByteImage& reference, const ByteImage& candidate);
double mse(const UnitImage& reference, const UnitImage& candidate);
double psnr(const ByteImage& reference, const ByteImage& candidate);
double psnr(const UnitImage& reference, const UnitImage& candidate);
MetricsReport metrics_report(const ByteImage& reference, const ByteImage& candidate);
MetricsReport metrics_report(const UnitImage& reference, const UnitImage& candidate);

}  // namespace despeckle
