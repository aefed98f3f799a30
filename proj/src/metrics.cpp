#include "despeckle/metrics.hpp"

#include <cmath>
#include <string>

namespace despeckle {

namespace {

template <typename Sample>
double squared_error_mean(const Image<Sample>& reference, const Image<Sample>& candidate) {
    if (!reference.same_shape(candidate)) {
        throw Error(ErrorKind::DimensionMismatch,
                    "image sizes differ: " + std::to_string(reference.width()) + "x" +
                        std::to_string(reference.height()) + " vs " +
                        std::to_string(candidate.width()) + "x" +
                        std::to_string(candidate.height()));
    }
    const auto a = reference.samples();
    const auto b = candidate.samples();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.size());
}

template <typename Sample>
MetricsReport report(const Image<Sample>& reference, const Image<Sample>& candidate) {
    constexpr double peak = SampleTraits<Sample>::peak;
    const double error = squared_error_mean(reference, candidate);
    return MetricsReport{error, psnr_from_mse(error, peak), peak};
}

}  // namespace

double psnr_from_mse(double mse, double peak) {
    if (mse == 0.0) {
        return kInfinitePsnr;
    }
    return 10.0 * std::log10(peak * peak / mse);
}

double mse(const ByteImage& reference, const ByteImage& candidate) {
    return squared_error_mean(reference, candidate);
}

double mse(const UnitImage& reference, const UnitImage& candidate) {
    return squared_error_mean(reference, candidate);
}

double psnr(const ByteImage& reference, const ByteImage& candidate) {
    return report(reference, candidate).psnr;
}

double psnr(const UnitImage& reference, const UnitImage& candidate) {
    return report(reference, candidate).psnr;
}

MetricsReport metrics_report(const ByteImage& reference, const ByteImage& candidate) {
    return report(reference, candidate);
}

MetricsReport metrics_report(const UnitImage& reference, const UnitImage& candidate) {
    return report(reference, candidate);
}

}  // namespace despeckle
