#include "despeckle/speckle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace despeckle {

void NoiseSpec::validate() const {
    if (!(variance > 0.0 && variance <= 1.0)) {
        std::ostringstream msg;
        msg << "speckle variance must lie in (0, 1], got " << variance;
        throw Error(ErrorKind::InvalidVariance, msg.str());
    }
    if (distribution != NoiseDistribution::Uniform) {
        throw Error(ErrorKind::InvalidArgument, "unsupported noise distribution");
    }
}

double noise_value(const NoiseSpec& spec, std::uint64_t index) noexcept {
    const double half_width = std::sqrt(3.0 * spec.variance);
    return (2.0 * counter_uniform(spec.seed, index) - 1.0) * half_width;
}

NoiseField noise_field(int width, int height, const NoiseSpec& spec) {
    spec.validate();
    if (width < 1 || height < 1) {
        throw Error(ErrorKind::InvalidArgument, "noise field dimensions must be positive");
    }
    NoiseField field{width, height, {}};
    const auto count = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
    field.values.resize(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        field.values[k] = noise_value(spec, k);
    }
    return field;
}

UnitImage add_speckle(const UnitImage& img, const NoiseSpec& spec) {
    const NoiseField field = noise_field(img.width(), img.height(), spec);
    const auto in = img.samples();
    std::vector<double> out(in.size());
    for (std::size_t k = 0; k < in.size(); ++k) {
        out[k] = std::clamp(in[k] + field.values[k] * in[k], 0.0, 1.0);
    }
    return UnitImage(img.width(), img.height(), std::move(out));
}

}  // namespace despeckle
