#include <algorithm>
#include <cmath>
#include <numbers>

#include "despeckle/bench.hpp"
#include "despeckle/speckle.hpp"

namespace despeckle {

namespace {

// Sequential draws from the counter generator.
class SceneRandom {
public:
    explicit SceneRandom(std::uint64_t seed) : seed_(mix64(seed ^ 0x7363656e65ULL)) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * counter_uniform(seed_, index_++); }

private:
    std::uint64_t seed_;
    std::uint64_t index_ = 0;
};

double smoothstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * (3.0 - 2.0 * t);
}

struct Ellipse {
    double cx, cy, semi_major, semi_minor, cos_t, sin_t;
};

constexpr double kClutterLevel = 0.94;
constexpr double kClutterSwing = 0.02;
constexpr double kSlickLevel = 0.25;
constexpr double kEdgeWidth = 3.0;  // pixels
constexpr int kSlickCount = 4;
constexpr int kTargetCount = 10;

}  // namespace

ByteImage synthetic_scene(int width, int height, std::uint64_t seed) {
    if (width < 64 || height < 64) {
        throw Error(ErrorKind::InvalidArgument, "synthetic scene needs at least 64x64 pixels");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    SceneRandom rng(seed);
    const double w = width;
    const double h = height;

    const double phase_x = rng.uniform(0.0, two_pi);
    const double phase_y = rng.uniform(0.0, two_pi);
    const double phase_d = rng.uniform(0.0, two_pi);

    std::vector<Ellipse> slicks;
    for (int k = 0; k < kSlickCount; ++k) {
        const double cx = rng.uniform(0.15, 0.85) * w;
        const double cy = rng.uniform(0.15, 0.85) * h;
        const double a = rng.uniform(0.05, 0.12) * w;
        const double b = rng.uniform(0.03, 0.07) * h;
        const double theta = rng.uniform(0.0, std::numbers::pi);
        slicks.push_back(Ellipse{cx, cy, a, b, std::cos(theta), std::sin(theta)});
    }

    std::vector<double> field(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = kClutterLevel +
                       kClutterSwing * std::sin(two_pi * x / (w / 2.3) + phase_x) *
                           std::cos(two_pi * y / (h / 1.7) + phase_y) +
                       0.4 * kClutterSwing * std::sin(two_pi * (x + y) / (w / 3.1) + phase_d);
            for (const Ellipse& e : slicks) {
                const double dx = x - e.cx;
                const double dy = y - e.cy;
                const double u = (dx * e.cos_t + dy * e.sin_t) / e.semi_major;
                const double q = (-dx * e.sin_t + dy * e.cos_t) / e.semi_minor;
                const double r = std::sqrt(u * u + q * q);
                const double outside = smoothstep((r - 1.0) * e.semi_major / kEdgeWidth + 0.5);
                v = v * outside + kSlickLevel * (1.0 - outside);
            }
            field[static_cast<std::size_t>(y) * width + x] = v;
        }
    }

    // 3x3 saturated point targets (ships, platforms).
    for (int k = 0; k < kTargetCount; ++k) {
        const int cx = static_cast<int>(rng.uniform(0.05, 0.95) * w);
        const int cy = static_cast<int>(rng.uniform(0.05, 0.95) * h);
        for (int y = std::max(cy - 1, 0); y <= std::min(cy + 1, height - 1); ++y) {
            for (int x = std::max(cx - 1, 0); x <= std::min(cx + 1, width - 1); ++x) {
                field[static_cast<std::size_t>(y) * width + x] = 1.0;
            }
        }
    }

    std::vector<std::uint8_t> samples(field.size());
    std::transform(field.begin(), field.end(), samples.begin(),
                   [](double v) { return to_byte_sample(std::clamp(v, 0.0, 1.0) * 255.0); });
    return ByteImage(width, height, std::move(samples));
}

}  // namespace despeckle
