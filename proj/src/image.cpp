#include "despeckle/image.hpp"

#include <algorithm>
#include <numeric>

namespace despeckle {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::FileNotFound: return "FileNotFound";
        case ErrorKind::MalformedFile: return "MalformedFile";
        case ErrorKind::UnsupportedDepth: return "UnsupportedDepth";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::DomainMismatch: return "DomainMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidVariance: return "InvalidVariance";
        case ErrorKind::InvalidWindow: return "InvalidWindow";
        case ErrorKind::WindowTooLarge: return "WindowTooLarge";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::MissingSeries: return "MissingSeries";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

std::uint64_t Histogram::total() const noexcept {
    return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

std::uint8_t to_byte_sample(double x) {
    return static_cast<std::uint8_t>(std::clamp(round_half_away(x), 0.0, 255.0));
}

ByteImage to_gray(const RgbImage& img) {
    std::vector<std::uint8_t> out;
    out.reserve(img.pixel_count());
    for (const Rgb& p : img.samples()) {
        out.push_back(to_byte_sample(0.299 * p.r + 0.587 * p.g + 0.114 * p.b));
    }
    return ByteImage(img.width(), img.height(), std::move(out));
}

UnitImage to_unit(const ByteImage& img) {
    std::vector<double> out;
    out.reserve(img.pixel_count());
    for (std::uint8_t s : img.samples()) {
        out.push_back(s / 255.0);
    }
    return UnitImage(img.width(), img.height(), std::move(out));
}

ByteImage to_byte(const UnitImage& img) {
    std::vector<std::uint8_t> out;
    out.reserve(img.pixel_count());
    for (double s : img.samples()) {
        out.push_back(to_byte_sample(s * 255.0));
    }
    return ByteImage(img.width(), img.height(), std::move(out));
}

Histogram histogram(const ByteImage& img) {
    Histogram h;
    for (std::uint8_t s : img.samples()) {
        ++h.bins[s];
    }
    return h;
}

}  // namespace despeckle
