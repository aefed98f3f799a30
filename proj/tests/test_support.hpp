// Shared helpers for the unit and acceptance suites.
#pragma once

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "despeckle/image.hpp"

namespace despeckle::testing {

inline ByteImage random_byte_image(int width, int height, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(0, 255);
    std::vector<std::uint8_t> s(static_cast<std::size_t>(width) * height);
    for (auto& v : s) v = static_cast<std::uint8_t>(dist(rng));
    return ByteImage(width, height, std::move(s));
}

inline UnitImage random_unit_image(int width, int height, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> s(static_cast<std::size_t>(width) * height);
    for (auto& v : s) v = dist(rng);
    return UnitImage(width, height, std::move(s));
}

template <typename Sample>
Image<Sample> mirror_horizontal(const Image<Sample>& img) {
    std::vector<Sample> s;
    s.reserve(img.pixel_count());
    for (int r = 0; r < img.height(); ++r)
        for (int c = img.width() - 1; c >= 0; --c) s.push_back(img(r, c));
    return Image<Sample>(img.width(), img.height(), std::move(s));
}

template <typename Sample>
Image<Sample> mirror_vertical(const Image<Sample>& img) {
    std::vector<Sample> s;
    s.reserve(img.pixel_count());
    for (int r = img.height() - 1; r >= 0; --r)
        for (int c = 0; c < img.width(); ++c) s.push_back(img(r, c));
    return Image<Sample>(img.width(), img.height(), std::move(s));
}

// Average ranks, ties sharing the mean rank.
inline std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = rank;
        i = j + 1;
    }
    return r;
}

// Pearson correlation of the ranks.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("despeckle_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace despeckle::testing
