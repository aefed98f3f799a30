#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "despeckle/image.hpp"

namespace despeckle {

enum class ImageFormat { PgmAscii, PgmBinary, Png };

/// Single-channel sources load as ByteImage, three-channel PNGs as RgbImage.
using LoadedImage = std::variant<ByteImage, RgbImage>;

/// Reads P2/P5 PGM or 8-bit gray/RGB PNG, sniffing the magic bytes rather
/// than trusting the extension.
LoadedImage load_image(const std::filesystem::path& path);

/// load_image, converting RGB sources to gray.
ByteImage load_gray(const std::filesystem::path& path);

/// Chooses a format from the extension: ".png" is PNG, anything else binary PGM.
ImageFormat format_for_path(const std::filesystem::path& path);

void save_image(const ByteImage& img, const std::filesystem::path& path, ImageFormat format);
void save_image(const UnitImage& img, const std::filesystem::path& path, ImageFormat format);
/// RGB images can only be written as PNG.
void save_image(const RgbImage& img, const std::filesystem::path& path, ImageFormat format);

/// In-memory PGM codec, exposed for golden-byte tests.
std::string encode_pgm(const ByteImage& img, bool binary);
ByteImage decode_pgm(const std::string& bytes);

}  // namespace despeckle
