#include "despeckle/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

namespace despeckle {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw Error(ErrorKind::FileNotFound, "no such file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open for reading: " + path.string());
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot open for writing: " + path.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed: " + path.string());
    }
}

// Header/ASCII-payload tokenizer that skips whitespace and '#' comments.
class PgmCursor {
public:
    PgmCursor(const std::string& bytes, std::size_t start) : bytes_(bytes), pos_(start) {}

    std::size_t position() const { return pos_; }

    void skip_separators() {
        while (pos_ < bytes_.size()) {
            const auto c = static_cast<unsigned char>(bytes_[pos_]);
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long next_integer(const char* what) {
        skip_separators();
        if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            throw Error(ErrorKind::MalformedFile, std::string("PGM: expected ") + what);
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                throw Error(ErrorKind::MalformedFile, std::string("PGM: oversized ") + what);
            }
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from a binary payload.
    void consume_single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw Error(ErrorKind::MalformedFile, "PGM: missing separator before payload");
        }
        ++pos_;
    }

private:
    const std::string& bytes_;
    std::size_t pos_;
};

bool has_png_signature(const std::string& bytes) {
    return bytes.size() >= 8 &&
           png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0;
}

struct PngImageGuard {
    png_image* image;
    ~PngImageGuard() { png_image_free(image); }
};

LoadedImage decode_png(const std::string& bytes, const fs::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    PngImageGuard guard{&image};

    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw Error(ErrorKind::MalformedFile,
                    "PNG: " + path.string() + ": " + image.message);
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        throw Error(ErrorKind::UnsupportedDepth, "PNG: 16-bit images are not supported");
    }
    if (image.format & PNG_FORMAT_FLAG_ALPHA) {
        throw Error(ErrorKind::UnsupportedDepth, "PNG: alpha channels are not supported");
    }

    const int width = static_cast<int>(image.width);
    const int height = static_cast<int>(image.height);
    if (image.format & PNG_FORMAT_FLAG_COLOR) {
        image.format = PNG_FORMAT_RGB;
        std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
        if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
            throw Error(ErrorKind::MalformedFile, std::string("PNG: ") + image.message);
        }
        std::vector<Rgb> px(raw.size() / 3);
        for (std::size_t i = 0; i < px.size(); ++i) {
            px[i] = Rgb{raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
        }
        return RgbImage(width, height, std::move(px));
    }
    image.format = PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
        throw Error(ErrorKind::MalformedFile, std::string("PNG: ") + image.message);
    }
    return ByteImage(width, height, std::move(raw));
}

void write_png(const fs::path& path, int width, int height, png_uint_32 format,
               const std::uint8_t* data) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = format;
    PngImageGuard guard{&image};
    if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
        throw Error(ErrorKind::IoError, "PNG: cannot write " + path.string() + ": " + image.message);
    }
}

}  // namespace

std::string encode_pgm(const ByteImage& img, bool binary) {
    std::ostringstream out;
    out << (binary ? "P5" : "P2") << '\n'
        << img.width() << ' ' << img.height() << '\n'
        << 255 << '\n';
    if (binary) {
        const auto s = img.samples();
        out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size()));
        return out.str();
    }
    for (int r = 0; r < img.height(); ++r) {
        const auto row = img.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c != 0) out << ' ';
            out << static_cast<int>(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

ByteImage decode_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw Error(ErrorKind::MalformedFile, "PGM: bad magic number");
    }
    const bool binary = bytes[1] == '5';
    PgmCursor cursor(bytes, 2);
    const long width = cursor.next_integer("width");
    const long height = cursor.next_integer("height");
    const long maxval = cursor.next_integer("maxval");
    if (width <= 0 || height <= 0) {
        throw Error(ErrorKind::MalformedFile, "PGM: dimensions must be positive");
    }
    if (maxval <= 0 || maxval > 65535) {
        throw Error(ErrorKind::MalformedFile, "PGM: maxval out of range");
    }
    if (maxval > 255) {
        throw Error(ErrorKind::UnsupportedDepth, "PGM: 16-bit images are not supported");
    }
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> samples(count);
    if (binary) {
        cursor.consume_single_whitespace();
        const std::size_t start = cursor.position();
        if (bytes.size() - start < count) {
            throw Error(ErrorKind::MalformedFile, "PGM: truncated payload");
        }
        std::memcpy(samples.data(), bytes.data() + start, count);
    } else {
        for (auto& s : samples) {
            const long value = cursor.next_integer("sample");
            if (value > maxval) {
                throw Error(ErrorKind::MalformedFile, "PGM: sample exceeds maxval");
            }
            s = static_cast<std::uint8_t>(value);
        }
    }
    if (binary) {
        for (auto s : samples) {
            if (s > maxval) {
                throw Error(ErrorKind::MalformedFile, "PGM: sample exceeds maxval");
            }
        }
    }
    return ByteImage(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

LoadedImage load_image(const fs::path& path) {
    const std::string bytes = read_file(path);
    if (has_png_signature(bytes)) {
        return decode_png(bytes, path);
    }
    return decode_pgm(bytes);
}

ByteImage load_gray(const fs::path& path) {
    LoadedImage loaded = load_image(path);
    if (auto* rgb = std::get_if<RgbImage>(&loaded)) {
        return to_gray(*rgb);
    }
    return std::get<ByteImage>(std::move(loaded));
}

ImageFormat format_for_path(const fs::path& path) {
    std::string ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".png" ? ImageFormat::Png : ImageFormat::PgmBinary;
}

void save_image(const ByteImage& img, const fs::path& path, ImageFormat format) {
    if (format == ImageFormat::Png) {
        write_png(path, img.width(), img.height(), PNG_FORMAT_GRAY, img.samples().data());
        return;
    }
    write_file(path, encode_pgm(img, format == ImageFormat::PgmBinary));
}

void save_image(const UnitImage& img, const fs::path& path, ImageFormat format) {
    save_image(to_byte(img), path, format);
}

void save_image(const RgbImage& img, const fs::path& path, ImageFormat format) {
    if (format != ImageFormat::Png) {
        throw Error(ErrorKind::InvalidArgument, "RGB images can only be saved as PNG");
    }
    std::vector<std::uint8_t> raw;
    raw.reserve(img.pixel_count() * 3);
    for (const Rgb& p : img.samples()) {
        raw.insert(raw.end(), {p.r, p.g, p.b});
    }
    write_png(path, img.width(), img.height(), PNG_FORMAT_RGB, raw.data());
}

}  // namespace despeckle
