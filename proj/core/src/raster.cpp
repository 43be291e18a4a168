#include "tablegrid/raster.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("raster", "image dimensions must be positive");
    }
}

// Cursor over a netpbm header: whitespace and '#' comments separate tokens.
class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void skip_separators() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_number(const std::string& field) {
        skip_separators();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > std::numeric_limits<int>::max()) throw MalformedHeader(field);
            ++pos_;
        }
        if (pos_ == start) throw MalformedHeader(field);
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void consume_single_whitespace(const std::string& field) {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw MalformedHeader(field);
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dimensions(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dimensions(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw InvalidArgument("raster", "pixel count does not match width*height");
    }
}

BinaryImage::BinaryImage(int width, int height, bool fill) : width_(width), height_(height) {
    check_dimensions(width, height);
    bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 fill ? 1 : 0);
}

std::size_t BinaryImage::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    // round(0.299 R + 0.587 G + 0.114 B) in exact integer arithmetic, half up.
    const unsigned weighted = 299u * r + 587u * g + 114u * b;
    return static_cast<std::uint8_t>((weighted + 500u) / 1000u);
}

GrayImage load_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        throw MalformedHeader("magic");
    }
    const bool color = bytes[1] == '6';
    HeaderReader reader(bytes.subspan(2));
    const long width = reader.read_number("width");
    const long height = reader.read_number("height");
    const long maxval = reader.read_number("maxval");
    if (width < 1) throw MalformedHeader("width");
    if (height < 1) throw MalformedHeader("height");
    if (maxval != 255) throw UnsupportedMaxval(maxval);
    reader.consume_single_whitespace("maxval");

    const std::size_t offset = 2 + reader.position();
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t expected = count * (color ? 3 : 1);
    const std::size_t available = bytes.size() - offset;
    if (available < expected) throw TruncatedPixelData(expected, available);

    std::vector<std::uint8_t> pixels(count);
    const auto raster = bytes.subspan(offset, expected);
    if (color) {
        for (std::size_t i = 0; i < count; ++i) {
            pixels[i] = luma(raster[3 * i], raster[3 * i + 1], raster[3 * i + 2]);
        }
    } else {
        std::copy(raster.begin(), raster.end(), pixels.begin());
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

GrayImage load_image_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("raster", "cannot open '" + path.string() + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_image(bytes);
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("raster", "cannot write '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("raster", "write failed for '" + path.string() + "'");
}

Histogram histogram(const GrayImage& img) {
    Histogram h;
    for (auto v : img.pixels()) ++h.bins[v];
    h.total = img.pixels().size();
    return h;
}

BinaryImage invert(const BinaryImage& img) {
    BinaryImage out = img;
    for (auto& b : out.bits()) b ^= 1u;
    return out;
}

GrayImage to_gray(const BinaryImage& img, std::uint8_t on, std::uint8_t off) {
    GrayImage out(img.width(), img.height(), off);
    auto src = img.bits();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i]) dst[i] = on;
    }
    return out;
}

BinaryImage pad(const BinaryImage& img, int k) {
    if (k < 0) throw InvalidArgument("raster", "padding must be non-negative");
    BinaryImage out(img.width() + 2 * k, img.height() + 2 * k);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.at(x, y)) out.set(x + k, y + k);
        }
    }
    return out;
}

BinaryImage translate(const BinaryImage& img, int dx, int dy) {
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.at(x, y) && out.contains(x + dx, y + dy)) out.set(x + dx, y + dy);
        }
    }
    return out;
}

namespace {

template <typename Op>
BinaryImage combine(const BinaryImage& a, const BinaryImage& b, Op op) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw InvalidArgument("raster", "image sizes differ");
    }
    BinaryImage out(a.width(), a.height());
    auto lhs = a.bits();
    auto rhs = b.bits();
    auto dst = out.bits();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = op(lhs[i], rhs[i]);
    return out;
}

}  // namespace

BinaryImage operator|(const BinaryImage& a, const BinaryImage& b) {
    return combine(a, b, [](std::uint8_t l, std::uint8_t r) -> std::uint8_t { return l | r; });
}

BinaryImage operator&(const BinaryImage& a, const BinaryImage& b) {
    return combine(a, b, [](std::uint8_t l, std::uint8_t r) -> std::uint8_t { return l & r; });
}

bool is_subset(const BinaryImage& a, const BinaryImage& b) {
    if (a.width() != b.width() || a.height() != b.height()) return false;
    auto lhs = a.bits();
    auto rhs = b.bits();
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (lhs[i] && !rhs[i]) return false;
    }
    return true;
}

}  // namespace tablegrid
