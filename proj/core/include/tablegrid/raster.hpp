#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tablegrid {

/// 8-bit single-channel raster. Row-major, origin top-left, y grows downward.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return pixels_.empty(); }

    std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }

    bool operator==(const GrayImage&) const = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Two-valued raster. A set bit is foreground.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, bool fill = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
    /// Out-of-bounds reads are background.
    bool get(int x, int y) const noexcept { return contains(x, y) && bits_[index(x, y)] != 0; }
    void set(int x, int y, bool value = true) { bits_[index(x, y)] = value ? 1 : 0; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }
    std::span<std::uint8_t> bits() noexcept { return bits_; }

    std::size_t count() const noexcept;

    bool operator==(const BinaryImage&) const = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

struct Histogram {
    std::array<std::uint64_t, 256> bins{};
    std::uint64_t total = 0;

    double probability(int intensity) const {
        return total == 0 ? 0.0 : static_cast<double>(bins[intensity]) / static_cast<double>(total);
    }
};

/// Decodes binary PGM (P5) or PPM (P6) with maxval 255. Colour pixels are
/// reduced with BT.601 luma, rounded half up.
GrayImage load_image(std::span<const std::uint8_t> bytes);
GrayImage load_image_file(const std::filesystem::path& path);

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

Histogram histogram(const GrayImage& img);

BinaryImage invert(const BinaryImage& img);

/// Foreground becomes `on`, background `off`.
GrayImage to_gray(const BinaryImage& img, std::uint8_t on = 255, std::uint8_t off = 0);

/// Adds `k` background pixels on every side.
BinaryImage pad(const BinaryImage& img, int k);

/// Shifts content by (dx, dy); pixels shifted in from outside are background.
BinaryImage translate(const BinaryImage& img, int dx, int dy);

BinaryImage operator|(const BinaryImage& a, const BinaryImage& b);
BinaryImage operator&(const BinaryImage& a, const BinaryImage& b);

/// True when every foreground pixel of `a` is foreground in `b`.
bool is_subset(const BinaryImage& a, const BinaryImage& b);

}  // namespace tablegrid
