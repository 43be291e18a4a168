#pragma once

#include <cstdint>
#include <vector>

#include "tablegrid/raster.hpp"

namespace tablegrid {

/// Boolean probe grid with an anchor. Bit (i, j) set means offset
/// (i - anchor_x, j - anchor_y) belongs to the element.
class StructuringElement {
public:
    /// All-ones rectangle anchored at (width / 2, height / 2).
    static StructuringElement rectangle(int width, int height);

    StructuringElement(int width, int height, std::vector<std::uint8_t> bits, int anchor_x,
                       int anchor_y);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int anchor_x() const noexcept { return anchor_x_; }
    int anchor_y() const noexcept { return anchor_y_; }
    bool at(int i, int j) const { return bits_[static_cast<std::size_t>(j) * width_ + i] != 0; }
    bool is_rectangle() const noexcept;

    /// Point reflection through the anchor.
    StructuringElement reflected() const;

    bool operator==(const StructuringElement&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
    int anchor_x_;
    int anchor_y_;
};

enum class KernelKind { Vertical, Horizontal, Square3 };

/// Line length l = max(1, image_height / divisor). Vertical is 1 wide and l
/// tall, horizontal l wide and 1 tall.
int kernel_length(int image_height, int divisor);
StructuringElement make_kernel(KernelKind kind, int image_height, int divisor);

/// z survives iff every offset of the element placed at z lands on
/// foreground. Outside the frame is background.
BinaryImage erode(const BinaryImage& x, const StructuringElement& y);

/// z is set iff the reflected element placed at z meets foreground.
/// Outside the frame contributes nothing.
BinaryImage dilate(const BinaryImage& x, const StructuringElement& y);

/// `iterations` erosions followed by `iterations` dilations.
BinaryImage open(const BinaryImage& x, const StructuringElement& y, int iterations);

struct SkeletonConfig {
    int divisor = 80;
    int open_iterations = 3;
};

struct Skeleton {
    BinaryImage vertical;
    BinaryImage horizontal;
    BinaryImage combined;  ///< vertical | horizontal
    int kernel_length = 0;

    bool empty() const noexcept { return combined.count() == 0; }
};

/// Opens `binary` (lines as foreground) with vertical and horizontal line
/// kernels and ORs the two masks.
Skeleton extract_skeleton(const BinaryImage& binary, const SkeletonConfig& cfg);

}  // namespace tablegrid
