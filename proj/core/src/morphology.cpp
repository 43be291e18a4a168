#include "tablegrid/morphology.hpp"

#include <algorithm>

#include "tablegrid/error.hpp"

namespace tablegrid {

StructuringElement StructuringElement::rectangle(int width, int height) {
    return StructuringElement(width, height,
                              std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 1),
                              width / 2, height / 2);
}

StructuringElement::StructuringElement(int width, int height, std::vector<std::uint8_t> bits,
                                       int anchor_x, int anchor_y)
    : width_(width), height_(height), bits_(std::move(bits)), anchor_x_(anchor_x),
      anchor_y_(anchor_y) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("morphology", "structuring element must be at least 1x1");
    }
    if (bits_.size() != static_cast<std::size_t>(width) * height) {
        throw InvalidArgument("morphology", "structuring element bit count mismatch");
    }
    if (std::none_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; })) {
        throw InvalidArgument("morphology", "structuring element has no set bit");
    }
    if (anchor_x < 0 || anchor_y < 0 || anchor_x >= width || anchor_y >= height) {
        throw InvalidArgument("morphology", "anchor outside structuring element");
    }
}

bool StructuringElement::is_rectangle() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; });
}

StructuringElement StructuringElement::reflected() const {
    std::vector<std::uint8_t> flipped(bits_.rbegin(), bits_.rend());
    return StructuringElement(width_, height_, std::move(flipped), width_ - 1 - anchor_x_,
                              height_ - 1 - anchor_y_);
}

int kernel_length(int image_height, int divisor) {
    if (image_height < 1) throw InvalidArgument("morphology", "image height must be >= 1");
    if (divisor < 1) throw InvalidArgument("morphology", "kernel divisor must be >= 1");
    return std::max(1, image_height / divisor);
}

StructuringElement make_kernel(KernelKind kind, int image_height, int divisor) {
    const int l = kernel_length(image_height, divisor);
    switch (kind) {
        case KernelKind::Vertical:
            return StructuringElement::rectangle(1, l);
        case KernelKind::Horizontal:
            return StructuringElement::rectangle(l, 1);
        case KernelKind::Square3:
            return StructuringElement::rectangle(3, 3);
    }
    throw InvalidArgument("morphology", "unknown kernel kind");
}

namespace {

struct Offset {
    int dx;
    int dy;
};

std::vector<Offset> offsets_of(const StructuringElement& y) {
    std::vector<Offset> out;
    for (int j = 0; j < y.height(); ++j) {
        for (int i = 0; i < y.width(); ++i) {
            if (y.at(i, j)) out.push_back({i - y.anchor_x(), j - y.anchor_y()});
        }
    }
    return out;
}

// One-dimensional pass along rows (horizontal) or columns. Output at p is
// decided by the foreground count over [p + lo, p + hi] clipped to the frame:
// erosion needs the full, unclipped window; dilation needs any hit.
BinaryImage segment_pass(const BinaryImage& x, int lo, int hi, bool horizontal, bool erosion) {
    const int w = x.width();
    const int h = x.height();
    const int lines = horizontal ? h : w;
    const int len = horizontal ? w : h;
    const int span = hi - lo + 1;
    BinaryImage out(w, h);
    std::vector<int> prefix(static_cast<std::size_t>(len) + 1);
    for (int line = 0; line < lines; ++line) {
        prefix[0] = 0;
        for (int p = 0; p < len; ++p) {
            const bool v = horizontal ? x.at(p, line) : x.at(line, p);
            prefix[p + 1] = prefix[p] + (v ? 1 : 0);
        }
        for (int p = 0; p < len; ++p) {
            const int a = p + lo;
            const int b = p + hi;
            bool value;
            if (erosion) {
                value = a >= 0 && b < len && prefix[b + 1] - prefix[a] == span;
            } else {
                const int ca = std::max(a, 0);
                const int cb = std::min(b, len - 1);
                value = ca <= cb && prefix[cb + 1] - prefix[ca] > 0;
            }
            if (value) {
                if (horizontal) {
                    out.set(p, line);
                } else {
                    out.set(line, p);
                }
            }
        }
    }
    return out;
}

}  // namespace

BinaryImage erode(const BinaryImage& x, const StructuringElement& y) {
    if (y.is_rectangle()) {
        const int lo_x = -y.anchor_x();
        const int lo_y = -y.anchor_y();
        BinaryImage rows = segment_pass(x, lo_x, lo_x + y.width() - 1, true, true);
        return segment_pass(rows, lo_y, lo_y + y.height() - 1, false, true);
    }
    const auto offsets = offsets_of(y);
    BinaryImage out(x.width(), x.height());
    for (int zy = 0; zy < x.height(); ++zy) {
        for (int zx = 0; zx < x.width(); ++zx) {
            const bool fits = std::all_of(offsets.begin(), offsets.end(), [&](const Offset& o) {
                return x.get(zx + o.dx, zy + o.dy);
            });
            if (fits) out.set(zx, zy);
        }
    }
    return out;
}

BinaryImage dilate(const BinaryImage& x, const StructuringElement& y) {
    if (y.is_rectangle()) {
        // Reflected offsets span [-(w - 1 - ax), ax].
        const int hi_x = y.anchor_x();
        const int hi_y = y.anchor_y();
        BinaryImage rows = segment_pass(x, hi_x - y.width() + 1, hi_x, true, false);
        return segment_pass(rows, hi_y - y.height() + 1, hi_y, false, false);
    }
    const auto offsets = offsets_of(y);
    BinaryImage out(x.width(), x.height());
    for (int zy = 0; zy < x.height(); ++zy) {
        for (int zx = 0; zx < x.width(); ++zx) {
            const bool hit = std::any_of(offsets.begin(), offsets.end(), [&](const Offset& o) {
                return x.get(zx - o.dx, zy - o.dy);
            });
            if (hit) out.set(zx, zy);
        }
    }
    return out;
}

BinaryImage open(const BinaryImage& x, const StructuringElement& y, int iterations) {
    if (iterations < 1) throw InvalidArgument("morphology", "iterations must be >= 1");
    BinaryImage out = x;
    for (int i = 0; i < iterations; ++i) out = erode(out, y);
    for (int i = 0; i < iterations; ++i) out = dilate(out, y);
    return out;
}

Skeleton extract_skeleton(const BinaryImage& binary, const SkeletonConfig& cfg) {
    if (cfg.open_iterations < 1) throw InvalidArgument("morphology", "open_iterations must be >= 1");
    Skeleton s;
    s.kernel_length = kernel_length(binary.height(), cfg.divisor);
    s.vertical = open(binary, make_kernel(KernelKind::Vertical, binary.height(), cfg.divisor),
                      cfg.open_iterations);
    s.horizontal = open(binary, make_kernel(KernelKind::Horizontal, binary.height(), cfg.divisor),
                        cfg.open_iterations);
    s.combined = s.vertical | s.horizontal;
    return s;
}

}  // namespace tablegrid
