#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tablegrid/raster.hpp"

namespace tablegrid {

struct Point {
    int x = 0;
    int y = 0;
    bool operator==(const Point&) const = default;
};

enum class ContourKind { Outer, Hole };

struct Contour {
    std::vector<Point> points;  ///< 8-connected, closed (last neighbours first)
    ContourKind kind = ContourKind::Outer;
    std::optional<std::size_t> parent;  ///< index of the enclosing border
};

/// Axis-aligned bounds of a traced border. Bounds are inclusive pixels.
struct CellBox {
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;
    ContourKind kind = ContourKind::Hole;
    std::size_t source = 0;  ///< index of the contour it came from

    double x_mean() const noexcept { return (x_min + x_max) / 2.0; }
    double y_mean() const noexcept { return (y_min + y_max) / 2.0; }
    int width() const noexcept { return x_max - x_min + 1; }
    int height() const noexcept { return y_max - y_min + 1; }
    std::int64_t area() const noexcept {
        return static_cast<std::int64_t>(width()) * static_cast<std::int64_t>(height());
    }

    bool operator==(const CellBox&) const = default;
};

/// Topological border following (Suzuki & Abe) with 8-connected foreground and
/// 4-connected background. Each foreground component yields one outer border
/// and each enclosed background region one hole border, in raster order of
/// their starting pixels.
std::vector<Contour> find_contours(const BinaryImage& skeleton);

CellBox bounding_box(const Contour& contour, std::size_t source);

/// One box per contour whose bounding-box area is at least `min_area`.
std::vector<CellBox> to_cell_boxes(const std::vector<Contour>& contours, std::int64_t min_area);

}  // namespace tablegrid
