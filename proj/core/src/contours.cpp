#include "tablegrid/contours.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace tablegrid {

namespace {

// Neighbour directions, clockwise on screen (y grows downward).
constexpr std::array<Point, 8> kDirs = {{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1},
}};

int direction_of(Point from, Point to) {
    const Point d{to.x - from.x, to.y - from.y};
    for (int k = 0; k < 8; ++k) {
        if (kDirs[k] == d) return k;
    }
    return 0;
}

// Label raster with a one-pixel zero frame. Values follow the algorithm:
// 0 background, 1 unvisited foreground, +/-NBD border marks.
class LabelGrid {
public:
    explicit LabelGrid(const BinaryImage& img)
        : w_(img.width() + 2), h_(img.height() + 2), f_(static_cast<std::size_t>(w_) * h_, 0) {
        for (int y = 0; y < img.height(); ++y) {
            for (int x = 0; x < img.width(); ++x) {
                if (img.at(x, y)) at({x + 1, y + 1}) = 1;
            }
        }
    }

    int width() const noexcept { return w_; }
    int height() const noexcept { return h_; }
    int& at(Point p) { return f_[static_cast<std::size_t>(p.y) * w_ + p.x]; }

private:
    int w_;
    int h_;
    std::vector<int> f_;
};

}  // namespace

std::vector<Contour> find_contours(const BinaryImage& skeleton) {
    LabelGrid f(skeleton);
    std::vector<Contour> contours;
    // Border numbers start at 2; 1 is the frame, which behaves as a hole.
    auto kind_of = [&](int nbd) { return nbd == 1 ? ContourKind::Hole : contours[nbd - 2].kind; };
    auto parent_of = [&](int nbd) -> std::optional<std::size_t> {
        return nbd == 1 ? std::nullopt : contours[nbd - 2].parent;
    };
    auto index_of = [](int nbd) -> std::optional<std::size_t> {
        return nbd == 1 ? std::nullopt : std::optional<std::size_t>(nbd - 2);
    };

    int nbd = 1;
    for (int y = 1; y < f.height() - 1; ++y) {
        int lnbd = 1;
        for (int x = 1; x < f.width() - 1; ++x) {
            const Point start{x, y};
            const int value = f.at(start);
            if (value == 0) continue;

            Point from;
            ContourKind kind;
            if (value == 1 && f.at({x - 1, y}) == 0) {
                kind = ContourKind::Outer;
                from = {x - 1, y};
            } else if (value >= 1 && f.at({x + 1, y}) == 0) {
                kind = ContourKind::Hole;
                from = {x + 1, y};
                if (value > 1) lnbd = value;
            } else {
                if (value != 1) lnbd = std::abs(value);
                continue;
            }

            ++nbd;
            Contour contour;
            contour.kind = kind;
            const bool same_kind = kind_of(lnbd) == kind;
            contour.parent = same_kind ? parent_of(lnbd) : index_of(lnbd);

            // Clockwise search for the first foreground neighbour.
            const int d0 = direction_of(start, from);
            std::optional<Point> first;
            for (int k = 0; k < 8; ++k) {
                const Point d = kDirs[(d0 + k) % 8];
                const Point q{start.x + d.x, start.y + d.y};
                if (f.at(q) != 0) {
                    first = q;
                    break;
                }
            }

            if (!first) {
                f.at(start) = -nbd;
                contour.points.push_back({start.x - 1, start.y - 1});
            } else {
                Point prev = *first;
                Point cur = start;
                while (true) {
                    contour.points.push_back({cur.x - 1, cur.y - 1});
                    // Counter-clockwise search starting just past `prev`.
                    const int dp = direction_of(cur, prev);
                    bool right_examined_zero = false;
                    Point next = cur;
                    for (int k = 1; k <= 8; ++k) {
                        const int dir = ((dp - k) % 8 + 8) % 8;
                        const Point q{cur.x + kDirs[dir].x, cur.y + kDirs[dir].y};
                        if (f.at(q) != 0) {
                            next = q;
                            break;
                        }
                        if (dir == 0) right_examined_zero = true;
                    }
                    if (right_examined_zero) {
                        f.at(cur) = -nbd;
                    } else if (f.at(cur) == 1) {
                        f.at(cur) = nbd;
                    }
                    if (next == start && cur == *first) break;
                    prev = cur;
                    cur = next;
                }
            }
            contours.push_back(std::move(contour));

            const int after = f.at(start);
            if (after != 1) lnbd = std::abs(after);
        }
    }
    return contours;
}

CellBox bounding_box(const Contour& contour, std::size_t source) {
    CellBox box;
    box.x_min = box.x_max = contour.points.front().x;
    box.y_min = box.y_max = contour.points.front().y;
    for (const auto& p : contour.points) {
        box.x_min = std::min(box.x_min, p.x);
        box.x_max = std::max(box.x_max, p.x);
        box.y_min = std::min(box.y_min, p.y);
        box.y_max = std::max(box.y_max, p.y);
    }
    box.kind = contour.kind;
    box.source = source;
    return box;
}

std::vector<CellBox> to_cell_boxes(const std::vector<Contour>& contours, std::int64_t min_area) {
    std::vector<CellBox> boxes;
    for (std::size_t i = 0; i < contours.size(); ++i) {
        if (contours[i].points.empty()) continue;
        CellBox box = bounding_box(contours[i], i);
        if (box.area() >= min_area) boxes.push_back(box);
    }
    return boxes;
}

}  // namespace tablegrid
