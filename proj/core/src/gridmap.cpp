#include "tablegrid/gridmap.hpp"

#include <algorithm>
#include <tuple>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

auto word_key(const OcrWord& w) {
    return std::make_tuple(w.y_mean(), w.x_mean(), w.text, w.left, w.top, w.width, w.height);
}

std::string join_cell(std::vector<const OcrWord*> words, double line_threshold) {
    if (words.empty()) return {};
    std::sort(words.begin(), words.end(),
              [](const OcrWord* a, const OcrWord* b) { return word_key(*a) < word_key(*b); });

    // Bucket into text lines by chained y gaps, then read each line by x.
    std::vector<std::vector<const OcrWord*>> lines{{words.front()}};
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i]->y_mean() - words[i - 1]->y_mean() < line_threshold) {
            lines.back().push_back(words[i]);
        } else {
            lines.push_back({words[i]});
        }
    }
    std::string text;
    for (auto& line : lines) {
        std::stable_sort(line.begin(), line.end(), [](const OcrWord* a, const OcrWord* b) {
            return a->x_mean() < b->x_mean();
        });
        for (const auto* w : line) {
            if (!text.empty()) text += ' ';
            text += w->text;
        }
    }
    return text;
}

}  // namespace

std::vector<RowGroup> cluster_rows(std::vector<CellBox> cells, double line_threshold,
                                   RowMode mode) {
    if (line_threshold <= 0) throw InvalidArgument("gridmap", "line threshold must be positive");
    std::vector<RowGroup> rows;
    if (cells.empty()) return rows;

    std::sort(cells.begin(), cells.end(), [](const CellBox& a, const CellBox& b) {
        return std::make_tuple(a.y_mean(), a.x_mean(), a.y_min, a.x_min, a.source) <
               std::make_tuple(b.y_mean(), b.x_mean(), b.y_min, b.x_min, b.source);
    });
    rows.push_back({cells.front()});
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const double reference =
            mode == RowMode::Chained ? cells[i - 1].y_mean() : rows.back().front().y_mean();
        if (cells[i].y_mean() - reference < line_threshold) {
            rows.back().push_back(cells[i]);
        } else {
            rows.push_back({cells[i]});
        }
    }
    for (auto& row : rows) {
        std::stable_sort(row.begin(), row.end(), [](const CellBox& a, const CellBox& b) {
            return a.x_mean() < b.x_mean();
        });
    }
    return rows;
}

std::pair<int, int> grid_dimensions(const std::vector<RowGroup>& rows) {
    if (rows.empty()) throw InvalidArgument("gridmap", "no rows");
    std::size_t cols = 0;
    for (const auto& r : rows) cols = std::max(cols, r.size());
    return {static_cast<int>(rows.size()), static_cast<int>(cols)};
}

bool center_in_cell(double cx, double cy, const CellBox& box) {
    return cx >= box.x_min && cx < box.x_max && cy >= box.y_min && cy < box.y_max;
}

TableGrid assign_words(const std::vector<RowGroup>& rows, const std::vector<OcrWord>& words,
                       double line_threshold) {
    const auto [n_rows, n_cols] = grid_dimensions(rows);
    TableGrid grid;
    grid.n_rows = n_rows;
    grid.n_cols = n_cols;
    grid.cells.assign(n_rows, std::vector<std::string>(n_cols));
    grid.cell_boxes.assign(n_rows, std::vector<std::optional<CellBox>>(n_cols));

    std::vector<std::vector<std::vector<const OcrWord*>>> bins(
        n_rows, std::vector<std::vector<const OcrWord*>>(n_cols));
    for (int r = 0; r < n_rows; ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) grid.cell_boxes[r][c] = rows[r][c];
    }

    for (const auto& w : words) {
        const double cx = w.x_mean();
        const double cy = w.y_mean();
        const CellBox* best = nullptr;
        int best_r = -1;
        int best_c = -1;
        for (int r = 0; r < n_rows; ++r) {
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                const CellBox& box = rows[r][c];
                if (!center_in_cell(cx, cy, box)) continue;
                // Overlapping candidates resolve to the downstream box.
                if (best == nullptr || std::tie(box.y_min, box.x_min) > std::tie(best->y_min, best->x_min)) {
                    best = &box;
                    best_r = r;
                    best_c = static_cast<int>(c);
                }
            }
        }
        if (best != nullptr) bins[best_r][best_c].push_back(&w);
    }

    for (int r = 0; r < n_rows; ++r) {
        for (int c = 0; c < n_cols; ++c) grid.cells[r][c] = join_cell(bins[r][c], line_threshold);
    }
    return grid;
}

}  // namespace tablegrid
