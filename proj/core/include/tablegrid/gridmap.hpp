#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tablegrid/contours.hpp"
#include "tablegrid/ocrwords.hpp"

namespace tablegrid {

/// Rectangular text matrix for one detected table. Ragged rows are padded on
/// the right with empty text and no box.
struct TableGrid {
    int table_id = 0;
    CellBox outline;
    int n_rows = 0;
    int n_cols = 0;
    std::vector<std::vector<std::string>> cells;
    std::vector<std::vector<std::optional<CellBox>>> cell_boxes;
};

using RowGroup = std::vector<CellBox>;

enum class RowMode {
    Chained,   ///< compare each cell with the previous one
    Anchored,  ///< compare each cell with the first cell of its row
};

/// Sorts by (y_mean, x_mean) and starts a new row whenever the y_mean gap
/// reaches `line_threshold`. Cells within a row are ordered by x_mean.
std::vector<RowGroup> cluster_rows(std::vector<CellBox> cells, double line_threshold,
                                   RowMode mode = RowMode::Chained);

/// (row count, longest row)
std::pair<int, int> grid_dimensions(const std::vector<RowGroup>& rows);

/// Center-in-box test. A center on a box's min edge counts as inside and one
/// on its max edge does not, so a word sitting on a shared border line goes to
/// the downstream cell.
bool center_in_cell(double cx, double cy, const CellBox& box);

/// Places each word into the cell containing its center. Words in the same
/// cell are ordered by text line (y_mean gaps below `line_threshold` chain),
/// then x_mean, and joined with single spaces.
TableGrid assign_words(const std::vector<RowGroup>& rows, const std::vector<OcrWord>& words,
                       double line_threshold = 10.0);

}  // namespace tablegrid
