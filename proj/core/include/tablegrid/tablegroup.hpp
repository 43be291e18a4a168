#pragma once

#include <string>
#include <vector>

#include "tablegrid/contours.hpp"

namespace tablegrid {

struct TableGroup {
    int id = 0;  ///< 1-based, ordered by outline (y_min, x_min)
    CellBox outline;
    std::vector<CellBox> cells;
};

struct Grouping {
    std::vector<TableGroup> tables;
    std::size_t orphan_cells = 0;  ///< cells contained in no outline
    std::vector<std::string> warnings;
};

/// True iff `inner` lies within `outer` grown by `slack` on every side.
bool containment(const CellBox& inner, const CellBox& outer, int slack);

/// Repeatedly takes the tallest remaining outline (ties: larger area, then
/// smaller y_min, then smaller x_min), claims every cell and outline inside
/// it, and removes them. Outlines that claim no cell form no table.
/// Throws NoTablesFound when no table results.
Grouping group_tables(std::vector<CellBox> outer_boxes, std::vector<CellBox> cell_boxes,
                      int slack = 2);

/// Splits boxes by contour kind and groups them.
Grouping group_tables(const std::vector<CellBox>& boxes, int slack = 2);

}  // namespace tablegrid
