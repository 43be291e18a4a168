#include "tablegrid/tablegroup.hpp"

#include <algorithm>
#include <tuple>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

auto position_key(const CellBox& b) {
    return std::make_tuple(b.y_min, b.x_min, b.y_max, b.x_max, b.source);
}

bool position_less(const CellBox& a, const CellBox& b) {
    return position_key(a) < position_key(b);
}

// Tallest first; ties by larger area, then top-most, then left-most.
bool selection_less(const CellBox& a, const CellBox& b) {
    return std::make_tuple(-a.height(), -a.area(), a.y_min, a.x_min, a.y_max, a.x_max, a.source) <
           std::make_tuple(-b.height(), -b.area(), b.y_min, b.x_min, b.y_max, b.x_max, b.source);
}

std::string describe(const CellBox& b) {
    return "(" + std::to_string(b.x_min) + "," + std::to_string(b.y_min) + ")-(" +
           std::to_string(b.x_max) + "," + std::to_string(b.y_max) + ")";
}

}  // namespace

bool containment(const CellBox& inner, const CellBox& outer, int slack) {
    if (slack < 0) throw InvalidArgument("tablegroup", "slack must be non-negative");
    return inner.x_min >= outer.x_min - slack && inner.y_min >= outer.y_min - slack &&
           inner.x_max <= outer.x_max + slack && inner.y_max <= outer.y_max + slack;
}

Grouping group_tables(std::vector<CellBox> outer_boxes, std::vector<CellBox> cell_boxes,
                      int slack) {
    std::sort(outer_boxes.begin(), outer_boxes.end(), selection_less);
    std::sort(cell_boxes.begin(), cell_boxes.end(), position_less);

    Grouping result;
    std::vector<bool> outer_used(outer_boxes.size(), false);
    std::vector<bool> cell_used(cell_boxes.size(), false);

    // outer_boxes is sorted by selection priority, so the next unused entry
    // is always the tallest remaining outline.
    for (std::size_t i = 0; i < outer_boxes.size(); ++i) {
        if (outer_used[i]) continue;
        outer_used[i] = true;
        const CellBox& largest = outer_boxes[i];

        TableGroup group;
        group.outline = largest;
        for (std::size_t c = 0; c < cell_boxes.size(); ++c) {
            if (!cell_used[c] && containment(cell_boxes[c], largest, slack)) {
                cell_used[c] = true;
                group.cells.push_back(cell_boxes[c]);
            }
        }
        std::size_t absorbed = 0;
        for (std::size_t j = i + 1; j < outer_boxes.size(); ++j) {
            if (!outer_used[j] && containment(outer_boxes[j], largest, slack)) {
                outer_used[j] = true;
                ++absorbed;
            }
        }
        if (group.cells.empty()) continue;
        if (absorbed > 0) {
            result.warnings.push_back("table " + describe(largest) + " absorbed " +
                                      std::to_string(absorbed) + " nested outline(s)");
        }
        result.tables.push_back(std::move(group));
    }

    result.orphan_cells =
        static_cast<std::size_t>(std::count(cell_used.begin(), cell_used.end(), false));
    if (result.tables.empty()) throw NoTablesFound();

    std::sort(result.tables.begin(), result.tables.end(),
              [](const TableGroup& a, const TableGroup& b) {
                  return position_less(a.outline, b.outline);
              });
    for (std::size_t k = 0; k < result.tables.size(); ++k) {
        result.tables[k].id = static_cast<int>(k + 1);
    }
    return result;
}

Grouping group_tables(const std::vector<CellBox>& boxes, int slack) {
    std::vector<CellBox> outer;
    std::vector<CellBox> cells;
    for (const auto& b : boxes) {
        (b.kind == ContourKind::Outer ? outer : cells).push_back(b);
    }
    return group_tables(std::move(outer), std::move(cells), slack);
}

}  // namespace tablegrid
