#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tablegrid/binarize.hpp"
#include "tablegrid/contours.hpp"
#include "tablegrid/emit.hpp"
#include "tablegrid/gridmap.hpp"
#include "tablegrid/morphology.hpp"
#include "tablegrid/ocrwords.hpp"
#include "tablegrid/raster.hpp"
#include "tablegrid/tablegroup.hpp"

namespace tablegrid {

enum class BinarizeMode { Adaptive, Otsu };

struct PipelineConfig {
    BinarizeMode binarize = BinarizeMode::Adaptive;
    std::optional<int> otsu_override;  ///< fixed global threshold instead of Otsu's
    AdaptiveParams adaptive;
    SkeletonConfig skeleton;
    std::int64_t min_cell_area = 64;
    int containment_slack = 2;
    double line_threshold = 10.0;
    RowMode row_mode = RowMode::Chained;
    double conf_threshold = 30.0;
};

/// Every intermediate of table detection, kept for debug dumps.
struct Detection {
    BinaryImage binary;  ///< ink as foreground
    std::optional<int> global_threshold;
    Skeleton skeleton;
    std::vector<Contour> contours;
    std::vector<CellBox> boxes;
    Grouping grouping;  ///< empty tables list means "no table"

    bool has_tables() const noexcept { return !grouping.tables.empty(); }
};

BinaryImage binarize(const GrayImage& gray, const PipelineConfig& cfg,
                     std::optional<int>* threshold_used = nullptr);

/// Binarize, extract the line skeleton, trace borders, and group cells.
Detection detect_tables(const GrayImage& gray, const PipelineConfig& cfg);

/// Row clustering and word assignment for every detected table. `words`
/// should already be confidence-filtered.
std::vector<TableGrid> map_tables(const Grouping& grouping, const std::vector<OcrWord>& words,
                                  const PipelineConfig& cfg);

Provenance make_provenance(const std::string& source, const PipelineConfig& cfg,
                           const Detection& detection);

}  // namespace tablegrid
