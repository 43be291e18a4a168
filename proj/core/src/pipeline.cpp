#include "tablegrid/pipeline.hpp"

#include "tablegrid/error.hpp"

namespace tablegrid {

BinaryImage binarize(const GrayImage& gray, const PipelineConfig& cfg,
                     std::optional<int>* threshold_used) {
    if (cfg.binarize == BinarizeMode::Adaptive) {
        return adaptive_gaussian(gray, cfg.adaptive, Polarity::DarkForeground);
    }
    int t = 0;
    if (cfg.otsu_override) {
        t = *cfg.otsu_override;
    } else {
        try {
            t = otsu_threshold(histogram(gray)).threshold;
        } catch (const NoContrast&) {
            // A flat page carries no ink.
            return BinaryImage(gray.width(), gray.height());
        }
    }
    if (threshold_used) *threshold_used = t;
    return apply_threshold(gray, t, Polarity::DarkForeground);
}

Detection detect_tables(const GrayImage& gray, const PipelineConfig& cfg) {
    Detection d;
    d.binary = binarize(gray, cfg, &d.global_threshold);
    d.skeleton = extract_skeleton(d.binary, cfg.skeleton);
    if (d.skeleton.empty()) return d;
    d.contours = find_contours(d.skeleton.combined);
    d.boxes = to_cell_boxes(d.contours, cfg.min_cell_area);
    try {
        d.grouping = group_tables(d.boxes, cfg.containment_slack);
    } catch (const NoTablesFound&) {
        d.grouping = {};
    }
    return d;
}

std::vector<TableGrid> map_tables(const Grouping& grouping, const std::vector<OcrWord>& words,
                                  const PipelineConfig& cfg) {
    std::vector<TableGrid> grids;
    for (const auto& table : grouping.tables) {
        const auto rows = cluster_rows(table.cells, cfg.line_threshold, cfg.row_mode);
        TableGrid grid = assign_words(rows, words, cfg.line_threshold);
        grid.table_id = table.id;
        grid.outline = table.outline;
        grids.push_back(std::move(grid));
    }
    return grids;
}

Provenance make_provenance(const std::string& source, const PipelineConfig& cfg,
                           const Detection& detection) {
    Provenance p;
    p.source = source;
    auto& params = p.parameters;
    params.emplace_back("binarize",
                        std::string(cfg.binarize == BinarizeMode::Adaptive ? "adaptive" : "otsu"));
    if (cfg.binarize == BinarizeMode::Otsu && detection.global_threshold) {
        params.emplace_back("otsu_threshold", std::int64_t{*detection.global_threshold});
    }
    params.emplace_back("block_size", std::int64_t{cfg.adaptive.block_size});
    params.emplace_back("offset_c", cfg.adaptive.offset_c);
    params.emplace_back("kernel_divisor", std::int64_t{cfg.skeleton.divisor});
    params.emplace_back("kernel_length", std::int64_t{detection.skeleton.kernel_length});
    params.emplace_back("open_iterations", std::int64_t{cfg.skeleton.open_iterations});
    params.emplace_back("line_threshold", cfg.line_threshold);
    params.emplace_back("row_mode",
                        std::string(cfg.row_mode == RowMode::Chained ? "chained" : "anchored"));
    params.emplace_back("conf_threshold", cfg.conf_threshold);
    params.emplace_back("min_cell_area", std::int64_t{cfg.min_cell_area});
    params.emplace_back("containment_slack", std::int64_t{cfg.containment_slack});
    return p;
}

}  // namespace tablegrid
