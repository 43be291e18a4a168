#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tablegrid/contours.hpp"
#include "tablegrid/ocrwords.hpp"
#include "tablegrid/raster.hpp"

namespace tablegrid::synth {

// Fixed-advance text metrics used for synthetic word boxes.
inline constexpr int kCharAdvance = 8;
inline constexpr int kWordHeight = 14;
inline constexpr int kPadding = 4;
inline constexpr int kLineAdvance = kWordHeight + kPadding;
inline constexpr double kWordConfidence = 95.0;

/// A bordered grid table. Column c spans col_widths[c] pixels starting at the
/// left edge of its vertical line; the closing line sits inside the last
/// column, so a 1x1 table of width W has an interior of W - 2 * line_width.
struct TableSpec {
    Point origin;
    std::vector<int> col_widths;
    std::vector<int> row_heights;
    int line_width = 2;
    std::vector<std::vector<std::string>> cell_texts;
    std::uint64_t seed = 0;
    int jitter = 0;  ///< max extra vertical offset per word, drawn from `seed`

    int total_width() const;
    int total_height() const;
};

struct RenderOptions {
    std::uint8_t ink = 0;
    std::uint8_t paper = 255;
    bool stroke_text = true;  ///< draw short filler strokes inside word boxes
    /// Linear illumination falloff: row y is scaled by 1 - gradient * y / (H - 1).
    double gradient = 0.0;
};

struct TableTruth {
    CellBox outline;                         ///< outer extent of the drawn lines
    std::vector<std::vector<CellBox>> cells; ///< background interior of each cell
    std::vector<std::vector<std::string>> texts;
    std::vector<OcrWord> words;

    int rows() const { return static_cast<int>(cells.size()); }
    int cols() const { return cells.empty() ? 0 : static_cast<int>(cells.front().size()); }
};

struct GroundTruth {
    std::vector<TableTruth> tables;
    BinaryImage line_mask;
};

struct Rendering {
    GrayImage image;
    GroundTruth truth;
};

/// Throws SpecOverflow when a table leaves the page or text overflows a cell.
Rendering render(const std::vector<TableSpec>& specs, int page_w, int page_h,
                 const RenderOptions& options = {});

/// Level-5 TSV rows for every ground-truth word, confidence kWordConfidence.
std::string emit_ocr_tsv(const GroundTruth& truth);

struct Fixture {
    int page_w = 0;
    int page_h = 0;
    RenderOptions options;
    std::vector<TableSpec> tables;
};

Fixture parse_fixture(std::string_view json_text);
Fixture load_fixture(const std::filesystem::path& path);

/// The two-table page: a 4x5 produce table above a 4x3 course table.
Fixture two_table_fixture();

/// 1 to 4 disjoint tables with random shapes, line widths and short texts.
Fixture random_layout(std::uint64_t seed, int page_w = 1000, int page_h = 800);

}  // namespace tablegrid::synth
