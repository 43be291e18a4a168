#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tablegrid {

/// One word-level row of the OCR engine's 12-column TSV output.
struct OcrWord {
    int page_num = 1;
    int block_num = 0;
    int par_num = 0;
    int line_num = 0;
    int word_num = 0;
    int left = 0;
    int top = 0;
    int width = 0;
    int height = 0;
    double conf = -1.0;
    std::string text;

    double x_mean() const noexcept { return left + width / 2.0; }
    double y_mean() const noexcept { return top + height / 2.0; }

    bool operator==(const OcrWord&) const = default;
};

inline constexpr std::string_view kOcrTsvHeader =
    "level\tpage_num\tblock_num\tpar_num\tline_num\tword_num\tleft\ttop\twidth\theight\tconf\ttext";

/// Parses TSV with the header above. Only level-5 (word) rows with a
/// non-negative confidence become words; other levels are skipped.
/// Throws MalformedRow on schema violations.
std::vector<OcrWord> parse_ocr_tsv(std::string_view content);

/// Header plus one level-5 row per word.
std::string to_ocr_tsv(const std::vector<OcrWord>& words);

/// Keeps words with conf >= threshold and text that is not blank.
std::vector<OcrWord> filter_confidence(const std::vector<OcrWord>& words, double threshold);

}  // namespace tablegrid
