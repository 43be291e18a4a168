#include "tablegrid/ocrwords.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <iterator>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

constexpr std::size_t kColumns = 12;

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

int parse_int(std::string_view field, std::size_t line_no, const char* name) {
    int value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw MalformedRow(line_no, std::string("non-numeric ") + name + " '" + std::string(field) + "'");
    }
    return value;
}

double parse_real(std::string_view field, std::size_t line_no, const char* name) {
    double value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw MalformedRow(line_no, std::string("non-numeric ") + name + " '" + std::string(field) + "'");
    }
    return value;
}

std::string format_real(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::vector<OcrWord> parse_ocr_tsv(std::string_view content) {
    std::vector<OcrWord> words;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto eol = content.find('\n', pos);
        if (eol == std::string_view::npos) eol = content.size();
        std::string_view line = content.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        const auto fields = split_tabs(line);
        if (!header_seen) {
            if (fields.size() != kColumns || fields[0] != "level" || fields[11] != "text") {
                throw MalformedRow(line_no, "missing TSV header");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != kColumns) {
            throw MalformedRow(line_no, "expected 12 columns, found " + std::to_string(fields.size()));
        }
        const int level = parse_int(fields[0], line_no, "level");
        OcrWord w;
        w.page_num = parse_int(fields[1], line_no, "page_num");
        w.block_num = parse_int(fields[2], line_no, "block_num");
        w.par_num = parse_int(fields[3], line_no, "par_num");
        w.line_num = parse_int(fields[4], line_no, "line_num");
        w.word_num = parse_int(fields[5], line_no, "word_num");
        w.left = parse_int(fields[6], line_no, "left");
        w.top = parse_int(fields[7], line_no, "top");
        w.width = parse_int(fields[8], line_no, "width");
        w.height = parse_int(fields[9], line_no, "height");
        w.conf = parse_real(fields[10], line_no, "conf");
        w.text = std::string(fields[11]);
        if (level != 5 || w.conf < 0) continue;
        if (w.width <= 0 || w.height <= 0) {
            throw MalformedRow(line_no, "word box must have positive width and height");
        }
        words.push_back(std::move(w));
    }
    if (!header_seen && !content.empty()) throw MalformedRow(1, "missing TSV header");
    return words;
}

std::string to_ocr_tsv(const std::vector<OcrWord>& words) {
    std::string out(kOcrTsvHeader);
    out += '\n';
    for (const auto& w : words) {
        out += "5\t" + std::to_string(w.page_num) + '\t' + std::to_string(w.block_num) + '\t' +
               std::to_string(w.par_num) + '\t' + std::to_string(w.line_num) + '\t' +
               std::to_string(w.word_num) + '\t' + std::to_string(w.left) + '\t' +
               std::to_string(w.top) + '\t' + std::to_string(w.width) + '\t' +
               std::to_string(w.height) + '\t' + format_real(w.conf) + '\t' + w.text + '\n';
    }
    return out;
}

std::vector<OcrWord> filter_confidence(const std::vector<OcrWord>& words, double threshold) {
    if (threshold < 0 || threshold > 100) {
        throw InvalidArgument("ocrwords", "confidence threshold must be in [0, 100]");
    }
    std::vector<OcrWord> kept;
    std::copy_if(words.begin(), words.end(), std::back_inserter(kept), [&](const OcrWord& w) {
        return w.conf >= threshold && !is_blank(w.text);
    });
    return kept;
}

}  // namespace tablegrid
