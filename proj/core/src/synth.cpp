#include "tablegrid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "tablegrid/error.hpp"

namespace tablegrid::synth {

namespace {

using json = nlohmann::json;

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

// Left edge of each vertical (or horizontal) line; the closing line sits
// inside the last span.
std::vector<int> line_positions(int origin, const std::vector<int>& spans, int line_width) {
    std::vector<int> pos;
    int p = origin;
    for (int s : spans) {
        pos.push_back(p);
        p += s;
    }
    pos.push_back(p - line_width);
    return pos;
}

void validate(const TableSpec& spec) {
    if (spec.col_widths.empty() || spec.row_heights.empty()) {
        throw SpecOverflow("table needs at least one row and one column");
    }
    if (spec.line_width < 1) throw SpecOverflow("line width must be positive");
    auto too_small = [&](const std::vector<int>& spans) {
        for (std::size_t i = 0; i < spans.size(); ++i) {
            const int need = (i + 1 == spans.size() ? 2 : 1) * spec.line_width + 1;
            if (spans[i] < need) return true;
        }
        return false;
    };
    if (too_small(spec.col_widths) || too_small(spec.row_heights)) {
        throw SpecOverflow("cell span smaller than its border lines");
    }
    if (spec.cell_texts.size() != spec.row_heights.size()) {
        throw SpecOverflow("cell_texts row count does not match row_heights");
    }
    for (const auto& row : spec.cell_texts) {
        if (row.size() != spec.col_widths.size()) {
            throw SpecOverflow("cell_texts column count does not match col_widths");
        }
    }
}

void fill_rect(GrayImage& img, BinaryImage* mask, int x0, int y0, int x1, int y1, std::uint8_t v) {
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            img.at(x, y) = v;
            if (mask) mask->set(x, y);
        }
    }
}

// Short strokes per glyph cell; every run stays below 10 px so line-length
// opening removes them.
void draw_glyphs(GrayImage& img, const OcrWord& w, std::uint8_t ink) {
    const int glyphs = w.width / kCharAdvance;
    for (int i = 0; i < glyphs; ++i) {
        const int cx = w.left + i * kCharAdvance;
        fill_rect(img, nullptr, cx + 3, w.top + 3, cx + 4, w.top + 10, ink);
        fill_rect(img, nullptr, cx + 1, w.top + 6, cx + 6, w.top + 7, ink);
    }
}

bool boxes_overlap(const CellBox& a, const CellBox& b, int gap) {
    return !(a.x_max + gap < b.x_min || b.x_max + gap < a.x_min || a.y_max + gap < b.y_min ||
             b.y_max + gap < a.y_min);
}

}  // namespace

int TableSpec::total_width() const {
    return std::accumulate(col_widths.begin(), col_widths.end(), 0);
}

int TableSpec::total_height() const {
    return std::accumulate(row_heights.begin(), row_heights.end(), 0);
}

Rendering render(const std::vector<TableSpec>& specs, int page_w, int page_h,
                 const RenderOptions& options) {
    Rendering out{GrayImage(page_w, page_h, options.paper), {}};
    out.truth.line_mask = BinaryImage(page_w, page_h);

    for (std::size_t t = 0; t < specs.size(); ++t) {
        const TableSpec& spec = specs[t];
        validate(spec);
        TableTruth truth;
        truth.outline.x_min = spec.origin.x;
        truth.outline.y_min = spec.origin.y;
        truth.outline.x_max = spec.origin.x + spec.total_width() - 1;
        truth.outline.y_max = spec.origin.y + spec.total_height() - 1;
        truth.outline.kind = ContourKind::Outer;
        if (truth.outline.x_min < 0 || truth.outline.y_min < 0 || truth.outline.x_max >= page_w ||
            truth.outline.y_max >= page_h) {
            throw SpecOverflow("table " + std::to_string(t) + " exceeds the page");
        }
        for (std::size_t o = 0; o < t; ++o) {
            if (boxes_overlap(truth.outline, out.truth.tables[o].outline, 0)) {
                throw SpecOverflow("tables " + std::to_string(o) + " and " + std::to_string(t) +
                                   " overlap");
            }
        }

        const int lw = spec.line_width;
        const auto xs = line_positions(spec.origin.x, spec.col_widths, lw);
        const auto ys = line_positions(spec.origin.y, spec.row_heights, lw);
        for (int x : xs) {
            fill_rect(out.image, &out.truth.line_mask, x, truth.outline.y_min, x + lw - 1,
                      truth.outline.y_max, options.ink);
        }
        for (int y : ys) {
            fill_rect(out.image, &out.truth.line_mask, truth.outline.x_min, y, truth.outline.x_max,
                      y + lw - 1, options.ink);
        }

        std::mt19937_64 rng(spec.seed);
        std::uniform_int_distribution<int> jitter(0, std::max(0, spec.jitter));
        const std::size_t n_rows = spec.row_heights.size();
        const std::size_t n_cols = spec.col_widths.size();
        truth.texts = spec.cell_texts;
        truth.cells.assign(n_rows, std::vector<CellBox>(n_cols));
        for (std::size_t r = 0; r < n_rows; ++r) {
            for (std::size_t c = 0; c < n_cols; ++c) {
                CellBox& cell = truth.cells[r][c];
                cell.x_min = xs[c] + lw;
                cell.x_max = xs[c + 1] - 1;
                cell.y_min = ys[r] + lw;
                cell.y_max = ys[r + 1] - 1;
                cell.kind = ContourKind::Hole;

                const int right = cell.x_max + 1 - kPadding;
                const int bottom = cell.y_max + 1 - kPadding;
                int x = cell.x_min + kPadding;
                int y = cell.y_min + kPadding;
                int word_num = 0;
                for (const auto& text : split_words(spec.cell_texts[r][c])) {
                    const int width = static_cast<int>(text.size()) * kCharAdvance;
                    if (x + width > right && x != cell.x_min + kPadding) {
                        x = cell.x_min + kPadding;
                        y += kLineAdvance;
                    }
                    const int top = y + (spec.jitter > 0 ? jitter(rng) : 0);
                    if (x + width > right || top + kWordHeight > bottom) {
                        throw SpecOverflow("text '" + spec.cell_texts[r][c] + "' overflows cell (" +
                                           std::to_string(r) + "," + std::to_string(c) + ")");
                    }
                    OcrWord w;
                    w.page_num = 1;
                    w.block_num = static_cast<int>(t) + 1;
                    w.par_num = 1;
                    w.line_num = static_cast<int>(r * n_cols + c) + 1;
                    w.word_num = ++word_num;
                    w.left = x;
                    w.top = top;
                    w.width = width;
                    w.height = kWordHeight;
                    w.conf = kWordConfidence;
                    w.text = text;
                    if (options.stroke_text) draw_glyphs(out.image, w, options.ink);
                    truth.words.push_back(std::move(w));
                    x += width + kCharAdvance;
                }
            }
        }
        out.truth.tables.push_back(std::move(truth));
    }

    if (options.gradient != 0.0) {
        const double denom = std::max(1, page_h - 1);
        for (int y = 0; y < page_h; ++y) {
            const double factor = 1.0 - options.gradient * y / denom;
            for (int x = 0; x < page_w; ++x) {
                const double v = std::round(out.image.at(x, y) * factor);
                out.image.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
            }
        }
    }
    return out;
}

std::string emit_ocr_tsv(const GroundTruth& truth) {
    std::vector<OcrWord> words;
    for (const auto& t : truth.tables) words.insert(words.end(), t.words.begin(), t.words.end());
    return to_ocr_tsv(words);
}

Fixture parse_fixture(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
        Fixture f;
        const auto& page = doc.at("page");
        f.page_w = page.at("width").get<int>();
        f.page_h = page.at("height").get<int>();
        f.options.ink = page.value("ink", std::uint8_t{0});
        f.options.paper = page.value("paper", std::uint8_t{255});
        f.options.stroke_text = page.value("stroke_text", true);
        f.options.gradient = page.value("gradient", 0.0);
        for (const auto& t : doc.at("tables")) {
            TableSpec spec;
            spec.origin = {t.at("origin").at(0).get<int>(), t.at("origin").at(1).get<int>()};
            spec.col_widths = t.at("col_widths").get<std::vector<int>>();
            spec.row_heights = t.at("row_heights").get<std::vector<int>>();
            spec.line_width = t.value("line_width", 2);
            spec.cell_texts = t.at("cells").get<std::vector<std::vector<std::string>>>();
            spec.seed = t.value("seed", std::uint64_t{0});
            spec.jitter = t.value("jitter", 0);
            f.tables.push_back(std::move(spec));
        }
        return f;
    } catch (const json::exception& e) {
        throw Error("synth", std::string("invalid fixture: ") + e.what());
    }
}

Fixture load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("synth", "cannot open fixture '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_fixture(buf.str());
}

Fixture two_table_fixture() {
    Fixture f;
    f.page_w = 1000;
    f.page_h = 800;

    TableSpec produce;
    produce.origin = {60, 60};
    produce.col_widths = {150, 150, 150, 150, 150};
    produce.row_heights = {50, 50, 50, 50};
    produce.cell_texts = {
        {"Date", "Fruit", "Price", "Weight", "Amount"},
        {"Jan 3", "Apple", "7.9", "93", "$734.7"},
        {"Dec 18", "Kiwi", "2.9", "57", "$165.3"},
        {"Jun 6", "Plum", "6.2", "75", "$465.0"},
    };

    TableSpec courses;
    courses.origin = {60, 400};
    courses.col_widths = {220, 170, 170};
    courses.row_heights = {50, 50, 50, 50};
    courses.cell_texts = {
        {"Course", "Price", "Hours"},
        {"Soft Computing", "$ 416.00", "35 hours"},
        {"Compiler Design", "$ 300.00", "31 hours"},
        {"C Programming", "$ 200.00", "25 hours"},
    };

    f.tables = {produce, courses};
    return f;
}

Fixture random_layout(std::uint64_t seed, int page_w, int page_h) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    static const char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";

    Fixture f;
    f.page_w = page_w;
    f.page_h = page_h;
    const int wanted = uniform(1, 4);
    constexpr int kMargin = 20;
    constexpr int kGap = 20;
    std::vector<CellBox> placed;

    for (int attempt = 0; attempt < 400 && static_cast<int>(f.tables.size()) < wanted; ++attempt) {
        TableSpec spec;
        spec.line_width = uniform(1, 3);
        const int cols = uniform(1, 6);
        const int rows = uniform(1, 5);
        for (int c = 0; c < cols; ++c) spec.col_widths.push_back(uniform(40, 110));
        for (int r = 0; r < rows; ++r) spec.row_heights.push_back(uniform(32, 60));
        const int w = spec.total_width();
        const int h = spec.total_height();
        if (w + 2 * kMargin > page_w || h + 2 * kMargin > page_h) continue;
        spec.origin = {uniform(kMargin, page_w - kMargin - w), uniform(kMargin, page_h - kMargin - h)};
        CellBox box{spec.origin.x, spec.origin.y, spec.origin.x + w - 1, spec.origin.y + h - 1};
        const bool clash = std::any_of(placed.begin(), placed.end(),
                                       [&](const CellBox& p) { return boxes_overlap(box, p, kGap); });
        if (clash) continue;

        for (int r = 0; r < rows; ++r) {
            std::vector<std::string> row;
            for (int c = 0; c < cols; ++c) {
                const int interior = spec.col_widths[c] - (c + 1 == cols ? 2 : 1) * spec.line_width;
                const int max_chars = std::max(0, (interior - 2 * kPadding) / kCharAdvance);
                const int len = uniform(0, std::min(max_chars, 5));
                std::string text;
                for (int k = 0; k < len; ++k) text += kAlphabet[uniform(0, 35)];
                row.push_back(text);
            }
            spec.cell_texts.push_back(std::move(row));
        }
        placed.push_back(box);
        f.tables.push_back(std::move(spec));
    }
    return f;
}

}  // namespace tablegrid::synth
