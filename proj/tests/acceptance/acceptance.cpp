// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Every tolerance and sample size is pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/pipeline.hpp"
#include "tablegrid/synth.hpp"

using namespace tablegrid;
namespace fs = std::filesystem;

namespace {

constexpr double kMaxFixtureSeconds = 2.0;
constexpr int kRandomHistograms = 100;
constexpr int kStructuredHistograms = 20;
constexpr double kVarianceRelTol = 1e-9;
constexpr int kMorphImages = 200;
constexpr int kMorphKernels = 20;
constexpr int kMorphMaxSide = 32;
constexpr int kContourImages = 100;
constexpr int kLayouts = 50;
constexpr double kMinLayoutPassRate = 0.98;
constexpr int kMappingLayouts = 50;
constexpr int kRaggedFixtures = 50;
constexpr double kGradient = 0.7;

const std::string kCli = TABLEGRID_CLI_PATH;

struct Result {
    bool pass = true;
    std::string detail;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("tablegrid_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<OcrWord> all_words(const synth::GroundTruth& truth) {
    std::vector<OcrWord> words;
    for (const auto& t : truth.tables) words.insert(words.end(), t.words.begin(), t.words.end());
    return words;
}

// Writes the page and its OCR TSV, returns the image path.
fs::path write_page(const synth::Rendering& r, const fs::path& dir, const std::string& stem) {
    const auto image = dir / (stem + ".pgm");
    save_pgm(r.image, image);
    std::ofstream(dir / (stem + ".tsv"), std::ios::binary) << synth::emit_ocr_tsv(r.truth);
    return image;
}

std::string extract_cmd(const fs::path& image, const fs::path& out, const std::string& extra = "") {
    fs::path tsv = image;
    tsv.replace_extension(".tsv");
    return kCli + " extract " + image.string() + " --ocr-tsv " + tsv.string() + " --output-dir " +
           out.string() + " " + extra;
}

// Compares emitted CSVs with the fixture texts; returns matched cell count.
int matched_cells(const fs::path& out, const std::string& stem, const synth::Fixture& fx,
                  std::string& detail) {
    int matched = 0;
    for (std::size_t t = 0; t < fx.tables.size(); ++t) {
        const auto path = out / (stem + "_table" + std::to_string(t + 1) + ".csv");
        if (!fs::exists(path)) {
            detail += " missing " + path.filename().string() + ";";
            continue;
        }
        const auto rows = oracle::read_csv(slurp(path));
        const auto& want = fx.tables[t].cell_texts;
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        if (rows.size() != want.size() || cols != want.front().size()) {
            detail += " table " + std::to_string(t + 1) + " shape (" + std::to_string(rows.size()) +
                      "," + std::to_string(cols) + ");";
        }
        for (std::size_t r = 0; r < std::min(rows.size(), want.size()); ++r) {
            for (std::size_t c = 0; c < std::min(rows[r].size(), want[r].size()); ++c) {
                matched += rows[r][c] == want[r][c] ? 1 : 0;
            }
        }
    }
    return matched;
}

int total_cells(const synth::Fixture& fx) {
    int n = 0;
    for (const auto& t : fx.tables) n += static_cast<int>(t.row_heights.size() * t.col_widths.size());
    return n;
}

// Detected table index for each ground-truth table, matched by outline
// (mutual containment within the grouping slack); -1 when none matches.
std::vector<int> match_tables(const Grouping& grouping, const synth::GroundTruth& truth, int slack) {
    std::vector<int> match(truth.tables.size(), -1);
    for (std::size_t t = 0; t < truth.tables.size(); ++t) {
        const auto& want = truth.tables[t].outline;
        for (std::size_t g = 0; g < grouping.tables.size(); ++g) {
            const auto& got = grouping.tables[g].outline;
            if (containment(got, want, slack) && containment(want, got, slack)) {
                match[t] = static_cast<int>(g);
                break;
            }
        }
    }
    return match;
}

// ---------------------------------------------------------------------------

Result fixture_reconstruction() {
    Result res;
    const auto dir = scratch("fixture");
    const auto fx = synth::two_table_fixture();
    const auto image = write_page(synth::render(fx.tables, fx.page_w, fx.page_h, fx.options), dir, "fig");
    const auto start = std::chrono::steady_clock::now();
    const int code = shell(extract_cmd(image, dir / "out", "> /dev/null"));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int n_csv = static_cast<int>(std::count_if(
        fs::directory_iterator(dir / "out"), fs::directory_iterator{},
        [](const auto& e) { return e.path().extension() == ".csv"; }));
    std::string detail;
    const int matched = matched_cells(dir / "out", "fig", fx, detail);
    res.pass = code == 0 && n_csv == 2 && matched == total_cells(fx) && secs < kMaxFixtureSeconds;
    char buf[160];
    std::snprintf(buf, sizeof buf, "exit %d, %d tables, %d/%d cells, %.3f s (limit %.1f s)", code,
                  n_csv, matched, total_cells(fx), secs, kMaxFixtureSeconds);
    res.detail = buf + detail;
    fs::remove_all(dir);
    return res;
}

Result otsu_oracle() {
    std::mt19937_64 rng(20240601);
    std::vector<Histogram> cases;
    for (int i = 0; i < kRandomHistograms; ++i) {
        Histogram h;
        const int populated = 2 + static_cast<int>(rng() % 254);
        for (int k = 0; k < populated; ++k) {
            const auto c = 1 + rng() % 10000;
            h.bins[rng() % 256] += c;
            h.total += c;
        }
        cases.push_back(h);
    }
    for (int i = 0; i < kStructuredHistograms; ++i) {
        Histogram h;
        auto add = [&](int bin, std::uint64_t c) {
            h.bins[bin] += c;
            h.total += c;
        };
        switch (i % 3) {
        case 0: {  // bimodal
            const int a = static_cast<int>(rng() % 100);
            const int b = 150 + static_cast<int>(rng() % 106);
            for (int d = -5; d <= 5; ++d) {
                add(std::clamp(a + d, 0, 255), 1 + rng() % 300);
                add(std::clamp(b + d, 0, 255), 1 + rng() % 300);
            }
            break;
        }
        case 1: {  // uniform over a random range
            const int lo = static_cast<int>(rng() % 128);
            const int hi = lo + 2 + static_cast<int>(rng() % (254 - lo));
            for (int v = lo; v <= std::min(hi, 255); ++v) add(v, 7);
            break;
        }
        default: {  // single spike plus a tail
            const int spike = static_cast<int>(rng() % 200);
            add(spike, 100000);
            for (int v = spike + 1; v < 256; ++v) add(v, 1 + rng() % 5);
            break;
        }
        }
        cases.push_back(h);
    }

    int mismatches = 0;
    int decomposition = 0;
    for (const auto& h : cases) {
        const auto expected = oracle::otsu_exhaustive(h);
        const auto r = otsu_threshold(h);
        if (!expected || r.threshold != *expected) ++mismatches;
        const double sum = r.within_class_variance + r.between_class_variance;
        if (std::abs(sum - r.total_variance) > kVarianceRelTol * r.total_variance) ++decomposition;
    }
    return {mismatches == 0 && decomposition == 0,
            std::to_string(cases.size()) + " histograms, " + std::to_string(mismatches) +
                " threshold mismatches, " + std::to_string(decomposition) +
                " decomposition violations (rel tol 1e-9)"};
}

BinaryImage crop(const BinaryImage& img, int border) {
    BinaryImage out(img.width() - 2 * border, img.height() - 2 * border);
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) out.set(x, y, img.at(x + border, y + border));
    }
    return out;
}

Result morphology_oracle() {
    std::mt19937_64 rng(77);
    std::vector<StructuringElement> kernels{
        make_kernel(KernelKind::Vertical, 800, 80), make_kernel(KernelKind::Horizontal, 240, 80),
        make_kernel(KernelKind::Square3, 800, 80), StructuringElement::rectangle(2, 4),
        StructuringElement::rectangle(5, 1)};
    while (static_cast<int>(kernels.size()) < kMorphKernels) kernels.push_back(oracle::random_kernel(rng));

    int oracle_fail = 0;
    int duality_fail = 0;
    int opening_fail = 0;
    int pairs = 0;
    for (int i = 0; i < kMorphImages; ++i) {
        const int w = 1 + static_cast<int>(rng() % kMorphMaxSide);
        const int h = 1 + static_cast<int>(rng() % kMorphMaxSide);
        const auto x = oracle::random_binary(rng, w, h, 0.2 + 0.6 * (i % 4) / 3.0);
        for (const auto& k : kernels) {
            ++pairs;
            const auto e = erode(x, k);
            const auto d = dilate(x, k);
            if (e != oracle::erode(x, k) || d != oracle::dilate(x, k)) ++oracle_fail;
            // Complement taken in the whole plane: the frame is background for
            // X, so its complement is foreground beyond the frame.
            const int border = std::max(k.width(), k.height());
            const auto complement = invert(pad(x, border));
            if (e != invert(crop(dilate(complement, k.reflected()), border))) ++duality_fail;
            const auto o = open(x, k, 1);
            if (open(o, k, 1) != o || !is_subset(o, x)) ++opening_fail;
        }
    }
    return {oracle_fail == 0 && duality_fail == 0 && opening_fail == 0,
            std::to_string(pairs) + " image/kernel pairs, " + std::to_string(oracle_fail) +
                " oracle mismatches, " + std::to_string(duality_fail) + " duality failures, " +
                std::to_string(opening_fail) + " opening failures"};
}

Result contour_oracle() {
    std::mt19937_64 rng(4242);
    int count_fail = 0;
    int nesting_fail = 0;
    std::size_t contours = 0;
    for (int i = 0; i < kContourImages; ++i) {
        // Blobs: random rectangles and rings on a random field.
        const int w = 8 + static_cast<int>(rng() % 57);
        const int h = 8 + static_cast<int>(rng() % 57);
        auto img = oracle::random_binary(rng, w, h, 0.15 * (i % 3));
        const int blobs = 1 + static_cast<int>(rng() % 8);
        for (int b = 0; b < blobs; ++b) {
            const int x0 = static_cast<int>(rng() % w);
            const int y0 = static_cast<int>(rng() % h);
            const int x1 = std::min(w - 1, x0 + static_cast<int>(rng() % 16));
            const int y1 = std::min(h - 1, y0 + static_cast<int>(rng() % 16));
            const bool ring = rng() % 2 == 0;
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    if (!ring || x == x0 || x == x1 || y == y0 || y == y1) img.set(x, y);
                }
            }
        }
        const auto cs = find_contours(img);
        contours += cs.size();
        const auto outer = std::count_if(cs.begin(), cs.end(),
                                         [](const Contour& c) { return c.kind == ContourKind::Outer; });
        if (outer != oracle::count_components(img) ||
            static_cast<int>(cs.size() - outer) != oracle::count_holes(img)) {
            ++count_fail;
        }
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (!cs[k].parent) {
                if (cs[k].kind == ContourKind::Hole) ++nesting_fail;
                continue;
            }
            const auto child = bounding_box(cs[k], k);
            const auto parent = bounding_box(cs[*cs[k].parent], *cs[k].parent);
            if (!(child.x_min >= parent.x_min && child.y_min >= parent.y_min &&
                  child.x_max <= parent.x_max && child.y_max <= parent.y_max)) {
                ++nesting_fail;
            }
            if (cs[k].kind == ContourKind::Hole && cs[*cs[k].parent].kind != ContourKind::Outer) {
                ++nesting_fail;
            }
        }
    }
    return {count_fail == 0 && nesting_fail == 0,
            std::to_string(kContourImages) + " images, " + std::to_string(contours) + " contours, " +
                std::to_string(count_fail) + " count mismatches, " + std::to_string(nesting_fail) +
                " nesting violations"};
}

Result grouping_robustness() {
    int passed = 0;
    std::string failures;
    for (int seed = 1; seed <= kLayouts; ++seed) {
        const auto fx = synth::random_layout(static_cast<std::uint64_t>(seed));
        const auto r = synth::render(fx.tables, fx.page_w, fx.page_h, fx.options);
        const PipelineConfig cfg;
        const auto d = detect_tables(r.image, cfg);
        const auto match = match_tables(d.grouping, r.truth, cfg.containment_slack);
        bool ok = d.grouping.tables.size() == r.truth.tables.size();
        for (std::size_t t = 0; ok && t < r.truth.tables.size(); ++t) {
            const auto& truth = r.truth.tables[t];
            ok = match[t] >= 0 && d.grouping.tables[match[t]].cells.size() ==
                                      static_cast<std::size_t>(truth.rows() * truth.cols());
        }
        if (ok) {
            ++passed;
        } else {
            failures += " seed " + std::to_string(seed) + ";";
        }
    }
    const double rate = static_cast<double>(passed) / kLayouts;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/%d layouts exact (%.0f%%, need %.0f%%)", passed, kLayouts,
                  100 * rate, 100 * kMinLayoutPassRate);
    return {rate >= kMinLayoutPassRate, buf + (failures.empty() ? "" : ", failed:" + failures)};
}

Result grid_mapping() {
    std::mt19937_64 rng(99);
    int permutation_fail = 0;
    int truth_fail = 0;
    int multiplicity_fail = 0;
    int rect_fail = 0;
    int tables = 0;
    for (int seed = 1; seed <= kMappingLayouts; ++seed) {
        const auto fx = synth::random_layout(static_cast<std::uint64_t>(1000 + seed));
        const auto r = synth::render(fx.tables, fx.page_w, fx.page_h, fx.options);
        const PipelineConfig cfg;
        const auto d = detect_tables(r.image, cfg);
        auto words = all_words(r.truth);
        const auto grids = map_tables(d.grouping, words, cfg);
        std::shuffle(words.begin(), words.end(), rng);
        const auto shuffled = map_tables(d.grouping, words, cfg);
        for (std::size_t g = 0; g < grids.size(); ++g) {
            ++tables;
            if (grids[g].cells != shuffled[g].cells) ++permutation_fail;
        }
        const auto match = match_tables(d.grouping, r.truth, cfg.containment_slack);
        for (std::size_t t = 0; t < r.truth.tables.size(); ++t) {
            if (match[t] < 0 || grids[match[t]].cells != r.truth.tables[t].texts) ++truth_fail;
        }

        // Uniquely named probe words scattered over the detected cells.
        for (const auto& table : d.grouping.tables) {
            const auto rows = cluster_rows(table.cells, cfg.line_threshold);
            std::vector<OcrWord> probes;
            for (int k = 0; k < 40; ++k) {
                OcrWord w;
                w.left = table.outline.x_min - 5 + static_cast<int>(rng() % (table.outline.width() + 10));
                w.top = table.outline.y_min - 5 + static_cast<int>(rng() % (table.outline.height() + 10));
                w.width = 1 + static_cast<int>(rng() % 12);
                w.height = 1 + static_cast<int>(rng() % 12);
                w.conf = 90;
                w.text = "p" + std::to_string(k);
                probes.push_back(w);
            }
            const auto grid = assign_words(rows, probes, cfg.line_threshold);
            std::map<std::string, int> seen;
            for (const auto& row : grid.cells) {
                for (const auto& cell : row) {
                    std::istringstream tokens(cell);
                    for (std::string tok; tokens >> tok;) ++seen[tok];
                }
            }
            for (const auto& w : probes) {
                int containing = 0;
                for (const auto& c : table.cells) containing += center_in_cell(w.x_mean(), w.y_mean(), c);
                const int got = seen.count(w.text) ? seen[w.text] : 0;
                if (containing == 1 && got != 1) ++multiplicity_fail;
                if (containing == 0 && got != 0) ++multiplicity_fail;
            }
        }
    }

    for (int i = 0; i < kRaggedFixtures; ++i) {
        std::vector<RowGroup> rows;
        const int n_rows = 1 + static_cast<int>(rng() % 6);
        std::size_t longest = 0;
        for (int r = 0; r < n_rows; ++r) {
            RowGroup row;
            const int n = 1 + static_cast<int>(rng() % 7);
            for (int c = 0; c < n; ++c) row.push_back(CellBox{c * 40, r * 30, c * 40 + 39, r * 30 + 29});
            longest = std::max(longest, row.size());
            rows.push_back(row);
        }
        const auto grid = assign_words(rows, {});
        bool ok = grid.n_rows == n_rows && grid.n_cols == static_cast<int>(longest) &&
                  static_cast<int>(grid.cells.size()) == n_rows;
        for (const auto& row : grid.cells) ok = ok && static_cast<int>(row.size()) == grid.n_cols;
        for (const auto& row : grid.cell_boxes) ok = ok && static_cast<int>(row.size()) == grid.n_cols;
        if (!ok) ++rect_fail;
    }

    return {permutation_fail == 0 && truth_fail == 0 && multiplicity_fail == 0 && rect_fail == 0,
            std::to_string(tables) + " tables: " + std::to_string(permutation_fail) +
                " permutation changes, " + std::to_string(truth_fail) + " ground-truth mismatches, " +
                std::to_string(multiplicity_fail) + " multiplicity violations; " +
                std::to_string(kRaggedFixtures) + " ragged grids, " + std::to_string(rect_fail) +
                " not rectangular"};
}

Result no_table_path() {
    const auto dir = scratch("notable");
    const auto blank = dir / "blank.pgm";
    save_pgm(GrayImage(1000, 800, std::uint8_t{255}), blank);

    // The fixture with its ruling lines painted over leaves text strokes only.
    const auto fx = synth::two_table_fixture();
    auto r = synth::render(fx.tables, fx.page_w, fx.page_h, fx.options);
    for (int y = 0; y < r.image.height(); ++y) {
        for (int x = 0; x < r.image.width(); ++x) {
            if (r.truth.line_mask.at(x, y)) r.image.at(x, y) = fx.options.paper;
        }
    }
    const auto text_only = write_page(r, dir, "text_only");

    std::string detail;
    bool pass = true;
    for (const auto& image : {blank, text_only}) {
        const auto err = dir / (image.stem().string() + ".err");
        const int code = shell(kCli + " extract " + image.string() + " --output-dir " +
                               (dir / "out").string() + " 2> " + err.string());
        const bool said = slurp(err).find("no table") != std::string::npos;
        const bool files = fs::exists(dir / "out") && !fs::is_empty(dir / "out");
        pass = pass && code == 2 && said && !files;
        detail += image.stem().string() + ": exit " + std::to_string(code) +
                  (said ? ", \"no table\"" : ", message missing") + (files ? ", files written" : "") + "; ";
    }
    fs::remove_all(dir);
    return {pass, detail};
}

Result determinism() {
    const auto dir = scratch("determinism");
    const auto fx = synth::two_table_fixture();
    const auto image = write_page(synth::render(fx.tables, fx.page_w, fx.page_h, fx.options), dir, "fig");
    std::map<std::string, std::string> runs[2];
    for (int k = 0; k < 2; ++k) {
        const auto out = dir / ("run" + std::to_string(k));
        shell(extract_cmd(image, out / "out",
                          "--format both --debug-dir " + (out / "debug").string() + " > /dev/null"));
        for (const auto& e : fs::recursive_directory_iterator(out)) {
            if (e.is_regular_file()) runs[k][fs::relative(e.path(), out).string()] = slurp(e.path());
        }
    }
    std::size_t differing = 0;
    for (const auto& [name, content] : runs[0]) {
        const auto it = runs[1].find(name);
        if (it == runs[1].end() || it->second != content) ++differing;
    }
    const bool pass = !runs[0].empty() && runs[0].size() == runs[1].size() && differing == 0 &&
                      runs[0].size() == 2 + 1 + 8;
    fs::remove_all(dir);
    return {pass, std::to_string(runs[0].size()) + " artifacts per run, " +
                      std::to_string(differing) + " differ"};
}

Result illumination() {
    const auto dir = scratch("gradient");
    auto fx = synth::two_table_fixture();
    fx.options.gradient = kGradient;
    const auto image = write_page(synth::render(fx.tables, fx.page_w, fx.page_h, fx.options), dir, "dim");

    std::string adaptive_detail;
    const int code = shell(extract_cmd(image, dir / "adaptive", "> /dev/null"));
    const int adaptive = matched_cells(dir / "adaptive", "dim", fx, adaptive_detail);

    std::string otsu_detail;
    shell(extract_cmd(image, dir / "otsu", "--binarize otsu > /dev/null 2>&1"));
    const int otsu = fs::exists(dir / "otsu") ? matched_cells(dir / "otsu", "dim", fx, otsu_detail) : 0;

    char buf[200];
    std::snprintf(buf, sizeof buf, "gradient %.2f: adaptive exit %d, %d/%d cells; otsu %d/%d cells (informational)",
                  kGradient, code, adaptive, total_cells(fx), otsu, total_cells(fx));
    fs::remove_all(dir);
    return {code == 0 && adaptive == total_cells(fx), buf + adaptive_detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"two-table fixture reconstruction", fixture_reconstruction},
        {"otsu matches exhaustive search", otsu_oracle},
        {"morphology matches set definitions", morphology_oracle},
        {"contours match flood fill", contour_oracle},
        {"grouping on random layouts", grouping_robustness},
        {"grid mapping invariants", grid_mapping},
        {"no-table path", no_table_path},
        {"determinism", determinism},
        {"non-uniform illumination", illumination},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        failed += r.pass ? 0 : 1;
        std::cout << (r.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
                  << r.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
