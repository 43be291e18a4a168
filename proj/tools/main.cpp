#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "app.hpp"
#include "tablegrid/error.hpp"
#include "tablegrid/synth.hpp"

namespace {

using namespace tablegrid;

int render_command(const std::string& fixture_path, bool builtin, const std::string& image_out,
                   const std::string& tsv_out, std::optional<double> gradient, bool no_strokes) {
    synth::Fixture fixture = builtin ? synth::two_table_fixture() : synth::load_fixture(fixture_path);
    if (gradient) fixture.options.gradient = *gradient;
    if (no_strokes) fixture.options.stroke_text = false;
    const auto rendering = synth::render(fixture.tables, fixture.page_w, fixture.page_h,
                                         fixture.options);
    save_pgm(rendering.image, image_out);
    std::cout << image_out << "\n";
    if (!tsv_out.empty()) {
        std::ofstream out(tsv_out, std::ios::binary | std::ios::trunc);
        out << synth::emit_ocr_tsv(rendering.truth);
        if (!out) throw Error("cli", "cannot write '" + tsv_out + "'");
        std::cout << tsv_out << "\n";
    }
    return app::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Detect bordered tables in document images and extract them as CSV/JSON"};
    cli.require_subcommand(1);

    app::RunConfig cfg;
    auto& pipe = cfg.pipeline;
    std::vector<std::string> inputs;
    std::vector<std::string> tsvs;
    std::string binarize = "adaptive";
    std::string row_mode = "chained";
    std::string format = "csv";
    std::string output_dir = ".";
    std::string debug_dir;
    int otsu_threshold = 0;

    auto* extract = cli.add_subcommand("extract", "Run the extraction pipeline on PGM/PPM images");
    extract->add_option("inputs", inputs, "Input images (binary PGM or PPM)")->required();
    extract->add_option("--ocr-tsv", tsvs, "OCR word TSV, one per input in order");
    extract->add_option("--binarize", binarize, "adaptive | otsu")
        ->check(CLI::IsMember({"adaptive", "otsu"}))
        ->capture_default_str();
    extract->add_option("--otsu-threshold", otsu_threshold,
                        "Use this global threshold instead of computing Otsu's")
        ->check(CLI::Range(1, 255));
    extract->add_option("--block-size", pipe.adaptive.block_size, "Adaptive window size (odd)")
        ->check(CLI::Range(3, 1 << 20))
        ->capture_default_str();
    extract->add_option("--offset-c", pipe.adaptive.offset_c, "Subtracted from the window mean")
        ->capture_default_str();
    extract->add_option("--kernel-divisor", pipe.skeleton.divisor,
                        "Line kernel length is image_height / divisor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    extract->add_option("--open-iterations", pipe.skeleton.open_iterations,
                        "Erosions (then dilations) per opening")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    extract->add_option("--line-threshold", pipe.line_threshold, "Row clustering y gap in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    extract->add_option("--row-mode", row_mode, "chained | anchored")
        ->check(CLI::IsMember({"chained", "anchored"}))
        ->capture_default_str();
    extract->add_option("--conf-threshold", pipe.conf_threshold, "Minimum OCR word confidence")
        ->check(CLI::Range(0.0, 100.0))
        ->capture_default_str();
    extract->add_option("--min-cell-area", pipe.min_cell_area, "Minimum box area in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    extract->add_option("--containment-slack", pipe.containment_slack,
                        "Pixels of slack when testing cell-in-table containment")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    extract->add_option("--format", format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    extract->add_option("--output-dir", output_dir, "Directory for CSV/JSON output")
        ->capture_default_str();
    extract->add_option("--debug-dir", debug_dir, "Write stage images and histogram here");
    extract->add_option("--jobs", cfg.jobs, "Process inputs concurrently")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string fixture;
    bool builtin = false;
    std::string image_out;
    std::string tsv_out;
    double gradient = 0.0;
    bool no_strokes = false;
    auto* render = cli.add_subcommand("render", "Render a synthetic table fixture to PGM + OCR TSV");
    render->add_option("fixture", fixture, "Fixture JSON")->check(CLI::ExistingFile);
    render->add_flag("--two-table", builtin, "Use the built-in two-table fixture");
    render->add_option("--image", image_out, "Output PGM path")->required();
    render->add_option("--tsv", tsv_out, "Output OCR TSV path");
    auto* gradient_opt = render->add_option("--gradient", gradient,
                                            "Darken linearly toward the bottom by this fraction");
    render->add_flag("--no-strokes", no_strokes, "Do not draw filler text strokes");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e) == 0 ? app::kExitOk : app::kExitError;
    }

    try {
        if (*render) {
            if (fixture.empty() && !builtin) {
                std::cerr << "cli: give a fixture path or --two-table\n";
                return app::kExitError;
            }
            return render_command(fixture, builtin, image_out, tsv_out,
                                  gradient_opt->count() ? std::optional<double>(gradient)
                                                        : std::nullopt,
                                  no_strokes);
        }

        if (pipe.adaptive.block_size % 2 == 0) {
            std::cerr << "cli: --block-size must be odd\n";
            return app::kExitError;
        }
        for (const auto& i : inputs) cfg.inputs.emplace_back(i);
        for (const auto& t : tsvs) cfg.ocr_tsvs.emplace_back(t);
        if (cfg.ocr_tsvs.empty()) {
            if (const char* cmd = std::getenv(app::kOcrCommandEnv); cmd && *cmd) {
                cfg.ocr_command = cmd;
            }
        }
        pipe.binarize = binarize == "otsu" ? BinarizeMode::Otsu : BinarizeMode::Adaptive;
        if (extract->count("--otsu-threshold")) {
            pipe.binarize = BinarizeMode::Otsu;
            pipe.otsu_override = otsu_threshold;
        }
        pipe.row_mode = row_mode == "anchored" ? RowMode::Anchored : RowMode::Chained;
        static const std::map<std::string, OutputFormat> formats{
            {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}, {"both", OutputFormat::Both}};
        cfg.format = formats.at(format);
        cfg.output_dir = output_dir;
        if (!debug_dir.empty()) cfg.debug_dir = debug_dir;

        return app::run(cfg, std::cout, std::cerr).exit_code;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return app::kExitError;
    }
}
