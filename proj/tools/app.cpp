#include "app.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "tablegrid/error.hpp"

namespace tablegrid::app {

namespace {

enum class Status { Ok, NoTable, Failed };

struct Outcome {
    Status status = Status::Ok;
    std::vector<std::filesystem::path> files;
    std::vector<std::filesystem::path> debug_files;
    std::vector<std::string> messages;  ///< diagnostics for stderr
};

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cli", "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

GrayImage contour_overlay(const Detection& d) {
    const auto& sk = d.skeleton.combined;
    GrayImage img = to_gray(sk, 96, 0);
    for (const auto& c : d.contours) {
        const std::uint8_t v = c.kind == ContourKind::Outer ? 255 : 160;
        for (const auto& p : c.points) img.at(p.x, p.y) = v;
    }
    return img;
}

GrayImage group_labels(const Detection& d) {
    GrayImage img(d.binary.width(), d.binary.height(), 0);
    for (const auto& t : d.grouping.tables) {
        const auto v = static_cast<std::uint8_t>(std::min(t.id, 255));
        for (int y = t.outline.y_min; y <= t.outline.y_max; ++y) {
            for (int x = t.outline.x_min; x <= t.outline.x_max; ++x) img.at(x, y) = v;
        }
    }
    return img;
}

Outcome process(const RunConfig& cfg, std::size_t index) {
    Outcome outcome;
    const auto& input = cfg.inputs[index];
    const std::string label = input.string();
    try {
        const GrayImage gray = load_image_file(input);
        const Detection detection = detect_tables(gray, cfg.pipeline);

        if (cfg.debug_dir) {
            try {
                outcome.debug_files = dump_debug(gray, detection, *cfg.debug_dir / input.stem());
            } catch (const std::exception& e) {
                outcome.messages.push_back(label + ": debug dump failed: " + e.what());
            }
        }
        for (const auto& w : detection.grouping.warnings) {
            outcome.messages.push_back(label + ": warning: " + w);
        }
        if (!detection.has_tables()) {
            outcome.status = Status::NoTable;
            outcome.messages.push_back(label + ": no table");
            return outcome;
        }
        if (detection.grouping.orphan_cells > 0) {
            outcome.messages.push_back(label + ": warning: " +
                                       std::to_string(detection.grouping.orphan_cells) +
                                       " cell(s) outside every table outline");
        }

        std::vector<OcrWord> words;
        if (!cfg.ocr_tsvs.empty()) {
            words = parse_ocr_tsv(read_text(cfg.ocr_tsvs[index]));
        } else if (cfg.ocr_command) {
            words = parse_ocr_tsv(run_ocr_command(*cfg.ocr_command, input));
        }
        words = filter_confidence(words, cfg.pipeline.conf_threshold);

        const auto grids = map_tables(detection.grouping, words, cfg.pipeline);
        EmitConfig emit;
        emit.format = cfg.format;
        emit.output_dir = cfg.output_dir;
        emit.base_name = input.stem().string();
        outcome.files =
            write_outputs(grids, make_provenance(label, cfg.pipeline, detection), emit);
    } catch (const std::exception& e) {
        outcome.status = Status::Failed;
        outcome.files.clear();
        outcome.messages.push_back(label + ": " + e.what());
    }
    return outcome;
}

}  // namespace

std::string run_ocr_command(const std::string& command_template,
                            const std::filesystem::path& input) {
    std::string command = command_template;
    const std::string placeholder = "{input}";
    const std::string quoted = shell_quote(input.string());
    for (auto pos = command.find(placeholder); pos != std::string::npos;
         pos = command.find(placeholder, pos + quoted.size())) {
        command.replace(pos, placeholder.size(), quoted);
    }
    FILE* pipe = ::popen(command.c_str(), "r");
    if (pipe == nullptr) throw Error("cli", "cannot start OCR command");
    std::string output;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    const int status = ::pclose(pipe);
    if (status != 0) {
        throw Error("cli", "OCR command exited with status " + std::to_string(status));
    }
    return output;
}

std::vector<std::filesystem::path> dump_debug(const GrayImage& gray, const Detection& detection,
                                              const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> files;
    auto save = [&](const GrayImage& img, const char* name) {
        const auto path = dir / name;
        save_pgm(img, path);
        files.push_back(path);
    };
    save(gray, "01_gray.pgm");
    save(to_gray(detection.binary), "02_binary.pgm");
    save(to_gray(detection.skeleton.vertical), "03_vertical.pgm");
    save(to_gray(detection.skeleton.horizontal), "04_horizontal.pgm");
    save(to_gray(detection.skeleton.combined), "05_skeleton.pgm");
    save(contour_overlay(detection), "06_contours.pgm");
    save(group_labels(detection), "07_groups.pgm");

    const auto hist = histogram(gray);
    std::string text;
    for (auto count : hist.bins) text += std::to_string(count) + "\n";
    const auto hist_path = dir / "histogram.txt";
    std::ofstream(hist_path, std::ios::binary | std::ios::trunc) << text;
    files.push_back(hist_path);
    return files;
}

RunReport run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    RunReport report;
    if (config.inputs.empty()) {
        err << "cli: no input images\n";
        report.exit_code = kExitError;
        return report;
    }
    if (!config.ocr_tsvs.empty() && config.ocr_tsvs.size() != config.inputs.size()) {
        err << "cli: expected one --ocr-tsv per input (" << config.inputs.size() << "), got "
            << config.ocr_tsvs.size() << "\n";
        report.exit_code = kExitError;
        return report;
    }

    std::vector<Outcome> outcomes(config.inputs.size());
    const auto workers = static_cast<std::size_t>(
        std::clamp<int>(config.jobs, 1, static_cast<int>(config.inputs.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < outcomes.size(); ++i) outcomes[i] = process(config, i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < outcomes.size(); i = next++) {
                    outcomes[i] = process(config, i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    bool failed = false;
    bool missing = false;
    for (const auto& o : outcomes) {
        for (const auto& m : o.messages) err << m << "\n";
        for (const auto& f : o.files) out << f.string() << "\n";
        report.files.insert(report.files.end(), o.files.begin(), o.files.end());
        report.debug_files.insert(report.debug_files.end(), o.debug_files.begin(),
                                  o.debug_files.end());
        failed = failed || o.status == Status::Failed;
        missing = missing || o.status == Status::NoTable;
    }
    report.exit_code = failed ? kExitError : (missing ? kExitNoTable : kExitOk);
    return report;
}

}  // namespace tablegrid::app
