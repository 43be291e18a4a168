#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tablegrid/pipeline.hpp"

namespace tablegrid::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoTable = 2;

inline constexpr const char* kOcrCommandEnv = "TABLEGRID_OCR_CMD";

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    /// One TSV per input, in input order. When empty, `ocr_command` is used;
    /// when that is unset too, tables are emitted without text.
    std::vector<std::filesystem::path> ocr_tsvs;
    std::optional<std::string> ocr_command;  ///< template with an {input} placeholder
    PipelineConfig pipeline;
    OutputFormat format = OutputFormat::Csv;
    std::filesystem::path output_dir = ".";
    std::optional<std::filesystem::path> debug_dir;
    int jobs = 1;
};

struct RunReport {
    int exit_code = kExitOk;
    std::vector<std::filesystem::path> files;
    std::vector<std::filesystem::path> debug_files;
};

/// Runs the full pipeline for every input. Per-input diagnostics go to `err`;
/// a summary line per emitted file goes to `out`. Exit code: 1 if any input
/// failed, else 2 if any input had no table, else 0.
RunReport run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes the stage images (01_gray .. 07_groups) and histogram.txt into `dir`.
std::vector<std::filesystem::path> dump_debug(const GrayImage& gray, const Detection& detection,
                                              const std::filesystem::path& dir);

/// Substitutes {input} with a shell-quoted path and captures stdout.
std::string run_ocr_command(const std::string& command_template,
                            const std::filesystem::path& input);

}  // namespace tablegrid::app
