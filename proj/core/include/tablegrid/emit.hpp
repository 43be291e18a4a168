#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tablegrid/gridmap.hpp"

namespace tablegrid {

enum class OutputFormat { Csv, Json, Both };

struct EmitConfig {
    OutputFormat format = OutputFormat::Csv;
    std::filesystem::path output_dir = ".";
    std::string base_name = "tables";
};

using ParameterValue = std::variant<std::int64_t, double, std::string>;

/// Run metadata recorded in the JSON document. Parameters keep insertion order.
struct Provenance {
    std::string source;
    std::vector<std::pair<std::string, ParameterValue>> parameters;
};

/// RFC 4180: CRLF records, fields quoted only when they contain a comma,
/// quote, CR or LF.
std::string to_csv(const TableGrid& grid);

/// Deterministic JSON document: {source, parameters, tables: [...]}.
std::string to_json(const std::vector<TableGrid>& grids, const Provenance& provenance);

std::filesystem::path csv_path(const EmitConfig& cfg, int table_id);
std::filesystem::path json_path(const EmitConfig& cfg);

/// Writes every output to a temporary sibling first and renames only once all
/// writes succeeded. Returns the final paths in write order.
std::vector<std::filesystem::path> write_outputs(const std::vector<TableGrid>& grids,
                                                 const Provenance& provenance,
                                                 const EmitConfig& cfg);

}  // namespace tablegrid
