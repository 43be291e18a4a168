#include "tablegrid/emit.hpp"

#include <fstream>
#include <system_error>

#include <json.hpp>

#include "tablegrid/error.hpp"

namespace tablegrid {

namespace {

using json = nlohmann::ordered_json;

bool needs_quotes(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
    if (!needs_quotes(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

json box_json(const CellBox& b) {
    json j;
    j["x_min"] = b.x_min;
    j["y_min"] = b.y_min;
    j["x_max"] = b.x_max;
    j["y_max"] = b.y_max;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("emit", "cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw Error("emit", "write failed for '" + path.string() + "'");
}

}  // namespace

std::string to_csv(const TableGrid& grid) {
    std::string out;
    for (const auto& row : grid.cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            append_field(out, row[c]);
        }
        out += "\r\n";
    }
    return out;
}

std::string to_json(const std::vector<TableGrid>& grids, const Provenance& provenance) {
    json doc;
    doc["source"] = provenance.source;
    json params = json::object();
    for (const auto& [name, value] : provenance.parameters) {
        std::visit([&](const auto& v) { params[name] = v; }, value);
    }
    doc["parameters"] = std::move(params);
    json tables = json::array();
    for (const auto& g : grids) {
        json t;
        t["id"] = g.table_id;
        t["n_rows"] = g.n_rows;
        t["n_cols"] = g.n_cols;
        t["outline"] = box_json(g.outline);
        t["rows"] = g.cells;
        tables.push_back(std::move(t));
    }
    doc["tables"] = std::move(tables);
    return doc.dump(2) + "\n";
}

std::filesystem::path csv_path(const EmitConfig& cfg, int table_id) {
    return cfg.output_dir / (cfg.base_name + "_table" + std::to_string(table_id) + ".csv");
}

std::filesystem::path json_path(const EmitConfig& cfg) {
    return cfg.output_dir / (cfg.base_name + ".json");
}

std::vector<std::filesystem::path> write_outputs(const std::vector<TableGrid>& grids,
                                                 const Provenance& provenance,
                                                 const EmitConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) {
        throw Error("emit", "cannot create output directory '" + cfg.output_dir.string() +
                                "': " + ec.message());
    }

    std::vector<std::pair<std::filesystem::path, std::string>> pending;
    if (cfg.format != OutputFormat::Json) {
        for (const auto& g : grids) pending.emplace_back(csv_path(cfg, g.table_id), to_csv(g));
    }
    if (cfg.format != OutputFormat::Csv) {
        pending.emplace_back(json_path(cfg), to_json(grids, provenance));
    }

    std::vector<std::filesystem::path> temps;
    try {
        for (const auto& [path, content] : pending) {
            auto tmp = path;
            tmp += ".tmp";
            temps.push_back(tmp);
            write_file(tmp, content);
        }
    } catch (...) {
        for (const auto& t : temps) std::filesystem::remove(t, ec);
        throw;
    }

    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < pending.size(); ++i) {
        std::filesystem::rename(temps[i], pending[i].first, ec);
        if (ec) {
            throw Error("emit", "cannot rename '" + temps[i].string() + "': " + ec.message());
        }
        written.push_back(pending[i].first);
    }
    return written;
}

}  // namespace tablegrid
