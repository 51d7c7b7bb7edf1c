#include "luxfield/export.hpp"

#include <cstdio>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "luxfield/timeutil.hpp"

namespace luxfield {

namespace {

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

using Cell = std::optional<double>;

std::vector<Cell> summary_cells(const PhotometricSummary& s) {
    std::vector<Cell> cells;
    const auto push_component = [&cells](const ComponentSummary& c) {
        cells.push_back(c.illuminance_lux);
        cells.push_back(c.color.tristimulus.X);
        cells.push_back(c.color.tristimulus.Y);
        cells.push_back(c.color.tristimulus.Z);
        if (c.color.chromaticity) {
            cells.push_back(c.color.chromaticity->x);
            cells.push_back(c.color.chromaticity->y);
            cells.push_back(c.color.chromaticity->uprime);
            cells.push_back(c.color.chromaticity->vprime);
        } else {
            cells.insert(cells.end(), 4, std::nullopt);
        }
        if (c.color.cct) {
            cells.push_back(c.color.cct->kelvin);
            cells.push_back(c.color.cct->duv);
        } else {
            cells.insert(cells.end(), 2, std::nullopt);
        }
    };
    push_component(s.scalar);
    push_component(s.symmetric);
    push_component(s.vector);
    cells.push_back(s.vector_illuminance_norm);
    cells.push_back(s.vector_illuminance_triple.x);
    cells.push_back(s.vector_illuminance_triple.y);
    cells.push_back(s.vector_illuminance_triple.z);
    if (s.direction) {
        cells.push_back(s.direction->altitude_deg);
        if (s.direction->azimuth_deg)
            cells.push_back(*s.direction->azimuth_deg);
        else
            cells.push_back(std::nullopt);
    } else {
        cells.insert(cells.end(), 2, std::nullopt);
    }
    cells.push_back(s.diffuseness ? Cell(*s.diffuseness) : std::nullopt);
    return cells;
}

}  // namespace

const std::vector<std::string>& result_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c{"timestamp"};
        for (const char* comp : {"scalar", "symmetric", "vector"})
            for (const char* field : {"illuminance_lux", "X", "Y", "Z", "x", "y", "uprime",
                                      "vprime", "cct_k", "duv"})
                c.push_back(std::string(comp) + "_" + field);
        c.insert(c.end(), {"vector_illuminance_norm_lux", "vector_ex_lux", "vector_ey_lux",
                           "vector_ez_lux", "vector_altitude_deg", "vector_azimuth_deg",
                           "diffuseness"});
        return c;
    }();
    return cols;
}

std::string results_to_csv(const std::vector<PhotometricSummary>& summaries,
                           const std::vector<std::pair<std::string, std::string>>& provenance) {
    std::string out;
    for (const auto& [k, v] : provenance) out += "#" + k + "=" + v + "\n";
    const auto& cols = result_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += "\n";
    for (const auto& s : summaries) {
        out += format_iso8601(s.timestamp);
        for (const Cell& c : summary_cells(s)) out += "," + (c ? fmt9(*c) : std::string());
        out += "\n";
    }
    return out;
}

std::string results_to_json(const std::vector<PhotometricSummary>& summaries,
                            const std::vector<std::pair<std::string, std::string>>& provenance) {
    nlohmann::ordered_json root;
    if (!provenance.empty()) {
        nlohmann::ordered_json cfg;
        for (const auto& [k, v] : provenance) cfg[k] = v;
        root["config"] = cfg;
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    const auto& cols = result_columns();
    for (const auto& s : summaries) {
        nlohmann::ordered_json row;
        row[cols[0]] = format_iso8601(s.timestamp);
        const auto cells = summary_cells(s);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i])
                // round-trip through the 9-significant-digit text form so CSV
                // and JSON exports carry identical numbers
                row[cols[i + 1]] = std::stod(fmt9(*cells[i]));
            else
                row[cols[i + 1]] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    root["measurements"] = std::move(rows);
    return root.dump(2) + "\n";
}

void export_results(const std::vector<PhotometricSummary>& summaries, ExportFormat format,
                    const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& provenance) {
    const std::string text = format == ExportFormat::Csv
                                 ? results_to_csv(summaries, provenance)
                                 : results_to_json(summaries, provenance);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace luxfield
