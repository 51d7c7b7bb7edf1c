#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "luxfield/analysis.hpp"

namespace luxfield {

enum class ExportFormat { Csv, Json };

/// One row/record per measurement with every PhotometricSummary field.
/// Columns are stable across versions; floats carry 9 significant digits;
/// undefined values become empty cells (CSV) or null (JSON). `provenance`
/// lines are echoed as leading `#key=value` comments (CSV) or a "config"
/// object (JSON).
void export_results(const std::vector<PhotometricSummary>& summaries, ExportFormat format,
                    const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& provenance = {});

std::string results_to_csv(const std::vector<PhotometricSummary>& summaries,
                           const std::vector<std::pair<std::string, std::string>>& provenance = {});
std::string results_to_json(const std::vector<PhotometricSummary>& summaries,
                            const std::vector<std::pair<std::string, std::string>>& provenance = {});

/// The column order shared by both formats.
const std::vector<std::string>& result_columns();

}  // namespace luxfield
