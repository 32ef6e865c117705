#pragma once

#include <filesystem>

#include "json.hpp"
#include "vsrls/search.hpp"

namespace vsrls {

/// Run-record document (version 1):
///   {"format": "vsrls-run", "version": 1,
///    "algorithm": "VS-RLS", "label": ..., "config": {...},
///    "instance": {kind, D, m, K, seed}, "seed": <u64>,
///    "evaluations": N, "iterations": t,
///    "archive": [{"genotype": "0101..." | [perm...], "objectives": [natural-sense values]}],
///    "trace": [[evaluations, hv], ...], "trace_reference": [natural] | null,
///    "wall_time_s": seconds}
/// Archive members are listed in archive order.
[[nodiscard]] nlohmann::json record_to_json(const RunRecord& record);
[[nodiscard]] RunRecord record_from_json(const nlohmann::json& doc);

/// The record without its timing field; two runs of the same configuration
/// produce identical normalized documents.
[[nodiscard]] nlohmann::json normalized(nlohmann::json doc);

[[nodiscard]] nlohmann::json algorithm_config_to_json(const AlgorithmConfig& config);
[[nodiscard]] AlgorithmConfig algorithm_config_from_json(const nlohmann::json& doc);

void save_record(const RunRecord& record, const std::filesystem::path& path);
[[nodiscard]] RunRecord load_record(const std::filesystem::path& path);

} // namespace vsrls
