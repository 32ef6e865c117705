#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "vsrls/problems.hpp"

namespace vsrls {

/// Instance document:
///   {"format": "vsrls-instance", "version": 1, "kind": ..., "D": ..., "m": ...,
///    "K": <int|null>, "seed": <u64>, "payload": {...}}
/// Payload per kind:
///   knapsack: values[m][D], weights[m][D], capacities[m]
///   tsp:      costs[m][D][D]
///   qap:      flows[m][D][D], locations[D][2], distances[D][D]
///   nk:       partners[D][K], tables[D][m][2^(K+1)]
/// Reals are written with round-trip precision, so save/load is lossless.
[[nodiscard]] nlohmann::json instance_to_json(const ProblemInstance& instance);
[[nodiscard]] ProblemInstance instance_from_json(const nlohmann::json& doc);

[[nodiscard]] nlohmann::json spec_to_json(const InstanceSpec& spec);
[[nodiscard]] InstanceSpec spec_from_json(const nlohmann::json& doc);

/// Writes via a temporary file and rename. Throws std::runtime_error naming
/// the path on I/O failure.
void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);
[[nodiscard]] ProblemInstance load_instance(const std::filesystem::path& path);

/// Shared helpers for the JSON documents the harness writes.
void write_text_atomically(const std::filesystem::path& path, const std::string& text);
[[nodiscard]] std::string read_text(const std::filesystem::path& path);

} // namespace vsrls
