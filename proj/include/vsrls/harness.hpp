#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsrls/indicators.hpp"
#include "vsrls/problems.hpp"
#include "vsrls/search.hpp"

namespace vsrls::harness {

/// One row of an experiment table: an instance and the evaluation budget
/// every algorithm gets on it.
struct CellSpec {
  InstanceSpec instance;
  std::uint64_t max_evals = 1'000'000;

  friend bool operator==(const CellSpec&, const CellSpec&) = default;
};

/// e.g. "knapsack-D500-m2-s1-e1000000".
[[nodiscard]] std::string cell_id(const CellSpec& cell);

struct ExperimentConfig {
  std::vector<CellSpec> cells;
  /// Labels must be unique; max_evals inside is ignored (taken from the cell).
  std::vector<AlgorithmConfig> algorithms;
  std::size_t runs = 30;
  std::uint64_t base_seed = 20240101;
  std::uint64_t trace_every = 10'000;
  std::filesystem::path out_dir = "results";
  std::string reference_algorithm = "VS-RLS";
  std::size_t jobs = 1;
};

/// seed = base_seed XOR mix(label, run); distinct per (label, run).
[[nodiscard]] std::uint64_t run_seed(std::uint64_t base_seed, const std::string& label, std::size_t run);

/// "table1", "table2", "table3", "fig8". scale divides runs, budgets and
/// trace spacing (each floored at 1). Throws std::invalid_argument on an
/// unknown name or scale 0.
[[nodiscard]] ExperimentConfig preset(const std::string& name, std::size_t scale = 1);

/// Config document:
///   {"cells"|"instances": [{"kind", "D", "m", "K"?, "seed", "max_evals"?}],
///    "algorithms": [{"algorithm": "VS-RLS", "label"?, "T_vl"?, "V_C"?, "move"?}],
///    "runs", "base_seed", "max_evals", "trace_every", "out", "reference", "jobs"}
/// "preset" (+ "scale") may name a preset that the remaining keys override.
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig& config);

/// Directory layout under out_dir.
[[nodiscard]] std::filesystem::path instance_path(const ExperimentConfig& config, const InstanceSpec& spec);
[[nodiscard]] std::filesystem::path record_path(const ExperimentConfig& config, const CellSpec& cell,
                                                const std::string& label, std::size_t run);
[[nodiscard]] std::filesystem::path index_path(const ExperimentConfig& config);

/// Writes one instance file per distinct instance; returns the paths.
std::vector<std::filesystem::path> cmd_generate(const ExperimentConfig& config);

struct RunControl {
  /// Stop after this many newly executed runs (simulates an interruption).
  std::optional<std::size_t> max_new_runs;
};

struct RunSummary {
  std::size_t executed = 0;
  std::size_t skipped = 0;
  bool complete = false;
};

/// Executes the (cell x algorithm x run) matrix. RS runs go first; their
/// union front fixes the per-cell reference point that the traces of all
/// other algorithms use. Existing valid records are skipped; corrupt ones are
/// re-run. The index file is written once the matrix is complete.
RunSummary cmd_run(const ExperimentConfig& config, const RunControl& control = {});

struct SummaryRow {
  CellSpec cell;
  std::string algorithm;  // label
  std::vector<double> hypervolumes;  // per run, in run order
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  std::string mark;     // "+", "=", "-", "" for the reference, "n/a" if < 5 runs
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
  std::map<std::string, ReferencePoint> references;  // cell id -> canonical r
  std::string reference_algorithm;
};

/// Final-run hypervolumes, mean/std and rank-sum marks against the
/// reference algorithm. Writes stats/summary.csv and stats/summary.json.
SummaryTable cmd_stats(const ExperimentConfig& config);

/// Writes trace.csv (algorithm,config_label,run,evaluations,hv) from the
/// records of every non-RS algorithm; returns its path.
std::filesystem::path cmd_trace(const ExperimentConfig& config);

/// Reference point of a cell from the union of its RS record fronts.
[[nodiscard]] ReferencePoint cell_reference(const ExperimentConfig& config, const CellSpec& cell);

/// Mark of `row` against `reference` at alpha = 0.05.
[[nodiscard]] std::string significance_mark(const std::vector<double>& row, const std::vector<double>& reference);

/// CSV text of a summary table (fixed column order plus tally rows).
[[nodiscard]] std::string summary_csv(const SummaryTable& table);

/// Shortest round-trip decimal representation.
[[nodiscard]] std::string format_double(double value);

} // namespace vsrls::harness
