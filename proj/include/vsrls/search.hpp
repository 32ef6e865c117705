#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsrls/archive.hpp"
#include "vsrls/indicators.hpp"
#include "vsrls/moves.hpp"
#include "vsrls/problems.hpp"

namespace vsrls {

enum class AlgorithmKind { vsrls, semo, pls, rs };

/// "VS-RLS", "SEMO", "PLS", "RS".
[[nodiscard]] std::string_view algorithm_name(AlgorithmKind kind) noexcept;
[[nodiscard]] AlgorithmKind parse_algorithm(std::string_view name);

struct VsRlsConfig {
  /// Iterations t <= switch_iteration use stepsize threshold D; 0 skips the
  /// exploration phase entirely.
  std::uint64_t switch_iteration = 1000;
  /// Stepsize threshold after the switch.
  std::size_t phase2_threshold = 3;
  std::uint64_t max_evals = 1'000'000;
};

/// Hypervolume checkpoints every `every` evaluations against a fixed
/// canonical reference point.
struct TraceSpec {
  std::uint64_t every = 10'000;
  ReferencePoint reference;
};

struct TracePoint {
  std::uint64_t evaluations = 0;
  double hypervolume = 0.0;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Emitted once per outer iteration of the stepsize searches (VS-RLS, SEMO).
struct IterationEvent {
  std::uint64_t iteration = 0;
  std::size_t threshold = 0;      // V_L
  std::size_t last_stepsize = 0;  // N_cb at the last sample
  std::uint64_t evaluations = 0;  // offspring evaluated in this iteration
  bool accepted = false;
  const Archive* archive = nullptr;
};

struct RunOptions {
  std::optional<TraceSpec> trace;
  std::function<void(const IterationEvent&)> on_iteration;
};

/// Configuration echo stored in every record.
struct AlgorithmConfig {
  AlgorithmKind kind = AlgorithmKind::vsrls;
  std::string label;
  std::optional<MoveKind> move;  // absent for RS
  std::uint64_t max_evals = 0;
  std::uint64_t switch_iteration = 0;  // VS-RLS only
  std::size_t phase2_threshold = 0;    // VS-RLS only

  friend bool operator==(const AlgorithmConfig&, const AlgorithmConfig&) = default;
};

/// One seeded execution. Archive objectives are kept canonical in memory;
/// the JSON form carries them in the natural sense.
struct RunRecord {
  AlgorithmConfig config;
  InstanceSpec instance;
  std::uint64_t seed = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t iterations = 0;
  std::vector<Solution> archive;
  std::vector<TracePoint> trace;
  std::optional<ReferencePoint> trace_reference;
  double wall_time_seconds = 0.0;

  [[nodiscard]] std::vector<ObjectiveVector> front() const;
};

/// The variable stepsize randomized local search. Throws
/// std::invalid_argument if the move does not fit the representation or
/// max_evals is zero.
[[nodiscard]] RunRecord run_vsrls(const ProblemInstance& instance, const VsRlsConfig& cfg, MoveKind move,
                                  std::uint64_t seed, const RunOptions& options = {});

/// Fixed stepsize 1 randomized local search.
[[nodiscard]] RunRecord run_semo(const ProblemInstance& instance, MoveKind move, std::uint64_t max_evals,
                                 std::uint64_t seed, const RunOptions& options = {});

/// Pareto local search: exhaustive scale-1 neighbourhood exploration of a
/// random unexplored archive member per step. Stops when the budget is
/// spent or every member has been explored.
[[nodiscard]] RunRecord run_pls(const ProblemInstance& instance, MoveKind move, std::uint64_t max_evals,
                                std::uint64_t seed, const RunOptions& options = {});

/// Uniform random sampling with a non-dominated archive.
[[nodiscard]] RunRecord run_rs(const ProblemInstance& instance, std::uint64_t max_evals, std::uint64_t seed,
                               const RunOptions& options = {});

/// Dispatches on config.kind using config.move (or the problem default).
[[nodiscard]] RunRecord run_algorithm(const ProblemInstance& instance, const AlgorithmConfig& config,
                                      std::uint64_t seed, const RunOptions& options = {});

} // namespace vsrls
