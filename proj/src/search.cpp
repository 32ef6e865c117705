#include "vsrls/search.hpp"

#include <chrono>
#include <set>
#include <stdexcept>

namespace vsrls {

std::string_view algorithm_name(AlgorithmKind kind) noexcept {
  switch (kind) {
  case AlgorithmKind::vsrls: return "VS-RLS";
  case AlgorithmKind::semo: return "SEMO";
  case AlgorithmKind::pls: return "PLS";
  case AlgorithmKind::rs: return "RS";
  }
  return "unknown";
}

AlgorithmKind parse_algorithm(std::string_view name) {
  for (auto kind : {AlgorithmKind::vsrls, AlgorithmKind::semo, AlgorithmKind::pls, AlgorithmKind::rs}) {
    if (name == algorithm_name(kind)) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::vector<ObjectiveVector> RunRecord::front() const {
  std::vector<ObjectiveVector> out;
  out.reserve(archive.size());
  for (const auto& s : archive) {
    out.push_back(s.objectives);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

// Evaluation budget, archive and hypervolume trace shared by all algorithms.
class BudgetedSearch {
public:
  BudgetedSearch(const ProblemInstance& instance, std::uint64_t max_evals, const RunOptions& options)
      : instance_(instance), max_evals_(max_evals), options_(options), archive_(instance.num_objectives()) {
    if (max_evals == 0) {
      throw std::invalid_argument("evaluation budget must be positive");
    }
  }

  [[nodiscard]] bool exhausted() const noexcept { return used_ >= max_evals_; }
  [[nodiscard]] std::uint64_t used() const noexcept { return used_; }
  [[nodiscard]] const Archive& archive() const noexcept { return archive_; }
  [[nodiscard]] const ProblemInstance& instance() const noexcept { return instance_; }

  /// Evaluates (one evaluation) and offers the result to the archive.
  bool evaluate_and_offer(Genotype g) {
    ++used_;
    const bool accepted = archive_.try_insert(instance_.evaluate(std::move(g)));
    if (options_.trace && used_ % options_.trace->every == 0) {
      const auto front = archive_.objective_vectors();
      trace_.push_back({used_, hypervolume(front, options_.trace->reference)});
    }
    return accepted;
  }

  RunRecord finish(AlgorithmConfig config, std::uint64_t seed, std::uint64_t iterations) {
    RunRecord record;
    record.config = std::move(config);
    record.instance = instance_.spec();
    record.seed = seed;
    record.evaluations = used_;
    record.iterations = iterations;
    record.archive.assign(archive_.members().begin(), archive_.members().end());
    record.trace = std::move(trace_);
    if (options_.trace) {
      record.trace_reference = options_.trace->reference;
    }
    record.wall_time_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return record;
  }

private:
  const ProblemInstance& instance_;
  std::uint64_t max_evals_;
  const RunOptions& options_;
  Archive archive_;
  std::uint64_t used_ = 0;
  std::vector<TracePoint> trace_;
  Clock::time_point start_ = Clock::now();
};

void check_move(const ProblemInstance& instance, MoveKind move) {
  if (!compatible(move, instance.representation())) {
    throw std::invalid_argument("move " + std::string(to_string(move)) + " does not fit a " +
                                std::string(to_string(instance.kind())) + " instance");
  }
}

// VS-RLS main loop; SEMO is the same loop with the threshold pinned at 1.
template <typename ThresholdFn>
std::uint64_t stepsize_search(BudgetedSearch& search, MoveKind move, RngStream& rng, ThresholdFn threshold_for,
                              const RunOptions& options) {
  search.evaluate_and_offer(search.instance().random_genotype(rng));
  std::uint64_t t = 1;
  while (!search.exhausted()) {
    const std::size_t threshold = threshold_for(t);
    const Archive& archive = search.archive();
    // The parent reference stays valid: the archive only changes on
    // acceptance, which ends the inner loop.
    const Genotype& parent = archive[static_cast<std::size_t>(rng.below(archive.size()))].genotype;
    const std::uint64_t before = search.used();
    std::size_t stepsize = 1;
    std::size_t last_stepsize = 0;
    bool accepted = false;
    while (stepsize <= threshold && !search.exhausted()) {
      last_stepsize = stepsize;
      if (search.evaluate_and_offer(sample_within_scale(parent, move, stepsize, rng))) {
        accepted = true;
        break;
      }
      ++stepsize;
    }
    if (options.on_iteration) {
      options.on_iteration(IterationEvent{.iteration = t,
                                          .threshold = threshold,
                                          .last_stepsize = last_stepsize,
                                          .evaluations = search.used() - before,
                                          .accepted = accepted,
                                          .archive = &search.archive()});
    }
    ++t;
  }
  return t - 1;
}

} // namespace

RunRecord run_vsrls(const ProblemInstance& instance, const VsRlsConfig& cfg, MoveKind move, std::uint64_t seed,
                    const RunOptions& options) {
  check_move(instance, move);
  if (cfg.phase2_threshold == 0) {
    throw std::invalid_argument("phase-2 stepsize threshold must be at least 1");
  }
  BudgetedSearch search(instance, cfg.max_evals, options);
  RngStream rng(seed);
  const std::size_t d = instance.dimension();
  const auto iterations = stepsize_search(
      search, move, rng, [&](std::uint64_t t) { return t <= cfg.switch_iteration ? d : cfg.phase2_threshold; },
      options);
  return search.finish(AlgorithmConfig{.kind = AlgorithmKind::vsrls,
                                       .label = std::string(algorithm_name(AlgorithmKind::vsrls)),
                                       .move = move,
                                       .max_evals = cfg.max_evals,
                                       .switch_iteration = cfg.switch_iteration,
                                       .phase2_threshold = cfg.phase2_threshold},
                       seed, iterations);
}

RunRecord run_semo(const ProblemInstance& instance, MoveKind move, std::uint64_t max_evals, std::uint64_t seed,
                   const RunOptions& options) {
  check_move(instance, move);
  BudgetedSearch search(instance, max_evals, options);
  RngStream rng(seed);
  const auto iterations = stepsize_search(search, move, rng, [](std::uint64_t) { return std::size_t{1}; }, options);
  return search.finish(AlgorithmConfig{.kind = AlgorithmKind::semo,
                                       .label = std::string(algorithm_name(AlgorithmKind::semo)),
                                       .move = move,
                                       .max_evals = max_evals},
                       seed, iterations);
}

RunRecord run_pls(const ProblemInstance& instance, MoveKind move, std::uint64_t max_evals, std::uint64_t seed,
                  const RunOptions& options) {
  check_move(instance, move);
  BudgetedSearch search(instance, max_evals, options);
  RngStream rng(seed);
  search.evaluate_and_offer(instance.random_genotype(rng));

  // Archive members never share objective vectors, and a removed vector can
  // never be re-admitted, so the vector identifies an explored member.
  std::set<ObjectiveVector> explored;
  std::vector<std::size_t> unexplored;
  std::uint64_t steps = 0;
  while (!search.exhausted()) {
    const Archive& archive = search.archive();
    unexplored.clear();
    for (std::size_t i = 0; i < archive.size(); ++i) {
      if (!explored.contains(archive[i].objectives)) {
        unexplored.push_back(i);
      }
    }
    if (unexplored.empty()) {
      break;
    }
    const Solution current = archive[unexplored[static_cast<std::size_t>(rng.below(unexplored.size()))]];
    for_each_neighbour(current.genotype, move, [&](Genotype neighbour) {
      if (search.exhausted()) {
        return false;
      }
      search.evaluate_and_offer(std::move(neighbour));
      return true;
    });
    explored.insert(current.objectives);
    ++steps;
  }
  return search.finish(AlgorithmConfig{.kind = AlgorithmKind::pls,
                                       .label = std::string(algorithm_name(AlgorithmKind::pls)),
                                       .move = move,
                                       .max_evals = max_evals},
                       seed, steps);
}

RunRecord run_rs(const ProblemInstance& instance, std::uint64_t max_evals, std::uint64_t seed,
                 const RunOptions& options) {
  BudgetedSearch search(instance, max_evals, options);
  RngStream rng(seed);
  while (!search.exhausted()) {
    search.evaluate_and_offer(instance.random_genotype(rng));
  }
  return search.finish(AlgorithmConfig{.kind = AlgorithmKind::rs,
                                       .label = std::string(algorithm_name(AlgorithmKind::rs)),
                                       .max_evals = max_evals},
                       seed, search.used());
}

RunRecord run_algorithm(const ProblemInstance& instance, const AlgorithmConfig& config, std::uint64_t seed,
                        const RunOptions& options) {
  const MoveKind move = config.move.value_or(default_move(instance.kind()));
  RunRecord record = [&] {
    switch (config.kind) {
    case AlgorithmKind::vsrls:
      return run_vsrls(instance,
                       VsRlsConfig{.switch_iteration = config.switch_iteration,
                                   .phase2_threshold = config.phase2_threshold,
                                   .max_evals = config.max_evals},
                       move, seed, options);
    case AlgorithmKind::semo: return run_semo(instance, move, config.max_evals, seed, options);
    case AlgorithmKind::pls: return run_pls(instance, move, config.max_evals, seed, options);
    case AlgorithmKind::rs: return run_rs(instance, config.max_evals, seed, options);
    }
    throw std::invalid_argument("unknown algorithm");
  }();
  record.config.label = config.label.empty() ? record.config.label : config.label;
  return record;
}

} // namespace vsrls
