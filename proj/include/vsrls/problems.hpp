#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vsrls/core.hpp"
#include "vsrls/rng.hpp"

namespace vsrls {

enum class ProblemKind { knapsack, tsp, qap, nk };

[[nodiscard]] std::string_view to_string(ProblemKind kind) noexcept;
/// Accepts "knapsack", "tsp", "qap", "nk"; throws std::invalid_argument otherwise.
[[nodiscard]] ProblemKind parse_problem_kind(std::string_view name);

/// Knapsack and NK are maximization problems; TSP and QAP are minimization.
[[nodiscard]] constexpr bool is_maximization(ProblemKind kind) noexcept {
  return kind == ProblemKind::knapsack || kind == ProblemKind::nk;
}

/// Converts between the natural objective sense of a problem and the
/// canonical minimization form. The mapping is its own inverse.
[[nodiscard]] ObjectiveVector to_canonical(ProblemKind kind, ObjectiveVector natural);
[[nodiscard]] ObjectiveVector to_natural(ProblemKind kind, ObjectiveVector canonical);

/// Everything needed to regenerate an instance.
struct InstanceSpec {
  ProblemKind kind = ProblemKind::knapsack;
  std::size_t dimension = 0;   // D
  std::size_t objectives = 2;  // m
  std::optional<std::size_t> interactions;  // K, NK only
  std::uint64_t seed = 0;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

/// Stable identifier used in file names, e.g. "nk-D100-m2-K10-s7".
[[nodiscard]] std::string instance_id(const InstanceSpec& spec);

/// Multi-objective 0-1 knapsack. Row-major m x D matrices.
struct KnapsackInstance {
  InstanceSpec spec;
  std::vector<std::int32_t> values;
  std::vector<std::int32_t> weights;
  std::vector<std::int64_t> capacities;
  // Derived: items sorted by ascending max_j(v_ji / w_ji), ties by index.
  // This is the removal order of the greedy repair.
  std::vector<std::uint32_t> repair_order;

  [[nodiscard]] std::int32_t value(std::size_t j, std::size_t i) const { return values[j * spec.dimension + i]; }
  [[nodiscard]] std::int32_t weight(std::size_t j, std::size_t i) const { return weights[j * spec.dimension + i]; }

  friend bool operator==(const KnapsackInstance&, const KnapsackInstance&) = default;
};

/// Multi-objective symmetric TSP; costs holds m row-major D x D matrices.
struct TspInstance {
  InstanceSpec spec;
  std::vector<double> costs;

  [[nodiscard]] double cost(std::size_t j, std::size_t a, std::size_t b) const {
    const std::size_t d = spec.dimension;
    return costs[(j * d + a) * d + b];
  }

  friend bool operator==(const TspInstance&, const TspInstance&) = default;
};

struct Location {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Location&, const Location&) = default;
};

/// Multi-objective QAP. flows holds m row-major D x D matrices (asymmetric),
/// distances is the Euclidean D x D matrix between locations.
struct QapInstance {
  InstanceSpec spec;
  std::vector<double> flows;
  std::vector<Location> locations;
  std::vector<double> distances;

  [[nodiscard]] double flow(std::size_t k, std::size_t a, std::size_t b) const {
    const std::size_t d = spec.dimension;
    return flows[(k * d + a) * d + b];
  }
  [[nodiscard]] double distance(std::size_t u, std::size_t v) const { return distances[u * spec.dimension + v]; }

  friend bool operator==(const QapInstance&, const QapInstance&) = default;
};

/// Multi-objective NK-landscape with random neighbourhoods.
///
/// partners is D x K. tables holds, for every bit i and objective j, a block
/// of 2^(K+1) contributions at offset (i * m + j) * 2^(K+1). The block index
/// is built with bit i as the most significant bit followed by the partner
/// bits in stored order.
struct NkInstance {
  InstanceSpec spec;
  std::vector<std::uint32_t> partners;
  std::vector<double> tables;

  [[nodiscard]] std::size_t interactions() const { return spec.interactions.value_or(0); }
  [[nodiscard]] std::size_t table_size() const { return std::size_t{1} << (interactions() + 1); }

  friend bool operator==(const NkInstance&, const NkInstance&) = default;
};

enum class Representation { bit_string, permutation };

/// One of the four instance kinds plus the generic evaluation entry point.
class ProblemInstance {
public:
  using Variant = std::variant<KnapsackInstance, TspInstance, QapInstance, NkInstance>;

  explicit ProblemInstance(Variant instance);

  [[nodiscard]] const InstanceSpec& spec() const noexcept;
  [[nodiscard]] ProblemKind kind() const noexcept { return spec().kind; }
  [[nodiscard]] std::size_t dimension() const noexcept { return spec().dimension; }
  [[nodiscard]] std::size_t num_objectives() const noexcept { return spec().objectives; }
  [[nodiscard]] Representation representation() const noexcept;
  [[nodiscard]] const Variant& get() const noexcept { return instance_; }

  /// Evaluates in canonical minimization form. For knapsack the returned
  /// genotype is the repaired one.
  [[nodiscard]] Solution evaluate(Genotype genotype) const;

  /// Uniform bit string or uniformly shuffled permutation.
  [[nodiscard]] Genotype random_genotype(RngStream& rng) const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

private:
  Variant instance_;
};

/// Deterministic in all arguments. Throws std::invalid_argument when D < 2,
/// m < 2, K is given for a non-NK kind, or K >= D.
[[nodiscard]] ProblemInstance generate_instance(const InstanceSpec& spec);

/// Recomputes the knapsack repair order from values and weights.
void prepare_knapsack(KnapsackInstance& inst);

/// Greedy repair then evaluation. Objectives are negated total values.
[[nodiscard]] std::pair<BitString, ObjectiveVector> evaluate_knapsack(const KnapsackInstance& inst, BitString g);
[[nodiscard]] ObjectiveVector evaluate_tsp(const TspInstance& inst, const Permutation& g);
[[nodiscard]] ObjectiveVector evaluate_qap(const QapInstance& inst, const Permutation& g);
[[nodiscard]] ObjectiveVector evaluate_nk(const NkInstance& inst, const BitString& g);

/// Checks the per-kind invariants (value ranges, symmetry, partner validity,
/// table sizes). Used after loading instance files and by tests.
[[nodiscard]] bool invariants_hold(const ProblemInstance& instance);

} // namespace vsrls
