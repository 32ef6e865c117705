#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vsrls/core.hpp"

namespace vsrls {

/// Duplicate-free set of mutually non-dominated solutions (minimization).
///
/// For two objectives the members are kept sorted by the first objective,
/// which makes the second objective strictly decreasing; the dominance check
/// is then a single binary search. Three or more objectives use a linear scan.
class Archive {
public:
  explicit Archive(std::size_t num_objectives);

  /// Rejects the candidate if any member weakly dominates it (dominates it or
  /// has the same objective vector). Otherwise inserts it, removes every
  /// member it dominates and returns true.
  bool try_insert(Solution candidate);

  /// True iff try_insert would accept a solution with these objectives.
  [[nodiscard]] bool accepts(const ObjectiveVector& objectives) const;

  [[nodiscard]] std::span<const Solution> members() const noexcept { return members_; }
  [[nodiscard]] const Solution& operator[](std::size_t i) const { return members_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
  [[nodiscard]] std::size_t num_objectives() const noexcept { return num_objectives_; }

  [[nodiscard]] std::vector<ObjectiveVector> objective_vectors() const;

  /// Checks both structural invariants; used by tests.
  [[nodiscard]] bool invariants_hold() const;

private:
  bool insert_bi_objective(Solution&& candidate);
  bool insert_general(Solution&& candidate);

  std::size_t num_objectives_;
  std::vector<Solution> members_;
};

} // namespace vsrls
