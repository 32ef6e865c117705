#pragma once

#include <cstdint>
#include <span>

#include "vsrls/core.hpp"

namespace vsrls {

/// Reference point in canonical minimization form.
using ReferencePoint = ObjectiveVector;

/// r_i = max_i + (max_i - min_i) / 10 over the non-dominated subset of the
/// given (random-sampling) front. A zero range falls back to
/// r_i = max_i + max(1, |max_i|) / 10. Throws std::invalid_argument on an
/// empty front.
[[nodiscard]] ReferencePoint reference_point(std::span<const ObjectiveVector> rs_front);

/// Exact dominated area for two objectives. Points that are not strictly
/// better than r in both coordinates contribute nothing.
/// Throws std::invalid_argument if r is not two-dimensional.
[[nodiscard]] double hypervolume_2d(std::span<const ObjectiveVector> front, const ReferencePoint& r);

/// Monte-Carlo estimate: the fraction of uniform samples in the box
/// [ideal(front), r] that some front point weakly dominates, times the box
/// volume. Empty fronts and zero-volume boxes give 0.
[[nodiscard]] double hypervolume_mc(std::span<const ObjectiveVector> front, const ReferencePoint& r,
                                    std::uint64_t samples, std::uint64_t seed);

/// Exact for m = 2; otherwise a Monte-Carlo estimate with 10^5 samples and a
/// fixed seed, so repeated calls agree.
[[nodiscard]] double hypervolume(std::span<const ObjectiveVector> front, const ReferencePoint& r);

struct RankSumResult {
  /// Continuity-corrected z-score of the Mann-Whitney U of xs. Positive when
  /// xs tends to be larger than ys.
  double statistic = 0.0;
  double u = 0.0;
  double p_two_sided = 1.0;

  /// One-sided p-value for the alternative "xs is stochastically larger".
  [[nodiscard]] double p_greater() const;
};

/// Wilcoxon rank-sum / Mann-Whitney test with mid-ranks for ties and the
/// tie-corrected normal approximation. Needs at least 5 values on each side
/// (std::invalid_argument otherwise). Identical pooled values give p = 1.
[[nodiscard]] RankSumResult wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys);

} // namespace vsrls
