#include "vsrls/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vsrls/rng.hpp"

namespace vsrls {

ReferencePoint reference_point(std::span<const ObjectiveVector> rs_front) {
  if (rs_front.empty()) {
    throw std::invalid_argument("reference point needs a non-empty front");
  }
  const auto front = nondominated_filter(rs_front);
  const std::size_t m = front.front().size();
  ReferencePoint r(m);
  for (std::size_t i = 0; i < m; ++i) {
    double lo = front.front()[i];
    double hi = lo;
    for (const auto& p : front) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    const double range = hi - lo;
    r[i] = range > 0.0 ? hi + range / 10.0 : hi + std::max(1.0, std::abs(hi)) / 10.0;
  }
  return r;
}

double hypervolume_2d(std::span<const ObjectiveVector> front, const ReferencePoint& r) {
  if (r.size() != 2) {
    throw std::invalid_argument("hypervolume_2d needs two objectives");
  }
  std::vector<std::pair<double, double>> pts;
  pts.reserve(front.size());
  for (const auto& p : front) {
    if (p.size() != 2) {
      throw std::invalid_argument("hypervolume_2d needs two objectives");
    }
    if (p[0] < r[0] && p[1] < r[1]) {
      pts.emplace_back(p[0], p[1]);
    }
  }
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  double ceiling = r[1];
  for (const auto& [x, y] : pts) {
    if (y < ceiling) {
      area += (r[0] - x) * (ceiling - y);
      ceiling = y;
    }
  }
  return area;
}

double hypervolume_mc(std::span<const ObjectiveVector> front, const ReferencePoint& r, std::uint64_t samples,
                      std::uint64_t seed) {
  if (front.empty() || samples == 0) {
    return 0.0;
  }
  const std::size_t m = r.size();
  ObjectiveVector lower = r;
  for (const auto& p : front) {
    for (std::size_t i = 0; i < m; ++i) {
      lower[i] = std::min(lower[i], p[i]);
    }
  }
  double volume = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    volume *= r[i] - lower[i];
  }
  if (!(volume > 0.0)) {
    return 0.0;
  }
  // Row-major copy of the front keeps the per-sample scan cache friendly.
  std::vector<double> flat;
  flat.reserve(front.size() * m);
  for (const auto& p : front) {
    flat.insert(flat.end(), p.begin(), p.end());
  }
  RngStream rng(seed);
  std::vector<double> sample(m);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < m; ++i) {
      sample[i] = lower[i] + (r[i] - lower[i]) * rng.uniform01();
    }
    for (std::size_t offset = 0; offset < flat.size(); offset += m) {
      std::size_t i = 0;
      while (i < m && flat[offset + i] <= sample[i]) {
        ++i;
      }
      if (i == m) {
        ++hits;
        break;
      }
    }
  }
  return volume * static_cast<double>(hits) / static_cast<double>(samples);
}

double hypervolume(std::span<const ObjectiveVector> front, const ReferencePoint& r) {
  if (r.size() == 2) {
    return hypervolume_2d(front, r);
  }
  return hypervolume_mc(front, r, 100'000, 0);
}

double RankSumResult::p_greater() const {
  return 0.5 * std::erfc(statistic / std::sqrt(2.0));
}

RankSumResult wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 5 || ys.size() < 5) {
    throw std::invalid_argument("rank-sum test needs at least 5 observations per sample");
  }
  const std::size_t n1 = xs.size();
  const std::size_t n2 = ys.size();
  const std::size_t n = n1 + n2;

  std::vector<std::pair<double, bool>> pooled;  // (value, from xs)
  pooled.reserve(n);
  for (double x : xs) {
    pooled.emplace_back(x, true);
  }
  for (double y : ys) {
    pooled.emplace_back(y, false);
  }
  std::sort(pooled.begin(), pooled.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_x = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) {
      ++j;
    }
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second) {
        rank_sum_x += mid_rank;
      }
    }
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  const double d1 = static_cast<double>(n1);
  const double d2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  RankSumResult result;
  result.u = rank_sum_x - d1 * (d1 + 1.0) / 2.0;
  const double mean = d1 * d2 / 2.0;
  const double variance = d1 * d2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (!(variance > 0.0)) {
    return result;
  }
  const double diff = result.u - mean;
  const double corrected = std::max(std::abs(diff) - 0.5, 0.0);
  result.statistic = std::copysign(corrected, diff) / std::sqrt(variance);
  if (corrected == 0.0) {
    result.statistic = 0.0;
  }
  result.p_two_sided = std::min(1.0, std::erfc(std::abs(result.statistic) / std::sqrt(2.0)));
  return result;
}

} // namespace vsrls
