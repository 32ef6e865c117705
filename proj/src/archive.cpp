#include "vsrls/archive.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace vsrls {

Archive::Archive(std::size_t num_objectives) : num_objectives_(num_objectives) {
  if (num_objectives == 0) {
    throw std::invalid_argument("archive needs at least one objective");
  }
}

bool Archive::try_insert(Solution candidate) {
  assert(candidate.objectives.size() == num_objectives_);
  assert(candidate.objectives.is_finite());
  if (num_objectives_ == 2) {
    return insert_bi_objective(std::move(candidate));
  }
  return insert_general(std::move(candidate));
}

namespace {

// First member whose first objective is strictly greater than f1.
auto upper_by_first(const std::vector<Solution>& members, double f1) {
  return std::upper_bound(members.begin(), members.end(), f1,
                          [](double v, const Solution& s) { return v < s.objectives[0]; });
}

auto lower_by_first(std::vector<Solution>& members, double f1) {
  return std::lower_bound(members.begin(), members.end(), f1,
                          [](const Solution& s, double v) { return s.objectives[0] < v; });
}

} // namespace

bool Archive::accepts(const ObjectiveVector& objectives) const {
  if (num_objectives_ == 2) {
    // Among members with f1 <= c1, the last one has the smallest f2.
    auto it = upper_by_first(members_, objectives[0]);
    return it == members_.begin() || std::prev(it)->objectives[1] > objectives[1];
  }
  return std::none_of(members_.begin(), members_.end(), [&](const Solution& s) {
    return weakly_dominates(s.objectives, objectives);
  });
}

bool Archive::insert_bi_objective(Solution&& candidate) {
  const double c1 = candidate.objectives[0];
  const double c2 = candidate.objectives[1];
  if (!accepts(candidate.objectives)) {
    return false;
  }
  // Members with f1 >= c1 and f2 >= c2 are dominated; since f2 decreases
  // along the order they form one contiguous run starting at lower_bound(c1).
  auto first = lower_by_first(members_, c1);
  auto last = first;
  while (last != members_.end() && last->objectives[1] >= c2) {
    ++last;
  }
  first = members_.erase(first, last);
  members_.insert(first, std::move(candidate));
  return true;
}

bool Archive::insert_general(Solution&& candidate) {
  if (!accepts(candidate.objectives)) {
    return false;
  }
  std::erase_if(members_, [&](const Solution& s) { return dominates(candidate.objectives, s.objectives); });
  members_.push_back(std::move(candidate));
  return true;
}

std::vector<ObjectiveVector> Archive::objective_vectors() const {
  std::vector<ObjectiveVector> out;
  out.reserve(members_.size());
  for (const auto& s : members_) {
    out.push_back(s.objectives);
  }
  return out;
}

bool Archive::invariants_hold() const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = 0; j < members_.size(); ++j) {
      if (i != j && weakly_dominates(members_[i].objectives, members_[j].objectives)) {
        return false;
      }
    }
  }
  if (num_objectives_ == 2) {
    for (std::size_t i = 1; i < members_.size(); ++i) {
      const auto& a = members_[i - 1].objectives;
      const auto& b = members_[i].objectives;
      if (!(a[0] < b[0] && a[1] > b[1])) {
        return false;
      }
    }
  }
  return true;
}

} // namespace vsrls
