#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace vsrls {

/// A point in objective space. All search and indicator code works in the
/// canonical minimization form; maximization problems are negated when they
/// are evaluated and un-negated only at the reporting boundary.
class ObjectiveVector {
public:
  ObjectiveVector() = default;
  explicit ObjectiveVector(std::size_t m, double fill = 0.0) : values_(m, fill) {}
  explicit ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {}
  ObjectiveVector(std::initializer_list<double> values) : values_(values) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
  [[nodiscard]] auto end() const noexcept { return values_.end(); }

  [[nodiscard]] bool is_finite() const noexcept;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
  // Lexicographic; only used for ordered containers and canonical output order.
  friend auto operator<=>(const ObjectiveVector&, const ObjectiveVector&) = default;

private:
  std::vector<double> values_;
};

struct BitString {
  std::vector<std::uint8_t> bits;

  [[nodiscard]] std::size_t size() const noexcept { return bits.size(); }
  friend bool operator==(const BitString&, const BitString&) = default;
};

struct Permutation {
  std::vector<std::uint32_t> order;

  [[nodiscard]] std::size_t size() const noexcept { return order.size(); }
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

using Genotype = std::variant<BitString, Permutation>;

[[nodiscard]] std::size_t genotype_size(const Genotype& g) noexcept;
[[nodiscard]] bool is_valid(const Genotype& g);

/// Parses "0101..." into a bit string; throws std::invalid_argument on any
/// other character.
[[nodiscard]] BitString bits_from_string(std::string_view text);
[[nodiscard]] std::string to_string(const BitString& b);

/// A genotype paired with its (cached) evaluation.
struct Solution {
  Genotype genotype;
  ObjectiveVector objectives;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Pareto dominance under minimization: a_i <= b_i everywhere and a != b.
[[nodiscard]] bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept;

/// dominates(a, b) or a == b.
[[nodiscard]] bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept;

/// Pairwise O(n^2) scan. Returns the duplicate-free non-dominated subset,
/// sorted lexicographically.
[[nodiscard]] std::vector<ObjectiveVector> nondominated_filter(std::span<const ObjectiveVector> points);

} // namespace vsrls
