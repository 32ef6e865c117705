#pragma once

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <utility>

#include "vsrls/core.hpp"
#include "vsrls/problems.hpp"
#include "vsrls/rng.hpp"

namespace vsrls {

enum class MoveKind { one_bit_flip, two_bit_flip, two_opt, two_swap };

[[nodiscard]] std::string_view to_string(MoveKind kind) noexcept;
[[nodiscard]] MoveKind parse_move_kind(std::string_view name);

[[nodiscard]] bool compatible(MoveKind kind, const Genotype& g) noexcept;
[[nodiscard]] bool compatible(MoveKind kind, Representation r) noexcept;

/// Knapsack: 2-bit flip, NK: 1-bit flip, TSP: 2-opt, QAP: 2-swap.
[[nodiscard]] MoveKind default_move(ProblemKind kind) noexcept;

/// Number of bit positions one base move touches (0 for permutation moves).
[[nodiscard]] constexpr std::size_t bits_per_move(MoveKind kind) noexcept {
  switch (kind) {
  case MoveKind::one_bit_flip: return 1;
  case MoveKind::two_bit_flip: return 2;
  default: return 0;
  }
}

/// One uniformly drawn base move. The result always differs from g.
/// Throws std::invalid_argument on a kind/representation mismatch or D < 2.
[[nodiscard]] Genotype apply_base_move(const Genotype& g, MoveKind kind, RngStream& rng);

/// Draws the stepsize k uniformly from {1, ..., scale}. scale == 1 consumes
/// no randomness.
[[nodiscard]] std::size_t draw_step_count(std::size_t scale, RngStream& rng);

/// Applies exactly `steps` base moves. For bit-flip kinds all flipped
/// positions are distinct (Hamming distance steps * bits_per_move); steps is
/// clamped to D / bits_per_move. Permutation kinds compose independent moves.
[[nodiscard]] Genotype apply_moves(const Genotype& g, MoveKind kind, std::size_t steps, RngStream& rng);

/// Samples from the neighbourhood of g with scale <= `scale`:
/// apply_moves(g, kind, draw_step_count(scale, rng), rng).
[[nodiscard]] Genotype sample_within_scale(const Genotype& g, MoveKind kind, std::size_t scale, RngStream& rng);

/// Size of the scale-1 neighbourhood for a genotype of length d.
[[nodiscard]] std::size_t neighbourhood_size(MoveKind kind, std::size_t d) noexcept;

/// Visits the whole scale-1 neighbourhood in ascending order: bit index
/// (1-bit flip), lexicographic index pairs (i < j) for 2-bit flip, 2-swap,
/// and for 2-opt the reversed segment [i, j]. The visitor returns false to
/// stop early.
template <typename Visitor>
void for_each_neighbour(const Genotype& g, MoveKind kind, Visitor&& visit) {
  const std::size_t d = genotype_size(g);
  switch (kind) {
  case MoveKind::one_bit_flip:
    for (std::size_t i = 0; i < d; ++i) {
      BitString n = std::get<BitString>(g);
      n.bits[i] ^= 1U;
      if (!visit(Genotype(std::move(n)))) {
        return;
      }
    }
    return;
  case MoveKind::two_bit_flip:
  case MoveKind::two_swap:
  case MoveKind::two_opt:
    for (std::size_t i = 0; i + 1 < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        Genotype n = g;
        if (kind == MoveKind::two_bit_flip) {
          auto& bits = std::get<BitString>(n).bits;
          bits[i] ^= 1U;
          bits[j] ^= 1U;
        } else if (kind == MoveKind::two_swap) {
          auto& order = std::get<Permutation>(n).order;
          std::swap(order[i], order[j]);
        } else {
          auto& order = std::get<Permutation>(n).order;
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        }
        if (!visit(std::move(n))) {
          return;
        }
      }
    }
    return;
  }
}

} // namespace vsrls
