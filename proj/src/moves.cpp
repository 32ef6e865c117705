#include "vsrls/moves.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vsrls {

std::string_view to_string(MoveKind kind) noexcept {
  switch (kind) {
  case MoveKind::one_bit_flip: return "1-bit-flip";
  case MoveKind::two_bit_flip: return "2-bit-flip";
  case MoveKind::two_opt: return "2-opt";
  case MoveKind::two_swap: return "2-swap";
  }
  return "unknown";
}

MoveKind parse_move_kind(std::string_view name) {
  for (auto kind : {MoveKind::one_bit_flip, MoveKind::two_bit_flip, MoveKind::two_opt, MoveKind::two_swap}) {
    if (name == to_string(kind)) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown move kind '" + std::string(name) + "'");
}

bool compatible(MoveKind kind, Representation r) noexcept {
  return (bits_per_move(kind) > 0) == (r == Representation::bit_string);
}

bool compatible(MoveKind kind, const Genotype& g) noexcept {
  return compatible(kind, std::holds_alternative<BitString>(g) ? Representation::bit_string
                                                                 : Representation::permutation);
}

MoveKind default_move(ProblemKind kind) noexcept {
  switch (kind) {
  case ProblemKind::knapsack: return MoveKind::two_bit_flip;
  case ProblemKind::tsp: return MoveKind::two_opt;
  case ProblemKind::qap: return MoveKind::two_swap;
  case ProblemKind::nk: return MoveKind::one_bit_flip;
  }
  return MoveKind::one_bit_flip;
}

std::size_t neighbourhood_size(MoveKind kind, std::size_t d) noexcept {
  return kind == MoveKind::one_bit_flip ? d : d * (d - 1) / 2;
}

namespace {

void check_arguments(const Genotype& g, MoveKind kind) {
  if (!compatible(kind, g)) {
    throw std::invalid_argument("move " + std::string(to_string(kind)) + " does not apply to this representation");
  }
  if (genotype_size(g) < 2) {
    throw std::invalid_argument("moves need a genotype of length at least 2");
  }
}

// Flips `count` distinct uniformly chosen positions: a partial Fisher-Yates
// over the index set, i.e. a uniform random subset of that size.
void flip_distinct(BitString& b, std::size_t count, RngStream& rng) {
  const std::size_t d = b.size();
  if (count == 1) {
    b.bits[rng.below(d)] ^= 1U;
    return;
  }
  std::vector<std::uint32_t> index(d);
  std::iota(index.begin(), index.end(), 0U);
  for (std::size_t p = 0; p < count; ++p) {
    const auto pick = p + static_cast<std::size_t>(rng.below(d - p));
    std::swap(index[p], index[pick]);
    b.bits[index[p]] ^= 1U;
  }
}

// Two distinct positions i < j, uniform over all pairs.
std::pair<std::size_t, std::size_t> distinct_pair(std::size_t d, RngStream& rng) {
  auto i = static_cast<std::size_t>(rng.below(d));
  auto j = static_cast<std::size_t>(rng.below(d - 1));
  if (j >= i) {
    ++j;
  }
  return {std::min(i, j), std::max(i, j)};
}

void permutation_move(Permutation& p, MoveKind kind, RngStream& rng) {
  const auto [i, j] = distinct_pair(p.size(), rng);
  if (kind == MoveKind::two_swap) {
    std::swap(p.order[i], p.order[j]);
  } else {
    std::reverse(p.order.begin() + static_cast<std::ptrdiff_t>(i), p.order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  }
}

} // namespace

Genotype apply_base_move(const Genotype& g, MoveKind kind, RngStream& rng) {
  return apply_moves(g, kind, 1, rng);
}

std::size_t draw_step_count(std::size_t scale, RngStream& rng) {
  if (scale == 0) {
    throw std::invalid_argument("stepsize scale must be at least 1");
  }
  return scale == 1 ? 1 : 1 + static_cast<std::size_t>(rng.below(scale));
}

Genotype apply_moves(const Genotype& g, MoveKind kind, std::size_t steps, RngStream& rng) {
  check_arguments(g, kind);
  Genotype out = g;
  if (const std::size_t per_move = bits_per_move(kind); per_move > 0) {
    auto& b = std::get<BitString>(out);
    steps = std::clamp<std::size_t>(steps, 1, b.size() / per_move);
    flip_distinct(b, steps * per_move, rng);
    return out;
  }
  auto& p = std::get<Permutation>(out);
  for (std::size_t s = 0; s < steps; ++s) {
    permutation_move(p, kind, rng);
  }
  return out;
}

Genotype sample_within_scale(const Genotype& g, MoveKind kind, std::size_t scale, RngStream& rng) {
  check_arguments(g, kind);
  const std::size_t steps = draw_step_count(scale, rng);
  return apply_moves(g, kind, steps, rng);
}

} // namespace vsrls
