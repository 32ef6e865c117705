#include "doctest.h"

#include <numeric>
#include <set>

#include "vsrls/moves.hpp"

using namespace vsrls;

namespace {

std::size_t hamming(const Genotype& a, const Genotype& b) {
  const auto& x = std::get<BitString>(a).bits;
  const auto& y = std::get<BitString>(b).bits;
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d += x[i] != y[i];
  }
  return d;
}

Genotype identity(std::size_t d) {
  Permutation p;
  p.order.resize(d);
  std::iota(p.order.begin(), p.order.end(), 0U);
  return p;
}

Genotype zeros(std::size_t d) { return BitString{std::vector<std::uint8_t>(d, 0)}; }

// Chi-square statistic against a uniform distribution over the bins.
double chi_square(const std::vector<int>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (int c : counts) {
    stat += (c - expected) * (c - expected) / expected;
  }
  return stat;
}

} // namespace

TEST_CASE("move names and defaults") {
  for (auto kind : {MoveKind::one_bit_flip, MoveKind::two_bit_flip, MoveKind::two_opt, MoveKind::two_swap}) {
    CHECK(parse_move_kind(to_string(kind)) == kind);
  }
  CHECK(to_string(MoveKind::two_opt) == "2-opt");
  CHECK_THROWS_AS((void)parse_move_kind("3-opt"), std::invalid_argument);
  CHECK(default_move(ProblemKind::knapsack) == MoveKind::two_bit_flip);
  CHECK(default_move(ProblemKind::nk) == MoveKind::one_bit_flip);
  CHECK(default_move(ProblemKind::tsp) == MoveKind::two_opt);
  CHECK(default_move(ProblemKind::qap) == MoveKind::two_swap);
  CHECK(compatible(MoveKind::two_swap, identity(4)));
  CHECK_FALSE(compatible(MoveKind::two_swap, zeros(4)));
}

TEST_CASE("base move examples") {
  RngStream rng(1);
  SUBCASE("one bit flip changes exactly one position") {
    for (int t = 0; t < 200; ++t) {
      CHECK(hamming(zeros(10), apply_base_move(zeros(10), MoveKind::one_bit_flip, rng)) == 1);
    }
  }
  SUBCASE("two bit flip changes exactly two positions") {
    for (int t = 0; t < 200; ++t) {
      CHECK(hamming(zeros(10), apply_base_move(zeros(10), MoveKind::two_bit_flip, rng)) == 2);
    }
  }
  SUBCASE("two swap exchanges two entries") {
    for (int t = 0; t < 200; ++t) {
      const auto p = std::get<Permutation>(apply_base_move(identity(8), MoveKind::two_swap, rng)).order;
      std::vector<std::size_t> moved;
      for (std::size_t i = 0; i < 8; ++i) {
        if (p[i] != i) {
          moved.push_back(i);
        }
      }
      REQUIRE(moved.size() == 2);
      CHECK(p[moved[0]] == moved[1]);
      CHECK(p[moved[1]] == moved[0]);
    }
  }
  SUBCASE("two opt reverses one contiguous segment") {
    for (int t = 0; t < 200; ++t) {
      const auto p = std::get<Permutation>(apply_base_move(identity(8), MoveKind::two_opt, rng)).order;
      std::size_t lo = 0;
      while (lo < 8 && p[lo] == lo) {
        ++lo;
      }
      std::size_t hi = 7;
      while (p[hi] == hi) {
        --hi;
      }
      REQUIRE(lo < hi);
      for (std::size_t i = lo; i <= hi; ++i) {
        CHECK(p[i] == lo + hi - i);
      }
      CHECK(is_valid(Genotype(Permutation{p})));
    }
  }
  SUBCASE("D = 2 swaps the only pair") {
    const auto p = std::get<Permutation>(apply_base_move(identity(2), MoveKind::two_swap, rng)).order;
    CHECK(p == std::vector<std::uint32_t>{1, 0});
  }
}

TEST_CASE("stepsize draws are uniform on 1..scale") {
  RngStream rng(2024);
  std::vector<int> counts(5, 0);
  for (int t = 0; t < 10000; ++t) {
    const auto k = draw_step_count(5, rng);
    REQUIRE(k >= 1);
    REQUIRE(k <= 5);
    ++counts[k - 1];
  }
  // 4 degrees of freedom, 0.999 quantile.
  CHECK(chi_square(counts) < 18.47);

  RngStream untouched(3);
  RngStream reference(3);
  CHECK(draw_step_count(1, untouched) == 1);
  CHECK(untouched == reference);
}

TEST_CASE("two opt sampled within scale 5 keeps the permutation valid") {
  RngStream rng(77);
  const auto start = identity(50);
  for (int t = 0; t < 10000; ++t) {
    REQUIRE(is_valid(sample_within_scale(start, MoveKind::two_opt, 5, rng)));
  }
}

TEST_CASE("one bit flip within scale 3 lands at Hamming distance 1..3 uniformly") {
  RngStream rng(8);
  std::vector<int> counts(3, 0);
  const auto start = zeros(20);
  for (int t = 0; t < 9000; ++t) {
    const auto h = hamming(start, sample_within_scale(start, MoveKind::one_bit_flip, 3, rng));
    REQUIRE(h >= 1);
    REQUIRE(h <= 3);
    ++counts[h - 1];
  }
  // 2 degrees of freedom, 0.999 quantile.
  CHECK(chi_square(counts) < 13.82);
}

TEST_CASE("two bit flip moves use distinct positions and clamp at D") {
  RngStream rng(5);
  for (std::size_t steps = 1; steps <= 4; ++steps) {
    CHECK(hamming(zeros(8), apply_moves(zeros(8), MoveKind::two_bit_flip, steps, rng)) == 2 * steps);
  }
  CHECK(hamming(zeros(8), apply_moves(zeros(8), MoveKind::two_bit_flip, 100, rng)) == 8);
  CHECK(hamming(zeros(7), apply_moves(zeros(7), MoveKind::two_bit_flip, 100, rng)) == 6);
  CHECK(hamming(zeros(7), apply_moves(zeros(7), MoveKind::one_bit_flip, 100, rng)) == 7);
}

TEST_CASE("one bit flip positions are uniform") {
  RngStream rng(6);
  std::vector<int> counts(10, 0);
  for (int t = 0; t < 20000; ++t) {
    const auto bits = std::get<BitString>(apply_base_move(zeros(10), MoveKind::one_bit_flip, rng)).bits;
    ++counts[static_cast<std::size_t>(std::find(bits.begin(), bits.end(), 1) - bits.begin())];
  }
  // 9 degrees of freedom, 0.999 quantile.
  CHECK(chi_square(counts) < 27.88);
}

TEST_CASE("moves are deterministic per seed and reject mismatches") {
  RngStream a(10);
  RngStream b(10);
  for (int t = 0; t < 100; ++t) {
    CHECK(sample_within_scale(identity(30), MoveKind::two_swap, 30, a) ==
          sample_within_scale(identity(30), MoveKind::two_swap, 30, b));
  }
  CHECK_THROWS_AS((void)apply_base_move(zeros(5), MoveKind::two_opt, a), std::invalid_argument);
  CHECK_THROWS_AS((void)apply_base_move(identity(5), MoveKind::one_bit_flip, a), std::invalid_argument);
  CHECK_THROWS_AS((void)apply_base_move(identity(1), MoveKind::two_swap, a), std::invalid_argument);
}

TEST_CASE("neighbourhood enumeration matches its size and is duplicate-free") {
  for (auto [kind, start] : {std::pair{MoveKind::one_bit_flip, zeros(7)}, std::pair{MoveKind::two_bit_flip, zeros(7)},
                             std::pair{MoveKind::two_swap, identity(7)}, std::pair{MoveKind::two_opt, identity(7)}}) {
    std::vector<Genotype> seen;
    for_each_neighbour(start, kind, [&](Genotype n) {
      seen.push_back(std::move(n));
      return true;
    });
    CHECK(seen.size() == neighbourhood_size(kind, 7));
    for (std::size_t i = 0; i < seen.size(); ++i) {
      CHECK_FALSE(seen[i] == start);
      for (std::size_t j = i + 1; j < seen.size(); ++j) {
        // 2-opt reversing [0, 6] reverses the whole tour; still a distinct genotype.
        CHECK_FALSE(seen[i] == seen[j]);
      }
    }
  }
  CHECK(neighbourhood_size(MoveKind::one_bit_flip, 7) == 7);
  CHECK(neighbourhood_size(MoveKind::two_swap, 7) == 21);

  std::size_t visited = 0;
  for_each_neighbour(zeros(7), MoveKind::one_bit_flip, [&](const Genotype&) { return ++visited < 3; });
  CHECK(visited == 3);
}
