#include "vsrls/core.hpp"
#include "vsrls/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace vsrls {

bool ObjectiveVector::is_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

std::size_t genotype_size(const Genotype& g) noexcept {
  return std::visit([](const auto& r) { return r.size(); }, g);
}

bool is_valid(const Genotype& g) {
  if (const auto* b = std::get_if<BitString>(&g)) {
    return std::all_of(b->bits.begin(), b->bits.end(), [](std::uint8_t v) { return v <= 1; });
  }
  const auto& order = std::get<Permutation>(g).order;
  std::vector<bool> seen(order.size(), false);
  for (auto v : order) {
    if (v >= order.size() || seen[v]) {
      return false;
    }
    seen[v] = true;
  }
  return true;
}

BitString bits_from_string(std::string_view text) {
  BitString out;
  out.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    out.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string to_string(const BitString& b) {
  std::string out(b.bits.size(), '0');
  for (std::size_t i = 0; i < b.bits.size(); ++i) {
    out[i] = b.bits[i] ? '1' : '0';
  }
  return out;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
  assert(a.size() == b.size());
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      return false;
    }
    strictly_better = strictly_better || a[i] < b[i];
  }
  return strictly_better;
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      return false;
    }
  }
  return true;
}

std::vector<ObjectiveVector> nondominated_filter(std::span<const ObjectiveVector> points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < points.size() && keep; ++j) {
      if (j != i && dominates(points[j], points[i])) {
        keep = false;
      }
    }
    if (keep) {
      out.push_back(points[i]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --- RngStream -------------------------------------------------------------

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}
} // namespace

RngStream::RngStream(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) {
    s = splitmix64(sm);
  }
}

std::uint64_t RngStream::next() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t RngStream::below(std::uint64_t bound) noexcept {
  assert(bound > 0);
  using u128 = unsigned __int128;
  u128 product = static_cast<u128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::int64_t RngStream::between(std::int64_t lo, std::int64_t hi) noexcept {
  assert(lo <= hi);
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

double RngStream::uniform01() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

} // namespace vsrls
