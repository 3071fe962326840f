#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace stw {

// Seeded permutations that come out identical on every platform: the raw
// std::mt19937_64 stream is fixed by the standard, and the bounded draw
// below is plain rejection sampling instead of a library distribution.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound); bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

// Fisher-Yates, swapping position i with a draw from [0, i].
template <typename T>
void seeded_shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace stw
