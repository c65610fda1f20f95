#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tenet {

// All randomness in the engine comes from std::mt19937_64 engines. A run
// seed is expanded into independent per-task streams with SplitMix64, so
// results never depend on how tasks are scheduled across threads.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Seed for sub-stream `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform integer in [0, bound) without modulo bias.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Fisher-Yates shuffle with a portable index sequence (std::shuffle's
// output is implementation-defined).
template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

// Standard normal draw via Box-Muller on the engine's raw output.
double standard_normal(Rng& rng);

}  // namespace tenet
