#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace litsim {

// SplitMix64 finalizer. All derived seeds flow through this fixed mixer so
// that sampling is reproducible across platforms and releases.
uint64_t splitmix64(uint64_t x);

// Distinguishes the subsample streams drawn for the same (seed, size) pair.
enum class SeedRole : uint64_t {
  generated_sample = 0,
  reference_sample = 1,
};

// Per-(size, role) seed used by the experiment drivers:
//   splitmix64(splitmix64(splitmix64(base) ^ size) ^ role)
uint64_t derive_seed(uint64_t base_seed, uint64_t sample_size, SeedRole role);

// Draws k distinct indices from [0, n) without replacement via a partial
// Fisher-Yates shuffle over the index array [0..n), driven by
// std::mt19937_64(seed) with j = i + gen() % (n - i) at each step. The
// selected indices are returned sorted ascending. This exact procedure is
// part of the output-format contract: identical (n, k, seed) triples give
// identical index sets everywhere.
std::vector<size_t> sample_indices(size_t n, size_t k, uint64_t seed);

}  // namespace litsim
