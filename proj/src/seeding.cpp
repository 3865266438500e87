#include "litsim/seeding.hpp"

#include <random>

#include "litsim/error.hpp"

namespace litsim {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t base_seed, uint64_t sample_size, SeedRole role) {
  return splitmix64(splitmix64(splitmix64(base_seed) ^ sample_size) ^
                    static_cast<uint64_t>(role));
}

std::vector<size_t> sample_indices(size_t n, size_t k, uint64_t seed) {
  if (k == 0) {
    throw Error(ErrorCode::argument, "sample size must be positive");
  }
  if (k > n) {
    throw Error(ErrorCode::argument,
                "sample size " + std::to_string(k) +
                    " exceeds population size " + std::to_string(n));
  }
  std::vector<size_t> indices(n);
  for (size_t i = 0; i < n; ++i) indices[i] = i;

  std::mt19937_64 gen(seed);
  for (size_t i = 0; i < k; ++i) {
    // Partial Fisher-Yates; the modulo draw is pinned by the format contract.
    size_t j = i + static_cast<size_t>(gen() % (n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace litsim
