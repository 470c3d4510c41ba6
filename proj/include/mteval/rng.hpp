#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string_view>
#include <vector>

namespace mteval {

// Splitmix64-based generator. All draws are implemented from raw 64-bit
// outputs so that sequences are identical across platforms and standard
// library versions; std::uniform_*_distribution gives no such guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Rejection sampling keeps it exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t rem = (~0ULL) % n;
    const std::uint64_t limit = (~0ULL) - rem;  // multiple of n
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return r % n;
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double real(double lo, double hi) { return lo + (hi - lo) * real(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices from [0, n), returned in increasing order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::uint64_t state_;
};

// Stable stream derivation: mixes string tags into a base seed so that
// independent parts of a pipeline get independent, reproducible streams.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::string_view> tags);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace mteval
