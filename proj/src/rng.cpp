#include "mteval/rng.hpp"

#include <algorithm>

namespace mteval {

std::vector<std::size_t> Rng::sample_indices(std::size_t n, std::size_t k) {
  if (k > n) k = n;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // partial Fisher-Yates: the first k slots end up a uniform sample
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::string_view> tags) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const auto& tag : tags) {
    for (unsigned char c : tag) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    h ^= 0x1F;  // tag separator, so {"ab","c"} != {"a","bc"}
    h *= 0x100000001B3ULL;
  }
  // one splitmix64 step to decorrelate from the raw hash
  std::uint64_t z = base ^ h;
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace mteval
