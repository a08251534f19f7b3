#include <bit>

#include "fingeo/kernels.hpp"

namespace fingeo::kernels::scalar {

std::size_t count_members(std::span<const std::uint32_t> ranks, std::span<const std::uint64_t> bits) {
  std::size_t hits = 0;
  for (const std::uint32_t r : ranks) hits += (bits[r >> 6] >> (r & 63u)) & 1u;
  return hits;
}

std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

std::size_t andnot_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & ~b[i]));
  return n;
}

}  // namespace fingeo::kernels::scalar
