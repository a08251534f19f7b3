// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "fingeo/kernels.hpp"

namespace fingeo::kernels::avx2 {

namespace {

// Nibble-lookup popcount (Mula), summed per 64-bit lane.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::size_t hsum_epi64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

template <bool kNegateB>
std::size_t masked_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    const __m256i m = kNegateB ? _mm256_andnot_si256(vb, va) : _mm256_and_si256(va, vb);
    acc = _mm256_add_epi64(acc, popcount_epi64(m));
  }
  std::size_t total = hsum_epi64(acc);
  for (; i < n; ++i) {
    const std::uint64_t m = kNegateB ? (a[i] & ~b[i]) : (a[i] & b[i]);
    total += static_cast<std::size_t>(std::popcount(m));
  }
  return total;
}

}  // namespace

std::size_t count_members(std::span<const std::uint32_t> ranks, std::span<const std::uint64_t> bits) {
  // Gather 32-bit words: word index r >> 5, bit r & 31 (little-endian layout).
  const auto* words = reinterpret_cast<const int*>(bits.data());
  const std::size_t n = ranks.size();
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i low5 = _mm256_set1_epi32(31);
  for (; i + 8 <= n; i += 8) {
    const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ranks.data() + i));
    const __m256i idx = _mm256_srli_epi32(r, 5);
    const __m256i w = _mm256_i32gather_epi32(words, idx, 4);
    const __m256i bit = _mm256_and_si256(_mm256_srlv_epi32(w, _mm256_and_si256(r, low5)), one);
    acc = _mm256_add_epi32(acc, bit);
  }
  alignas(32) std::uint32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t hits = 0;
  for (const auto v : lanes) hits += v;
  for (; i < n; ++i) hits += (bits[ranks[i] >> 6] >> (ranks[i] & 63u)) & 1u;
  return hits;
}

std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return masked_count<false>(a, b);
}

std::size_t andnot_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return masked_count<true>(a, b);
}

}  // namespace fingeo::kernels::avx2
