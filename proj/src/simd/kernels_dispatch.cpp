#include <atomic>
#include <cstdlib>
#include <string_view>

#include "fingeo/kernels.hpp"

namespace fingeo::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("FINGEO_ISA"); env != nullptr && std::string_view(env) == "scalar") {
    return Isa::Scalar;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(FINGEO_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
}

std::size_t count_members(std::span<const std::uint32_t> ranks, std::span<const std::uint64_t> bits) {
#if defined(FINGEO_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::count_members(ranks, bits);
#endif
  return scalar::count_members(ranks, bits);
}

std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
#if defined(FINGEO_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::and_count(a, b);
#endif
  return scalar::and_count(a, b);
}

std::size_t andnot_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
#if defined(FINGEO_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::andnot_count(a, b);
#endif
  return scalar::andnot_count(a, b);
}

}  // namespace fingeo::kernels
