#pragma once

// Data-parallel inner loops of the incidence scans.
//
// Each kernel has a portable scalar reference in kernels::scalar and, on x86-64
// builds, an AVX2 variant in kernels::avx2. The unqualified entry points
// dispatch once at first use: AVX2 when the CPU reports it, scalar otherwise.
// Setting FINGEO_ISA=scalar in the environment pins the reference path.

#include <cstddef>
#include <cstdint>
#include <span>

namespace fingeo::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
Isa active_isa();
bool avx2_available();
/// Overrides the dispatch choice; requesting Avx2 on a machine without it
/// falls back to Scalar. Intended for equivalence tests and benchmarks.
void force_isa(Isa isa);

/// Number of entries of `ranks` whose bit is set in `bits`.
/// Every rank must be < 64 * bits.size().
std::size_t count_members(std::span<const std::uint32_t> ranks, std::span<const std::uint64_t> bits);
/// popcount(a & b) over equal-length bitsets.
std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
/// popcount(a & ~b): members of a missing from b.
std::size_t andnot_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

namespace scalar {
std::size_t count_members(std::span<const std::uint32_t> ranks, std::span<const std::uint64_t> bits);
std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t andnot_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
}  // namespace scalar

#if defined(FINGEO_HAVE_AVX2)
namespace avx2 {
std::size_t count_members(std::span<const std::uint32_t> ranks, std::span<const std::uint64_t> bits);
std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t andnot_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
}  // namespace avx2
#endif

}  // namespace fingeo::kernels
