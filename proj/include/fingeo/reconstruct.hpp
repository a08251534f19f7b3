#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fingeo/exact.hpp"
#include "fingeo/fieldreduction.hpp"
#include "fingeo/projspace.hpp"

namespace fingeo {

enum class ReconstructStatus {
  Success,
  DimTooSmall,        // dim W < hk
  DimTooLarge,        // dim W > hk
  ImageProperSubset,  // B(W) strictly inside B
  ImageOverflow,      // B(W) has points outside B
};
std::string to_string(ReconstructStatus s);

struct ReconstructionResult {
  PointRank base_point = 0;  // P
  PointRank x = 0;           // min-rank point of S(P)
  std::vector<std::vector<PointRank>> secants_used;  // traces B cap L_i, sorted
  std::vector<std::vector<PointRank>> skipped;       // (p0+1)-traces that are not sublines
  std::vector<Subspace> transversals;                // l_i, same order as secants_used
  Subspace w;
  int dim_w = -1;
  int expected_dim = 0;  // hk
  bool image_equal = false;
  ReconstructStatus status = ReconstructStatus::DimTooSmall;
  bool success() const { return status == ReconstructStatus::Success; }
};

enum class PointPolicy { First, All };

/// Rebuilds pi with B(pi) = b from the (p0+1)-secants through one point.
/// Policy First uses the lowest-rank point of b on a (p0+1)-secant, All every
/// such point. Throws NoSublineSecant, NotBlocking (when check_blocking) and
/// BadParams (hk above the small-side dimension).
std::vector<ReconstructionResult> reconstruct(const PointSet& b, int k, const SpreadContext& ctx,
                                              PointPolicy policy = PointPolicy::First, bool check_blocking = true);

/// Runs the steps for a given P and x (x must lie on S(P)).
ReconstructionResult reconstruct_at(const PointSet& b, int k, const SpreadContext& ctx, PointRank p, PointRank x);

struct SpanLemmaReport {
  std::size_t transversals = 0;
  std::uint64_t pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> failing;  // indices into the transversals
};

/// B(<l_i, l_j>) inside b for every pair of transversals through x.
SpanLemmaReport check_span_lemma(const PointSet& b, int k, const SpreadContext& ctx, PointRank p, PointRank x);

/// p0^{h-1} - 4p0^{h-2} + 1 for k = 1, and
/// ((p0^{hk}-1)/(p0^h-1) - 3p0^{hk-h-3})(p0^{h-1} - 4p0^{h-2}) + 1 for k > 1.
Rational secant_count_bound(std::uint64_t p0, std::uint32_t h, int k);

struct SecantBoundReport {
  bool applicable = false;
  std::string note;
  Rational bound;
  std::vector<std::pair<PointRank, std::size_t>> counts;  // points on a (p0+1)-secant
  std::vector<PointRank> violations;
};

/// Compares each point's number of (p0+1)-secants with secant_count_bound.
SecantBoundReport secant_count_bounds(const PointSet& b, int k, const SpreadContext& ctx,
                                      std::optional<bool> in_hypothesis = std::nullopt);

}  // namespace fingeo
