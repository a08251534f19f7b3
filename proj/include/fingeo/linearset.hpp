#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fingeo/fieldreduction.hpp"
#include "fingeo/projspace.hpp"

namespace fingeo {

/// B(pi) together with the small-side subspace that defines it.
struct LinearSetWitness {
  SpreadPtr ctx;
  Subspace pi;
  PointSet points;
  int rank() const { return static_cast<int>(pi.vector_dim()); }
};

LinearSetWitness build_linear_set(SpreadPtr ctx, const Subspace& pi);

/// Parameters for the built-in families. Which fields matter depends on the
/// family:
///   subgeometry:   m                  canonical PG(m, p0) in the first m+1 coordinates
///   redei_trace:   k                  {(x_1..x_k, sum Tr(x_i), lambda, 0..)}, rank hk+1
///   cone:          vertex_dim, m      <S(V), base> with V the first vertex_dim+1
///                                     coordinates and a PG(m, p0) base in the next m+1
///   subspace:      m                  the m-space of the first m+1 coordinates (trivial)
///   random_rank_r: r, seed            span of r vectors drawn from std::mt19937_64(seed),
///                                     coordinate = draw % p0, redrawn until rank r
struct FamilyParams {
  std::string family;
  std::uint32_t p = 0;
  std::uint32_t t = 0;
  std::uint32_t n = 0;
  std::uint32_t e = 1;  // subfield GF(p^e)
  int m = 0;
  int k = 1;
  int vertex_dim = 0;
  int r = 0;
  std::uint64_t seed = 0;
};

LinearSetWitness build_family(const FamilyParams& params);

enum class LinearityStrategy { ReconstructFirst, Exhaustive };

struct LinearityResult {
  bool linear = false;
  std::optional<LinearSetWitness> witness;
  std::string method;        // "reconstruct", "exhaustive" or "trivial"
  int rank_cap = 0;          // largest vector rank searched exhaustively
  std::uint64_t examined = 0;  // candidate subspaces visited
  std::string certificate;   // what was searched when no witness exists
};

/// Decides whether b = B(pi) for some small-side pi. `k` (the blocking
/// dimension, 0 if unknown) caps the exhaustive search at vector rank hk+1.
/// Exhaustive search is refused (TooLarge) above 10^4 small-side points.
LinearityResult is_linear(const PointSet& b, const SpreadPtr& ctx, LinearityStrategy strategy, int k = 0);

/// Every GF(p0)-subline of the big-side line l, each once, as sorted ranks.
void enumerate_sublines(const SpreadContext& ctx, const Subspace& l,
                        const std::function<void(std::span<const PointRank>)>& fn);
std::vector<std::vector<PointRank>> sublines_of(const SpreadContext& ctx, const Subspace& l);

/// Whether `points` (sorted) is a GF(p0)-subline.
bool is_subline(const SpreadContext& ctx, std::span<const PointRank> points);

struct SublineMeetReport {
  int rank = 0;
  std::uint64_t lines = 0;
  std::uint64_t sublines = 0;
  std::map<std::size_t, std::uint64_t> sizes;  // |subline cap S| -> count
  std::vector<std::vector<PointRank>> violations;
};

/// Meets every subline of every secant line of the linear set with it; sizes
/// outside {0..rank} and p0+1 are violations.
SublineMeetReport subline_meet_check(const LinearSetWitness& s);

struct SecantLinearityReport {
  bool applicable = false;
  std::string note;
  std::uint64_t secants = 0;  // (p0+1)-secants checked
  std::vector<std::vector<PointRank>> failures;  // traces that are not sublines
};

/// For every (p0+1)-secant L decides whether b cap L is a subline.
/// `in_hypothesis` states whether b is small, minimal, with exponent e and
/// p0 = p^e >= 7; when absent it is computed.
SecantLinearityReport secant_linearity_check(const PointSet& b, int k, const SpreadContext& ctx,
                                             std::optional<bool> in_hypothesis = std::nullopt);

/// Checks small, minimal, p0 = p^e with e the exponent, p0 >= 7.
bool within_main_hypotheses(const PointSet& b, int k, const SpreadContext& ctx, std::string* why = nullptr);

}  // namespace fingeo
