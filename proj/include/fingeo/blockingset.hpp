#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fingeo/exact.hpp"
#include "fingeo/projspace.hpp"

namespace fingeo {

/// x_i: the number of dim-subspaces meeting B in exactly i points.
struct IntersectionSpectrum {
  int dim = 0;
  std::uint64_t total = 0;
  std::map<std::uint64_t, std::uint64_t> x;

  std::uint64_t at(std::uint64_t i) const {
    const auto it = x.find(i);
    return it == x.end() ? 0 : it->second;
  }
  BigInt sum() const;           // sum x_i
  BigInt sum_i() const;         // sum i x_i
  BigInt sum_i_i1() const;      // sum i(i-1) x_i
  std::uint64_t max_size() const { return x.empty() ? 0 : x.rbegin()->first; }
};

enum class SpectrumMethod { Auto, Enumerate, Incidence };

/// All dim-subspaces, counted by size of intersection with b.
IntersectionSpectrum spectrum(const PointSet& b, int dim, SpectrumMethod method = SpectrumMethod::Auto);

/// Every line meeting b in at least two points, each listed once, ordered by
/// smallest member. Members are kept flat (offset table) since 2-secants can
/// number in the millions.
class SecantLines {
 public:
  std::size_t size() const noexcept { return offset_.size() - 1; }
  std::span<const PointRank> members(std::size_t i) const {
    return {members_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  Subspace line(const ProjectiveSpace& space, std::size_t i) const {
    return space.span_points(members(i).first(2));
  }
  void append(std::span<const PointRank> m) {
    members_.insert(members_.end(), m.begin(), m.end());
    offset_.push_back(members_.size());
  }
  void append(const SecantLines& o) {
    for (std::size_t i = 0; i < o.size(); ++i) append(o.members(i));
  }

 private:
  std::vector<std::size_t> offset_{0};
  std::vector<PointRank> members_;
};

SecantLines secant_lines(const PointSet& b);

struct BlockingCheck {
  bool blocking = false;
  std::optional<Subspace> uncovered;
};

BlockingCheck is_k_blocking(const PointSet& b, int k);

/// |B| < 3(q^k + 1)/2.
bool smallness(std::uint64_t size, std::uint64_t q, int k);
bool smallness(const PointSet& b, int k);

/// Largest e <= t with every (n-k)-space meeting b in 1 mod p^e points; 0
/// when no e >= 1 fits. Throws NotBlocking.
std::uint32_t exponent(const PointSet& b, int k);
std::uint32_t exponent_from_spectrum(const IntersectionSpectrum& s, std::uint32_t p, std::uint32_t t);

enum class MinimalityMethod { Direct, Criterion };

struct MinimalityCheck {
  bool minimal = false;
  std::optional<PointRank> removable;
};

MinimalityCheck is_minimal(const PointSet& b, int k, MinimalityMethod method = MinimalityMethod::Direct);

/// A dim-space through p meeting b only in p, if one exists.
std::optional<Subspace> find_tangent_space(const PointSet& b, PointRank p, int dim);

struct RedeiCheck {
  bool redei = false;
  std::optional<Subspace> hyperplane;
};

RedeiCheck is_redei(const PointSet& b, int k);

struct BlockingReport {
  int k = 0;
  std::size_t size = 0;
  bool is_blocking = false;
  bool is_small = false;
  std::uint32_t exponent = 0;
  bool is_minimal = false;
  bool is_redei = false;
  std::optional<Subspace> uncovered;
  std::optional<PointRank> removable;
  std::optional<Subspace> redei_hyperplane;
  IntersectionSpectrum spectrum;  // over (n-k)-spaces
};

BlockingReport analyze(const PointSet& b, int k);

/// Size thresholds bracketing the forbidden interval for |B cap Pi| with
/// dim Pi = n-k+s: below small_threshold or above large_threshold.
Rational small_threshold(std::uint64_t p0, std::uint32_t h, int s);
Rational large_threshold(std::uint64_t p0, std::uint32_t h, int s);

enum class SizeSide { Small, Large, Gap };
std::string to_string(SizeSide side);

struct SizeClass {
  SizeSide side = SizeSide::Small;
  bool applicable = false;  // p0 >= 7, 1 mod p0 spectrum, 0 <= s <= k
  int s = 0;
  std::uint64_t count = 0;
  Rational small_bound;
  Rational large_bound;
  std::string note;
};

/// Reports the side of the gap without throwing; `one_mod_p0` states whether
/// b meets every (n-k)-space in 1 mod p0 points.
SizeClass classify_report(const PointSet& b, int k, std::uint64_t p0, std::uint32_t h, const Subspace& pi,
                          bool one_mod_p0);

/// Throws NotApplicable outside the hypotheses and GapViolation for a count
/// inside the forbidden interval.
SizeSide classify_small_large(const PointSet& b, int k, std::uint64_t p0, std::uint32_t h, const Subspace& pi);

/// True iff every (n-k)-space meets b in 1 mod m points.
bool one_mod_spectrum(const IntersectionSpectrum& s, std::uint64_t m);

/// An i-space through the line l meeting b exactly in b cap l.
Subspace tangent_extension(const PointSet& b, int k, const Subspace& l, int i);

struct PointSecants {
  PointRank point = 0;
  std::map<std::size_t, std::size_t> sizes;  // secant size -> number of such lines through the point
  std::uint64_t tangent_lines = 0;
  std::size_t p0_secants = 0;                // lines through the point with p0+1 points of b
  std::optional<Subspace> tangent_space;     // an (n-k)-space meeting b only here
};

struct SecantReport {
  BigInt kappa;  // |B| - q^k
  std::vector<PointSecants> points;  // sorted by point rank
  std::map<std::size_t, std::size_t> line_sizes;  // secant size -> number of lines
  std::uint64_t points_off_secants = 0;           // outside b and on no secant
};

/// Per-point secant statistics. `p0` selects which size counts as a
/// (p0+1)-secant; tangent (n-k)-spaces are searched when requested.
SecantReport secant_analysis(const PointSet& b, int k, std::uint64_t p0, bool find_tangents = false);

/// Line spectrum derived from secant lines (cheap path for dim 1).
IntersectionSpectrum line_spectrum(const PointSet& b, const SecantLines& secants);

/// Every dim-space meeting b in at least min_count >= 1 points, with its
/// count, in a deterministic order.
std::vector<std::pair<Subspace, std::size_t>> subspaces_meeting(const PointSet& b, int dim, std::size_t min_count);

/// The first dim-space (enumeration order) meeting b in exactly `count` points.
std::optional<Subspace> find_subspace_with_count(const PointSet& b, int dim, std::size_t count);

/// A point outside b on no secant line of b, if any.
std::optional<PointRank> point_off_secants(const PointSet& b);

/// A k-space contained in b, if any (used to spot trivial blocking sets).
std::optional<Subspace> find_contained_subspace(const PointSet& b, int k);

}  // namespace fingeo
