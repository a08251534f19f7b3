#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fingeo/exact.hpp"
#include "fingeo/field.hpp"

namespace fingeo {

/// Dense index of a point of PG(n,q).
using PointRank = std::uint32_t;

class ProjectiveSpace;
using SpacePtr = std::shared_ptr<const ProjectiveSpace>;

/// A projective subspace held as its canonical reduced row-echelon basis.
/// Equal subspaces have identical basis matrices. The empty subspace has no
/// rows and projective dimension -1.
class Subspace {
 public:
  Subspace() = default;
  /// Reduces arbitrary rows (row-major, `ncols` each) to canonical form.
  Subspace(const Field& field, std::size_t ncols, std::vector<Elem> rows);

  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t vector_dim() const noexcept { return pivots_.size(); }
  int dim() const noexcept { return static_cast<int>(pivots_.size()) - 1; }
  bool empty() const noexcept { return pivots_.empty(); }
  std::span<const Elem> row(std::size_t i) const { return {rows_.data() + i * ncols_, ncols_}; }
  const std::vector<Elem>& rows() const noexcept { return rows_; }
  const std::vector<std::uint32_t>& pivots() const noexcept { return pivots_; }

  bool contains(const Field& field, std::span<const Elem> v) const;
  bool contains(const Field& field, const Subspace& other) const;
  /// Basis of the annihilator: vectors w with <row, w> = 0 for every row.
  std::vector<Elem> dual_rows(const Field& field) const;

  bool operator==(const Subspace& o) const { return ncols_ == o.ncols_ && rows_ == o.rows_; }
  bool operator<(const Subspace& o) const { return rows_ < o.rows_; }

  /// Installs rows already known to be in canonical form (no reduction).
  void assign_canonical(std::size_t ncols, std::vector<Elem> rows, std::vector<std::uint32_t> pivots);

 private:
  std::size_t ncols_ = 0;
  std::vector<Elem> rows_;
  std::vector<std::uint32_t> pivots_;
};

/// In-place RREF of `rows` (row-major); returns the rank and fills pivots.
std::size_t row_reduce(const Field& field, std::size_t ncols, std::vector<Elem>& rows,
                       std::vector<std::uint32_t>& pivots);

/// Walks the subspaces of a fixed dimension of PG(m,q) in a fixed order:
/// pivot sets in lexicographic order, then free entries as a base-q counter.
/// The walk can start at any index, so ranges can be handed to workers.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(std::uint32_t m, std::uint32_t q, int dim);

  std::uint64_t count() const noexcept { return total_; }
  void seek(std::uint64_t index);
  /// Writes the next subspace as canonical rows over encodings 0..q-1 of the
  /// coefficient alphabet; returns false when exhausted.
  bool next(std::vector<Elem>& rows, std::vector<std::uint32_t>& pivots);

 private:
  void load_combo();
  bool advance_combo();

  std::uint32_t ncols_;
  std::uint32_t q_;
  std::uint32_t r_;
  std::uint64_t total_ = 0;
  std::uint64_t position_ = 0;
  std::vector<std::uint32_t> combo_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> free_;  // (row, column)
  std::vector<std::uint32_t> counter_;
  bool fresh_ = true;
};

/// PG(n,q) over a given field: ranking of points, subspace construction,
/// enumeration and projection.
///
/// Points are ranked by pivot position (the index of the leading 1 of the
/// normalized coordinate vector, ascending) and then lexicographically by the
/// remaining coordinates' encodings.
class ProjectiveSpace {
 public:
  ProjectiveSpace(FieldPtr field, std::uint32_t n);
  static SpacePtr make(FieldPtr field, std::uint32_t n) { return std::make_shared<const ProjectiveSpace>(std::move(field), n); }

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t coords() const noexcept { return n_ + 1; }
  std::uint32_t num_points() const noexcept { return num_points_; }

  /// Scales v so its first nonzero entry is 1; false for the zero vector.
  bool normalize(std::span<Elem> v) const;
  /// Rank of an already-normalized vector.
  PointRank rank_normalized(std::span<const Elem> v) const;
  /// Rank of any nonzero vector (throws EmptyInput for zero).
  PointRank rank(std::span<const Elem> v) const;
  std::vector<Elem> point(PointRank r) const;
  void point_into(PointRank r, std::span<Elem> out) const;

  Subspace subspace(std::vector<Elem> rows) const;
  Subspace span_points(std::span<const PointRank> points) const;
  Subspace span(const Subspace& a, const Subspace& b) const;
  Subspace span(std::span<const Subspace> parts) const;
  Subspace meet(const Subspace& a, const Subspace& b) const;
  Subspace whole() const;
  /// The hyperplane sum_i a_i X_i = 0.
  Subspace hyperplane(std::span<const Elem> coefficients) const;

  bool contains(const Subspace& s, PointRank p) const;
  std::uint64_t points_in(const Subspace& s) const;
  /// Point ranks of s in the subspace's own enumeration order.
  std::vector<PointRank> points_of(const Subspace& s) const;
  void points_of(const Subspace& s, std::vector<PointRank>& out) const;

  BigInt count_subspaces(int dim) const;
  /// Visits every dim-subspace once; the callback returns false to stop.
  void for_each_subspace(int dim, const std::function<bool(const Subspace&)>& fn) const;
  /// Same, restricted to the half-open index range [begin, end).
  void for_each_subspace(int dim, std::uint64_t begin, std::uint64_t end,
                         const std::function<bool(const Subspace&)>& fn) const;
  /// Visits every dim-subspace containing `through`, once each.
  void for_each_subspace_through(const Subspace& through, int dim,
                                 const std::function<bool(const Subspace&)>& fn) const;
  BigInt count_subspaces_through(const Subspace& through, int dim) const;

  /// Coordinates of a point of s relative to s's canonical basis, as a point
  /// of PG(dim s, q).
  std::vector<Elem> coordinates_in(const Subspace& s, std::span<const Elem> v) const;

 private:
  FieldPtr field_;
  std::uint32_t n_;
  std::uint32_t num_points_;
  std::vector<std::uint64_t> offset_;  // first rank of each pivot position
  std::vector<std::uint64_t> qpow_;    // q^i
};

/// A set of points of one projective space with O(1) membership.
class PointSet {
 public:
  PointSet() = default;
  PointSet(SpacePtr space, std::vector<PointRank> ranks);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return ranks_.size(); }
  bool empty() const noexcept { return ranks_.empty(); }
  /// Sorted ascending, no duplicates.
  const std::vector<PointRank>& ranks() const noexcept { return ranks_; }
  std::span<const std::uint64_t> bits() const noexcept { return bits_; }
  bool contains(PointRank r) const noexcept { return r < limit_ && ((bits_[r >> 6] >> (r & 63u)) & 1u); }
  std::size_t count_in(std::span<const PointRank> points) const;
  std::size_t count_in(const Subspace& s) const;
  bool is_subset_of(const PointSet& o) const;
  bool operator==(const PointSet& o) const { return ranks_ == o.ranks_; }

 private:
  SpacePtr space_;
  std::vector<PointRank> ranks_;
  std::vector<std::uint64_t> bits_;
  PointRank limit_ = 0;
};

/// { <Q,R> meet H : R in B } for a hyperplane H and Q outside H and B.
PointSet project(const PointSet& b, PointRank q, const Subspace& h);

/// Re-expresses the points of b lying in s as a set of PG(dim s, q).
PointSet restrict_to(const PointSet& b, const Subspace& s);

}  // namespace fingeo
