#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fingeo/field.hpp"
#include "fingeo/projspace.hpp"

namespace fingeo {

/// Field reduction between PG(n, p0^h) (the "big" side) and
/// PG(h(n+1)-1, p0) (the "small" side).
///
/// A big-side coordinate a is written over the basis 1, x, ..., x^{h-1} of
/// GF(p0^h) over GF(p0), where x is the field's polynomial-basis generator.
/// The point -> spread element map is cached eagerly as a CSR table of sorted
/// small-side ranks; after construction every query is read-only.
class SpreadContext {
 public:
  /// `big` is PG(n, p^t); `e` selects the subfield GF(p^e), so h = t/e.
  SpreadContext(SpacePtr big, std::uint32_t e);
  static std::shared_ptr<const SpreadContext> make(SpacePtr big, std::uint32_t e) {
    return std::make_shared<const SpreadContext>(std::move(big), e);
  }

  const SpacePtr& big() const noexcept { return big_; }
  const SpacePtr& small() const noexcept { return small_; }
  const SubfieldSpec& subfield() const noexcept { return sub_; }
  std::uint32_t h() const noexcept { return sub_.h; }
  std::uint32_t p0() const noexcept { return sub_.p0; }
  /// Number of spread elements, (p0^{h(n+1)} - 1)/(p0^h - 1).
  std::uint32_t spread_size() const noexcept { return big_->num_points(); }

  /// Image of a small-field element inside the big field.
  Elem embed(Elem small) const noexcept { return embedding_[small]; }
  std::vector<Elem> blow_up(std::span<const Elem> big_vector) const;
  std::vector<Elem> blow_down(std::span<const Elem> small_vector) const;

  /// The big-side point whose spread element contains the small-side point.
  PointRank element_of(PointRank small_point) const noexcept { return element_of_[small_point]; }
  /// Sorted small-side ranks of S(P).
  std::span<const PointRank> element_points(PointRank big_point) const;
  /// S(P) as an (h-1)-space.
  Subspace spread_element(PointRank big_point) const;
  /// S(H): the span of S(P), P in H; dimension h(dim H + 1) - 1.
  Subspace subspace_blow_up(const Subspace& big_subspace) const;

  /// B(pi) = { P : S(P) meets pi }.
  PointSet linear_set_of(const Subspace& pi) const;
  /// Same as linear_set_of, as sorted ranks.
  std::vector<PointRank> linear_set_ranks(const Subspace& pi) const;

  /// The unique small-side line through x whose image is the given subline.
  ///
  /// Only the points of one companion spread element are tried as second
  /// points. Throws XNotOnElement when x is not on an element of the subline,
  /// NotASubline when no line qualifies.
  Subspace transversal_line(std::span<const PointRank> subline_points, PointRank x) const;

 private:
  SpacePtr big_;
  SpacePtr small_;
  SubfieldSpec sub_;
  FieldPtr small_field_;
  std::vector<Elem> embedding_;
  std::vector<Elem> basis_;                 // x^j, j < h
  std::vector<Elem> expand_;                // big elem -> h small coords (flat)
  std::vector<PointRank> element_of_;
  std::vector<std::uint32_t> element_offset_;
  std::vector<PointRank> element_members_;
};

using SpreadPtr = std::shared_ptr<const SpreadContext>;

}  // namespace fingeo
