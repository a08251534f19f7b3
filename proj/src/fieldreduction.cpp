#include "fingeo/fieldreduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace fingeo {

namespace {

Elem eval_prime_poly(const Field& f, const std::vector<std::uint32_t>& coeffs, Elem at) {
  Elem acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, at), coeffs[i]);
  return acc;
}

}  // namespace

SpreadContext::SpreadContext(SpacePtr big, std::uint32_t e) : big_(std::move(big)) {
  const Field& bf = big_->field();
  sub_ = make_subfield(bf, e);
  small_field_ = Field::make(bf.p(), e);
  const std::uint32_t h = sub_.h;
  const std::uint32_t coords = big_->coords();
  small_ = ProjectiveSpace::make(small_field_, h * coords - 1);

  // Root of the small modulus inside the big field; with Conway polynomials
  // on both sides the norm-compatible candidate is the root.
  const auto& smod = small_field_->modulus();
  Elem root = 0;
  bool found = false;
  if (e == 1) {
    root = small_field_->x();
    found = true;
  } else {
    const Elem preferred = bf.pow(bf.generator(), (bf.q() - 1) / (sub_.p0 - 1));
    if (eval_prime_poly(bf, smod, preferred) == 0) {
      root = preferred;
      found = true;
    }
    for (Elem c = 0; !found && c < bf.q(); ++c) {
      if (eval_prime_poly(bf, smod, c) == 0) {
        root = c;
        found = true;
      }
    }
  }
  if (!found) throw Error(ErrorCode::BadDivisor, "subfield modulus has no root in " + bf.name());

  embedding_.assign(sub_.p0, 0);
  for (Elem s = 0; s < sub_.p0; ++s) {
    const auto d = small_field_->digits(s);
    Elem acc = 0;
    Elem pw = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      acc = bf.add(acc, bf.mul(d[i], pw));
      pw = bf.mul(pw, root);
    }
    embedding_[s] = (e == 1) ? s : acc;
  }

  basis_.assign(h, 1);
  for (std::uint32_t j = 1; j < h; ++j) basis_[j] = bf.mul(basis_[j - 1], bf.x());

  expand_.assign(static_cast<std::size_t>(bf.q()) * h, 0);
  std::vector<bool> seen(bf.q(), false);
  std::vector<Elem> lambda(h, 0);
  for (std::uint32_t idx = 0; idx < bf.q(); ++idx) {
    std::uint32_t v = idx;
    Elem a = 0;
    for (std::uint32_t j = 0; j < h; ++j) {
      lambda[j] = v % sub_.p0;
      v /= sub_.p0;
      a = bf.add(a, bf.mul(embedding_[lambda[j]], basis_[j]));
    }
    if (seen[a]) throw std::logic_error("polynomial basis is not a basis over the subfield");
    seen[a] = true;
    std::copy(lambda.begin(), lambda.end(), expand_.begin() + static_cast<std::ptrdiff_t>(a) * h);
  }

  const std::uint32_t nsmall = small_->num_points();
  element_of_.assign(nsmall, 0);
  std::vector<Elem> w(small_->coords());
  for (PointRank s = 0; s < nsmall; ++s) {
    small_->point_into(s, w);
    element_of_[s] = big_->rank(blow_down(w));
  }
  element_offset_.assign(static_cast<std::size_t>(big_->num_points()) + 1, 0);
  for (auto b : element_of_) ++element_offset_[b + 1];
  for (std::size_t i = 1; i < element_offset_.size(); ++i) element_offset_[i] += element_offset_[i - 1];
  element_members_.assign(nsmall, 0);
  std::vector<std::uint32_t> fill(element_offset_.begin(), element_offset_.end() - 1);
  for (PointRank s = 0; s < nsmall; ++s) element_members_[fill[element_of_[s]]++] = s;
}

std::vector<Elem> SpreadContext::blow_up(std::span<const Elem> big_vector) const {
  if (big_vector.size() != big_->coords()) throw Error(ErrorCode::DimensionMismatch, "big-side vector length");
  const std::uint32_t h = sub_.h;
  std::vector<Elem> out(big_vector.size() * h);
  for (std::size_t i = 0; i < big_vector.size(); ++i) {
    std::copy_n(expand_.begin() + static_cast<std::ptrdiff_t>(big_vector[i]) * h, h,
                out.begin() + static_cast<std::ptrdiff_t>(i * h));
  }
  return out;
}

std::vector<Elem> SpreadContext::blow_down(std::span<const Elem> small_vector) const {
  if (small_vector.size() != small_->coords()) throw Error(ErrorCode::DimensionMismatch, "small-side vector length");
  const Field& bf = big_->field();
  const std::uint32_t h = sub_.h;
  std::vector<Elem> out(big_->coords(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Elem a = 0;
    for (std::uint32_t j = 0; j < h; ++j) {
      const Elem c = small_vector[i * h + j];
      if (c != 0) a = bf.add(a, bf.mul(embedding_[c], basis_[j]));
    }
    out[i] = a;
  }
  return out;
}

std::span<const PointRank> SpreadContext::element_points(PointRank big_point) const {
  if (big_point >= big_->num_points()) throw Error(ErrorCode::DimensionMismatch, "big-side point rank out of range");
  const auto b = element_offset_[big_point];
  const auto e = element_offset_[big_point + 1];
  return {element_members_.data() + b, e - b};
}

Subspace SpreadContext::spread_element(PointRank big_point) const {
  if (big_point >= big_->num_points()) throw Error(ErrorCode::DimensionMismatch, "big-side point rank out of range");
  return subspace_blow_up(big_->span_points(std::span<const PointRank>(&big_point, 1)));
}

Subspace SpreadContext::subspace_blow_up(const Subspace& big_subspace) const {
  const Field& bf = big_->field();
  std::vector<Elem> rows;
  for (std::size_t i = 0; i < big_subspace.vector_dim(); ++i) {
    const auto r = big_subspace.row(i);
    std::vector<Elem> scaled(r.size());
    for (std::uint32_t j = 0; j < sub_.h; ++j) {
      for (std::size_t c = 0; c < r.size(); ++c) scaled[c] = bf.mul(r[c], basis_[j]);
      const auto up = blow_up(scaled);
      rows.insert(rows.end(), up.begin(), up.end());
    }
  }
  return small_->subspace(std::move(rows));
}

std::vector<PointRank> SpreadContext::linear_set_ranks(const Subspace& pi) const {
  std::vector<PointRank> pts;
  small_->points_of(pi, pts);
  for (auto& p : pts) p = element_of_[p];
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

PointSet SpreadContext::linear_set_of(const Subspace& pi) const { return PointSet(big_, linear_set_ranks(pi)); }

Subspace SpreadContext::transversal_line(std::span<const PointRank> subline_points, PointRank x) const {
  if (x >= small_->num_points()) throw Error(ErrorCode::DimensionMismatch, "small-side point rank out of range");
  std::vector<PointRank> target(subline_points.begin(), subline_points.end());
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());
  const PointRank base = element_of_[x];
  if (!std::binary_search(target.begin(), target.end(), base)) {
    throw Error(ErrorCode::XNotOnElement, "x lies on no spread element of the subline");
  }
  if (target.size() != sub_.p0 + 1) {
    throw Error(ErrorCode::NotASubline, std::to_string(target.size()) + " points, a subline has " +
                                            std::to_string(sub_.p0 + 1));
  }
  const PointRank companion = target[0] == base ? target[1] : target[0];
  std::vector<Subspace> hits;
  for (const PointRank y : element_points(companion)) {
    const PointRank pair[2] = {x, y};
    Subspace line = small_->span_points(pair);
    if (linear_set_ranks(line) == target) hits.push_back(std::move(line));
  }
  if (hits.empty()) throw Error(ErrorCode::NotASubline, "no line through x maps onto the given points");
  if (hits.size() > 1) throw std::logic_error("transversal line through x is not unique");
  return hits.front();
}

}  // namespace fingeo
