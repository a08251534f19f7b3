#include "fingeo/projspace.hpp"

#include <algorithm>

#include "fingeo/kernels.hpp"

namespace fingeo {

std::size_t row_reduce(const Field& field, std::size_t ncols, std::vector<Elem>& rows,
                       std::vector<std::uint32_t>& pivots) {
  pivots.clear();
  if (ncols == 0) {
    rows.clear();
    return 0;
  }
  const std::size_t nrows = rows.size() / ncols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t sel = r;
    while (sel < nrows && rows[sel * ncols + col] == 0) ++sel;
    if (sel == nrows) continue;
    if (sel != r) {
      std::swap_ranges(rows.begin() + static_cast<std::ptrdiff_t>(sel * ncols),
                       rows.begin() + static_cast<std::ptrdiff_t>((sel + 1) * ncols),
                       rows.begin() + static_cast<std::ptrdiff_t>(r * ncols));
    }
    Elem* prow = rows.data() + r * ncols;
    const Elem scale = field.inv(prow[col]);
    for (std::size_t j = col; j < ncols; ++j) prow[j] = field.mul(prow[j], scale);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r) continue;
      Elem* row = rows.data() + i * ncols;
      const Elem c = row[col];
      if (c == 0) continue;
      const Elem nc = field.neg(c);
      for (std::size_t j = col; j < ncols; ++j) {
        if (prow[j] != 0) row[j] = field.add(row[j], field.mul(nc, prow[j]));
      }
    }
    pivots.push_back(static_cast<std::uint32_t>(col));
    ++r;
  }
  rows.resize(r * ncols);
  return r;
}

Subspace::Subspace(const Field& field, std::size_t ncols, std::vector<Elem> rows) : ncols_(ncols), rows_(std::move(rows)) {
  if (ncols_ == 0 || rows_.size() % ncols_ != 0) {
    throw Error(ErrorCode::DimensionMismatch, "row data does not match column count");
  }
  row_reduce(field, ncols_, rows_, pivots_);
}

void Subspace::assign_canonical(std::size_t ncols, std::vector<Elem> rows, std::vector<std::uint32_t> pivots) {
  ncols_ = ncols;
  rows_ = std::move(rows);
  pivots_ = std::move(pivots);
}

bool Subspace::contains(const Field& field, std::span<const Elem> v) const {
  if (v.size() != ncols_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from subspace ambient");
  std::vector<Elem> w(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const Elem c = w[pivots_[i]];
    if (c == 0) continue;
    const Elem nc = field.neg(c);
    const auto r = row(i);
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (r[j] != 0) w[j] = field.add(w[j], field.mul(nc, r[j]));
    }
  }
  return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Field& field, const Subspace& other) const {
  for (std::size_t i = 0; i < other.vector_dim(); ++i) {
    if (!contains(field, other.row(i))) return false;
  }
  return true;
}

std::vector<Elem> Subspace::dual_rows(const Field& field) const {
  std::vector<bool> is_pivot(ncols_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<Elem> out;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Elem> w(ncols_, 0);
    w[f] = 1;
    for (std::size_t i = 0; i < pivots_.size(); ++i) w[pivots_[i]] = field.neg(row(i)[f]);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

// --- SubspaceEnumerator ---------------------------------------------------

SubspaceEnumerator::SubspaceEnumerator(std::uint32_t m, std::uint32_t q, int dim)
    : ncols_(m + 1), q_(q), r_(static_cast<std::uint32_t>(dim + 1)) {
  if (dim < -1 || dim > static_cast<int>(m)) {
    throw Error(ErrorCode::RangeError, "subspace dimension " + std::to_string(dim) + " outside PG(" + std::to_string(m) + ")");
  }
  const BigInt total = gaussian_binomial(ncols_, r_, q_);
  if (total > BigInt(std::numeric_limits<std::uint64_t>::max() / 2)) {
    throw Error(ErrorCode::TooLarge, "too many subspaces to enumerate");
  }
  total_ = static_cast<std::uint64_t>(total);
  seek(0);
}

void SubspaceEnumerator::load_combo() {
  free_.clear();
  std::vector<bool> is_pivot(ncols_, false);
  for (auto c : combo_) is_pivot[c] = true;
  for (std::uint32_t i = 0; i < r_; ++i) {
    for (std::uint32_t j = combo_[i] + 1; j < ncols_; ++j) {
      if (!is_pivot[j]) free_.emplace_back(i, j);
    }
  }
  counter_.assign(free_.size(), 0);
}

bool SubspaceEnumerator::advance_combo() {
  if (r_ == 0) return false;
  std::int64_t i = static_cast<std::int64_t>(r_) - 1;
  while (i >= 0 && combo_[static_cast<std::size_t>(i)] == ncols_ - r_ + static_cast<std::uint32_t>(i)) --i;
  if (i < 0) return false;
  ++combo_[static_cast<std::size_t>(i)];
  for (std::size_t j = static_cast<std::size_t>(i) + 1; j < r_; ++j) combo_[j] = combo_[j - 1] + 1;
  return true;
}

void SubspaceEnumerator::seek(std::uint64_t index) {
  combo_.resize(r_);
  for (std::uint32_t i = 0; i < r_; ++i) combo_[i] = i;
  position_ = std::min(index, total_);
  if (position_ == total_) return;
  std::uint64_t rest = position_;
  for (;;) {
    load_combo();
    std::uint64_t cnt = 1;
    for (std::size_t k = 0; k < free_.size(); ++k) cnt *= q_;
    if (rest < cnt) break;
    rest -= cnt;
    advance_combo();
  }
  for (std::size_t k = free_.size(); k-- > 0;) {
    counter_[k] = static_cast<std::uint32_t>(rest % q_);
    rest /= q_;
  }
}

bool SubspaceEnumerator::next(std::vector<Elem>& rows, std::vector<std::uint32_t>& pivots) {
  if (position_ >= total_) return false;
  rows.assign(static_cast<std::size_t>(r_) * ncols_, 0);
  for (std::uint32_t i = 0; i < r_; ++i) rows[static_cast<std::size_t>(i) * ncols_ + combo_[i]] = 1;
  for (std::size_t k = 0; k < free_.size(); ++k) {
    rows[static_cast<std::size_t>(free_[k].first) * ncols_ + free_[k].second] = counter_[k];
  }
  pivots.assign(combo_.begin(), combo_.end());
  ++position_;
  if (position_ < total_) {
    std::size_t k = free_.size();
    bool carried = true;
    while (carried && k-- > 0) {
      if (++counter_[k] == q_) {
        counter_[k] = 0;
      } else {
        carried = false;
      }
    }
    if (carried) {
      advance_combo();
      load_combo();
    }
  }
  return true;
}

// --- ProjectiveSpace ------------------------------------------------------

ProjectiveSpace::ProjectiveSpace(FieldPtr field, std::uint32_t n) : field_(std::move(field)), n_(n) {
  const std::uint64_t q = field_->q();
  qpow_.assign(n_ + 2, 1);
  for (std::uint32_t i = 1; i < n_ + 2; ++i) {
    qpow_[i] = qpow_[i - 1] * q;
    if (qpow_[i] > (std::uint64_t{1} << 40)) throw Error(ErrorCode::TooLarge, "projective space too large to rank");
  }
  offset_.assign(n_ + 2, 0);
  for (std::uint32_t i = 0; i <= n_; ++i) offset_[i + 1] = offset_[i] + qpow_[n_ - i];
  if (offset_[n_ + 1] >= (std::uint64_t{1} << 31)) throw Error(ErrorCode::TooLarge, "projective space too large to rank");
  num_points_ = static_cast<std::uint32_t>(offset_[n_ + 1]);
}

bool ProjectiveSpace::normalize(std::span<Elem> v) const {
  auto it = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
  if (it == v.end()) return false;
  if (*it == 1) return true;
  const Elem s = field_->inv(*it);
  for (auto jt = it; jt != v.end(); ++jt) *jt = field_->mul(*jt, s);
  return true;
}

PointRank ProjectiveSpace::rank_normalized(std::span<const Elem> v) const {
  std::uint32_t i = 0;
  while (v[i] == 0) ++i;
  std::uint64_t r = offset_[i];
  for (std::uint32_t j = i + 1; j <= n_; ++j) r += v[j] * qpow_[n_ - j];
  return static_cast<PointRank>(r);
}

PointRank ProjectiveSpace::rank(std::span<const Elem> v) const {
  if (v.size() != coords()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length differs from n+1");
  std::vector<Elem> w(v.begin(), v.end());
  if (!normalize(w)) throw Error(ErrorCode::EmptyInput, "zero vector is not a point");
  return rank_normalized(w);
}

void ProjectiveSpace::point_into(PointRank r, std::span<Elem> out) const {
  if (r >= num_points_) throw Error(ErrorCode::RangeError, "point rank out of range");
  std::uint32_t i = 0;
  while (offset_[i + 1] <= r) ++i;
  std::uint64_t rem = r - offset_[i];
  std::fill(out.begin(), out.end(), 0);
  out[i] = 1;
  for (std::uint32_t j = n_; j > i; --j) {
    out[j] = static_cast<Elem>(rem % field_->q());
    rem /= field_->q();
  }
}

std::vector<Elem> ProjectiveSpace::point(PointRank r) const {
  std::vector<Elem> v(coords());
  point_into(r, v);
  return v;
}

Subspace ProjectiveSpace::subspace(std::vector<Elem> rows) const { return Subspace(*field_, coords(), std::move(rows)); }

Subspace ProjectiveSpace::span_points(std::span<const PointRank> points) const {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "span of no objects");
  std::vector<Elem> rows;
  rows.reserve(points.size() * coords());
  for (auto p : points) {
    const auto v = point(p);
    rows.insert(rows.end(), v.begin(), v.end());
  }
  return subspace(std::move(rows));
}

Subspace ProjectiveSpace::span(const Subspace& a, const Subspace& b) const {
  std::vector<Elem> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return subspace(std::move(rows));
}

Subspace ProjectiveSpace::span(std::span<const Subspace> parts) const {
  if (parts.empty()) throw Error(ErrorCode::EmptyInput, "span of no objects");
  std::vector<Elem> rows;
  for (const auto& s : parts) rows.insert(rows.end(), s.rows().begin(), s.rows().end());
  return subspace(std::move(rows));
}

Subspace ProjectiveSpace::meet(const Subspace& a, const Subspace& b) const {
  if (a.empty() || b.empty()) return Subspace(*field_, coords(), {});
  std::vector<Elem> dual = a.dual_rows(*field_);
  const auto db = b.dual_rows(*field_);
  dual.insert(dual.end(), db.begin(), db.end());
  if (dual.empty()) return subspace(whole().rows());
  const Subspace d(*field_, coords(), std::move(dual));
  return subspace(d.dual_rows(*field_));
}

Subspace ProjectiveSpace::whole() const {
  std::vector<Elem> rows(static_cast<std::size_t>(coords()) * coords(), 0);
  for (std::uint32_t i = 0; i < coords(); ++i) rows[static_cast<std::size_t>(i) * coords() + i] = 1;
  return subspace(std::move(rows));
}

Subspace ProjectiveSpace::hyperplane(std::span<const Elem> coefficients) const {
  const Subspace normal = subspace(std::vector<Elem>(coefficients.begin(), coefficients.end()));
  if (normal.empty()) throw Error(ErrorCode::EmptyInput, "hyperplane with zero coefficients");
  return subspace(normal.dual_rows(*field_));
}

bool ProjectiveSpace::contains(const Subspace& s, PointRank p) const { return s.contains(*field_, point(p)); }

std::uint64_t ProjectiveSpace::points_in(const Subspace& s) const {
  const std::uint64_t q = field_->q();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < s.vector_dim(); ++i) total = total * q + 1;
  return total;
}

void ProjectiveSpace::points_of(const Subspace& s, std::vector<PointRank>& out) const {
  out.clear();
  const std::size_t r = s.vector_dim();
  const std::uint32_t q = field_->q();
  const std::size_t nc = coords();
  std::vector<Elem> v(nc);
  std::vector<Elem> coef;
  for (std::size_t lead = 0; lead < r; ++lead) {
    const std::size_t tail = r - lead - 1;
    coef.assign(tail, 0);
    const std::uint32_t piv = s.pivots()[lead];
    for (;;) {
      const auto base = s.row(lead);
      std::copy(base.begin(), base.end(), v.begin());
      for (std::size_t k = 0; k < tail; ++k) {
        const Elem c = coef[k];
        if (c == 0) continue;
        const auto row = s.row(lead + 1 + k);
        for (std::size_t j = s.pivots()[lead + 1 + k]; j < nc; ++j) {
          if (row[j] != 0) v[j] = field_->add(v[j], field_->mul(c, row[j]));
        }
      }
      std::uint64_t rank = offset_[piv];
      for (std::size_t j = piv + 1; j < nc; ++j) rank += v[j] * qpow_[n_ - j];
      out.push_back(static_cast<PointRank>(rank));
      std::size_t k = tail;
      bool carried = true;
      while (carried && k-- > 0) {
        if (++coef[k] == q) {
          coef[k] = 0;
        } else {
          carried = false;
        }
      }
      if (carried) break;
    }
  }
}

std::vector<PointRank> ProjectiveSpace::points_of(const Subspace& s) const {
  std::vector<PointRank> out;
  points_of(s, out);
  return out;
}

BigInt ProjectiveSpace::count_subspaces(int dim) const {
  if (dim < -1 || dim > static_cast<int>(n_)) throw Error(ErrorCode::RangeError, "subspace dimension out of range");
  return gaussian_binomial(n_ + 1, dim + 1, field_->q());
}

void ProjectiveSpace::for_each_subspace(int dim, const std::function<bool(const Subspace&)>& fn) const {
  for_each_subspace(dim, 0, std::numeric_limits<std::uint64_t>::max(), fn);
}

void ProjectiveSpace::for_each_subspace(int dim, std::uint64_t begin, std::uint64_t end,
                                        const std::function<bool(const Subspace&)>& fn) const {
  SubspaceEnumerator en(n_, field_->q(), dim);
  en.seek(begin);
  std::vector<Elem> rows;
  std::vector<std::uint32_t> pivots;
  Subspace s;
  for (std::uint64_t idx = begin; idx < end && en.next(rows, pivots); ++idx) {
    s.assign_canonical(coords(), rows, pivots);
    if (!fn(s)) return;
  }
}

BigInt ProjectiveSpace::count_subspaces_through(const Subspace& through, int dim) const {
  const int dt = through.dim();
  if (dim < dt || dim > static_cast<int>(n_)) throw Error(ErrorCode::RangeError, "subspace dimension out of range");
  return gaussian_binomial(static_cast<std::int64_t>(n_) - dt, dim - dt, field_->q());
}

void ProjectiveSpace::for_each_subspace_through(const Subspace& through, int dim,
                                                const std::function<bool(const Subspace&)>& fn) const {
  const int dt = through.dim();
  if (dim < dt || dim > static_cast<int>(n_)) throw Error(ErrorCode::RangeError, "subspace dimension out of range");
  std::vector<bool> is_pivot(coords(), false);
  for (auto c : through.pivots()) is_pivot[c] = true;
  std::vector<std::uint32_t> complement;
  for (std::uint32_t c = 0; c < coords(); ++c) {
    if (!is_pivot[c]) complement.push_back(c);
  }
  const std::uint32_t qdim = static_cast<std::uint32_t>(static_cast<int>(n_) - dt - 1);
  if (complement.empty()) {
    fn(through);
    return;
  }
  SubspaceEnumerator en(qdim, field_->q(), dim - dt - 1);
  std::vector<Elem> qrows;
  std::vector<std::uint32_t> qpiv;
  const std::size_t qcols = complement.size();
  while (en.next(qrows, qpiv)) {
    std::vector<Elem> rows = through.rows();
    const std::size_t nq = qpiv.size();
    for (std::size_t i = 0; i < nq; ++i) {
      std::vector<Elem> lifted(coords(), 0);
      for (std::size_t j = 0; j < qcols; ++j) lifted[complement[j]] = qrows[i * qcols + j];
      rows.insert(rows.end(), lifted.begin(), lifted.end());
    }
    const Subspace s = subspace(std::move(rows));
    if (!fn(s)) return;
  }
}

std::vector<Elem> ProjectiveSpace::coordinates_in(const Subspace& s, std::span<const Elem> v) const {
  if (!s.contains(*field_, v)) throw Error(ErrorCode::RangeError, "point not in subspace");
  std::vector<Elem> c(s.vector_dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = v[s.pivots()[i]];
  return c;
}

// --- PointSet -------------------------------------------------------------

PointSet::PointSet(SpacePtr space, std::vector<PointRank> ranks) : space_(std::move(space)), ranks_(std::move(ranks)) {
  std::sort(ranks_.begin(), ranks_.end());
  ranks_.erase(std::unique(ranks_.begin(), ranks_.end()), ranks_.end());
  limit_ = space_->num_points();
  if (!ranks_.empty() && ranks_.back() >= limit_) throw Error(ErrorCode::RangeError, "point rank outside the space");
  bits_.assign((static_cast<std::size_t>(limit_) + 63) / 64, 0);
  for (auto r : ranks_) bits_[r >> 6] |= std::uint64_t{1} << (r & 63u);
}

std::size_t PointSet::count_in(std::span<const PointRank> points) const { return kernels::count_members(points, bits_); }

std::size_t PointSet::count_in(const Subspace& s) const {
  std::vector<PointRank> pts;
  space_->points_of(s, pts);
  return count_in(pts);
}

bool PointSet::is_subset_of(const PointSet& o) const {
  if (bits_.size() != o.bits_.size()) throw Error(ErrorCode::DimensionMismatch, "point sets of different spaces");
  return kernels::andnot_count(bits_, o.bits_) == 0;
}

PointSet project(const PointSet& b, PointRank q, const Subspace& h) {
  const auto& space = *b.space();
  if (h.dim() != static_cast<int>(space.n()) - 1) throw Error(ErrorCode::NotHyperplane, "target is not a hyperplane");
  if (space.contains(h, q)) throw Error(ErrorCode::QInH, "projection centre lies in the hyperplane");
  if (b.contains(q)) throw Error(ErrorCode::QInB, "projection centre lies in the set");
  std::vector<PointRank> out;
  out.reserve(b.size());
  for (auto r : b.ranks()) {
    if (space.contains(h, r)) {
      out.push_back(r);
      continue;
    }
    const PointRank pair[2] = {q, r};
    const Subspace image = space.meet(space.span_points(pair), h);
    out.push_back(space.rank(image.row(0)));
  }
  return PointSet(b.space(), std::move(out));
}

PointSet restrict_to(const PointSet& b, const Subspace& s) {
  const auto& space = *b.space();
  auto sub = ProjectiveSpace::make(space.field_ptr(), static_cast<std::uint32_t>(s.dim()));
  std::vector<PointRank> out;
  for (auto r : b.ranks()) {
    const auto v = space.point(r);
    if (!s.contains(space.field(), v)) continue;
    out.push_back(sub->rank(space.coordinates_in(s, v)));
  }
  return PointSet(sub, std::move(out));
}

}  // namespace fingeo
