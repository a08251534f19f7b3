#include "fingeo/blockingset.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "fingeo/error.hpp"
#include "fingeo/parallel.hpp"

namespace fingeo {

namespace {

using Counts = std::map<std::uint64_t, std::uint64_t>;

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorCode::TooLarge, "count does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t lines_through_point(const ProjectiveSpace& space) {
  return to_u64(gaussian_binomial(space.n(), 1, space.field().q()));
}

void check_k(const ProjectiveSpace& space, int k) {
  if (k < 1 || k > static_cast<int>(space.n()) - 1) {
    throw Error(ErrorCode::RangeError, "k must satisfy 1 <= k <= n-1, got k=" + std::to_string(k));
  }
}

// Point vectors of b, flat, in rank order.
std::vector<Elem> point_vectors(const PointSet& b) {
  const auto& space = *b.space();
  const std::size_t c = space.coords();
  std::vector<Elem> out(b.size() * c);
  for (std::size_t i = 0; i < b.size(); ++i) {
    space.point_into(b.ranks()[i], std::span<Elem>(out.data() + i * c, c));
  }
  return out;
}

bool annihilated(const Field& f, std::span<const Elem> dual, std::size_t c, std::span<const Elem> v) {
  for (std::size_t r = 0; r * c < dual.size(); ++r) {
    Elem acc = 0;
    for (std::size_t j = 0; j < c; ++j) {
      if (v[j] != 0 && dual[r * c + j] != 0) acc = f.add(acc, f.mul(v[j], dual[r * c + j]));
    }
    if (acc != 0) return false;
  }
  return true;
}

// Counts b-points in s, either by walking s's points or by testing every
// point of b against s's dual rows, whichever is cheaper.
struct SubspaceCounter {
  const PointSet& b;
  const std::vector<Elem>& vecs;
  bool use_dual;
  std::vector<PointRank> scratch;

  std::size_t count(const Subspace& s) {
    const auto& space = *b.space();
    if (!use_dual) {
      space.points_of(s, scratch);
      return b.count_in(scratch);
    }
    const auto dual = s.dual_rows(space.field());
    const std::size_t c = space.coords();
    std::size_t n = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (annihilated(space.field(), dual, c, std::span<const Elem>(vecs.data() + i * c, c))) ++n;
    }
    return n;
  }

  // Count of b in s, or nullopt when s holds a point of b ranked below `lead`.
  std::optional<std::size_t> count_led_by(const Subspace& s, PointRank lead) {
    const auto& space = *b.space();
    std::size_t n = 0;
    if (!use_dual) {
      space.points_of(s, scratch);
      for (const PointRank r : scratch) {
        if (b.contains(r)) {
          if (r < lead) return std::nullopt;
          ++n;
        }
      }
      return n;
    }
    const auto dual = s.dual_rows(space.field());
    const std::size_t c = space.coords();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (annihilated(space.field(), dual, c, std::span<const Elem>(vecs.data() + i * c, c))) {
        if (b.ranks()[i] < lead) return std::nullopt;
        ++n;
      }
    }
    return n;
  }
};

bool prefer_dual(const PointSet& b, int dim) {
  const auto& space = *b.space();
  const long double pts = static_cast<long double>(to_u64(gaussian_binomial(dim + 1, 1, space.field().q())));
  return static_cast<long double>(b.size()) * (space.n() - dim) < pts;
}

void merge(Counts& into, const Counts& from) {
  for (const auto& [i, c] : from) into[i] += c;
}

// Scans that only visit subspaces meeting b leave x_0 implicit; it is the
// remainder of the Gaussian-binomial total. Full enumeration counts it directly.
IntersectionSpectrum finish(int dim, std::uint64_t total, Counts counts, bool zeros_counted = false) {
  IntersectionSpectrum s;
  s.dim = dim;
  s.total = total;
  if (!zeros_counted) {
    std::uint64_t counted = 0;
    for (const auto& [i, c] : counts) {
      if (i != 0) counted += c;
    }
    counts.erase(0);
    if (total > counted) counts[0] = total - counted;
  }
  s.x = std::move(counts);
  return s;
}

IntersectionSpectrum spectrum_enumerate(const PointSet& b, int dim) {
  const auto& space = *b.space();
  const std::uint64_t total = to_u64(space.count_subspaces(dim));
  const auto vecs = point_vectors(b);
  const bool dual = prefer_dual(b, dim);
  std::vector<Counts> parts(thread_count());
  parallel_chunks(total, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    SubspaceCounter counter{b, vecs, dual, {}};
    Counts local;
    space.for_each_subspace(dim, begin, end, [&](const Subspace& s) {
      ++local[counter.count(s)];
      return true;
    });
    parts[w] = std::move(local);
  });
  Counts all;
  for (const auto& p : parts) merge(all, p);
  return finish(dim, total, std::move(all), true);
}

IntersectionSpectrum spectrum_incidence(const PointSet& b, int dim) {
  const auto& space = *b.space();
  const std::uint64_t total = to_u64(space.count_subspaces(dim));
  const auto vecs = point_vectors(b);
  const bool dual = prefer_dual(b, dim);
  std::vector<Counts> parts(thread_count());
  parallel_chunks(b.size(), [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    SubspaceCounter counter{b, vecs, dual, {}};
    Counts local;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const PointRank lead = b.ranks()[idx];
      const Subspace base = space.span_points(std::span<const PointRank>(&lead, 1));
      space.for_each_subspace_through(base, dim, [&](const Subspace& s) {
        if (const auto n = counter.count_led_by(s, lead)) ++local[*n];
        return true;
      });
    }
    parts[w] = std::move(local);
  });
  Counts all;
  for (const auto& p : parts) merge(all, p);
  return finish(dim, total, std::move(all));
}

}  // namespace

BigInt IntersectionSpectrum::sum() const {
  BigInt s = 0;
  for (const auto& [i, c] : x) s += c;
  return s;
}

BigInt IntersectionSpectrum::sum_i() const {
  BigInt s = 0;
  for (const auto& [i, c] : x) s += BigInt(i) * c;
  return s;
}

BigInt IntersectionSpectrum::sum_i_i1() const {
  BigInt s = 0;
  for (const auto& [i, c] : x) {
    if (i > 1) s += BigInt(i) * (i - 1) * c;
  }
  return s;
}

SecantLines secant_lines(const PointSet& b) {
  const auto& space = *b.space();
  const Field& f = space.field();
  const std::size_t c = space.coords();
  const auto vecs = point_vectors(b);
  const ProjectiveSpace quotient(space.field_ptr(), space.n() - 1);
  const std::size_t m = b.size();

  std::vector<SecantLines> parts(thread_count());
  parallel_chunks(m, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> stamp(quotient.num_points(), 0);
    std::vector<std::uint32_t> slot(quotient.num_points(), 0);
    std::vector<std::vector<PointRank>> groups;
    std::vector<bool> earlier;
    std::vector<Elem> dir(c - 1);
    std::vector<PointRank> line;
    SecantLines local;
    for (std::uint64_t a = begin; a < end; ++a) {
      const Elem* pv = vecs.data() + a * c;
      std::size_t j = 0;
      while (pv[j] == 0) ++j;
      std::size_t used = 0;
      for (std::size_t bi = 0; bi < m; ++bi) {
        if (bi == a) continue;
        const Elem* rv = vecs.data() + bi * c;
        const Elem rj = rv[j];
        std::size_t o = 0;
        for (std::size_t col = 0; col < c; ++col) {
          if (col == j) continue;
          dir[o++] = rj == 0 ? rv[col] : f.sub(rv[col], f.mul(rj, pv[col]));
        }
        quotient.normalize(dir);
        const PointRank d = quotient.rank_normalized(dir);
        if (stamp[d] != a + 1) {
          stamp[d] = a + 1;
          slot[d] = static_cast<std::uint32_t>(used);
          if (used == groups.size()) {
            groups.emplace_back();
            earlier.push_back(false);
          }
          groups[used].clear();
          earlier[used] = false;
          ++used;
        }
        groups[slot[d]].push_back(b.ranks()[bi]);
        if (bi < a) earlier[slot[d]] = true;
      }
      for (std::size_t g = 0; g < used; ++g) {
        if (earlier[g]) continue;
        line.assign(1, b.ranks()[a]);
        line.insert(line.end(), groups[g].begin(), groups[g].end());
        local.append(line);
      }
    }
    parts[w] = std::move(local);
  });
  SecantLines all;
  for (const auto& p : parts) all.append(p);
  return all;
}

IntersectionSpectrum line_spectrum(const PointSet& b, const SecantLines& secants) {
  const auto& space = *b.space();
  const std::uint64_t total = to_u64(space.count_subspaces(1));
  Counts counts;
  std::uint64_t incidences = 0;
  for (std::size_t i = 0; i < secants.size(); ++i) {
    const auto sz = secants.members(i).size();
    ++counts[sz];
    incidences += sz;
  }
  // Every incidence (P, L) with P in b is either on a secant or on a tangent.
  const std::uint64_t tangents = b.size() * lines_through_point(space) - incidences;
  if (tangents > 0) counts[1] += tangents;
  return finish(1, total, std::move(counts));
}

IntersectionSpectrum spectrum(const PointSet& b, int dim, SpectrumMethod method) {
  const auto& space = *b.space();
  if (dim < 0 || dim > static_cast<int>(space.n()) - 1) {
    throw Error(ErrorCode::RangeError, "spectrum dimension must lie in 0..n-1, got " + std::to_string(dim));
  }
  if (dim == 0) {
    Counts counts;
    if (!b.empty()) counts[1] = b.size();
    return finish(0, space.num_points(), std::move(counts));
  }
  if (b.empty()) return finish(dim, to_u64(space.count_subspaces(dim)), {});
  if (method == SpectrumMethod::Auto && dim == 1) return line_spectrum(b, secant_lines(b));
  if (method == SpectrumMethod::Auto) {
    // Walking the subspaces through each point of b beats a full scan when
    // |B| times the subspaces through a point is below the total.
    const BigInt through = gaussian_binomial(space.n(), dim, space.field().q());
    method = BigInt(b.size()) * through < space.count_subspaces(dim) ? SpectrumMethod::Incidence
                                                                     : SpectrumMethod::Enumerate;
  }
  return method == SpectrumMethod::Incidence ? spectrum_incidence(b, dim) : spectrum_enumerate(b, dim);
}

BlockingCheck is_k_blocking(const PointSet& b, int k) {
  const auto& space = *b.space();
  check_k(space, k);
  const int dim = static_cast<int>(space.n()) - k;
  BlockingCheck out;
  const auto s = spectrum(b, dim);
  out.blocking = s.at(0) == 0;
  if (out.blocking) return out;
  const auto vecs = point_vectors(b);
  SubspaceCounter counter{b, vecs, prefer_dual(b, dim), {}};
  space.for_each_subspace(dim, [&](const Subspace& sub) {
    if (counter.count(sub) != 0) return true;
    out.uncovered = sub;
    return false;
  });
  return out;
}

bool smallness(std::uint64_t size, std::uint64_t q, int k) {
  // |B| < 3(q^k+1)/2  <=>  2|B| < 3(q^k+1)
  return BigInt(2) * size < BigInt(3) * (ipow(q, static_cast<std::uint64_t>(k)) + 1);
}

bool smallness(const PointSet& b, int k) { return smallness(b.size(), b.space()->field().q(), k); }

std::uint32_t exponent_from_spectrum(const IntersectionSpectrum& s, std::uint32_t p, std::uint32_t t) {
  for (std::uint32_t e = t; e >= 1; --e) {
    const std::uint64_t m = to_u64(ipow(p, e));
    bool ok = true;
    for (const auto& [i, c] : s.x) {
      if (c != 0 && i % m != 1 % m) {
        ok = false;
        break;
      }
    }
    if (ok) return e;
  }
  return 0;
}

std::uint32_t exponent(const PointSet& b, int k) {
  const auto& space = *b.space();
  check_k(space, k);
  const auto s = spectrum(b, static_cast<int>(space.n()) - k);
  if (s.at(0) != 0) throw Error(ErrorCode::NotBlocking, "some (n-k)-space misses the set");
  return exponent_from_spectrum(s, space.field().p(), space.field().t());
}

bool one_mod_spectrum(const IntersectionSpectrum& s, std::uint64_t m) {
  for (const auto& [i, c] : s.x) {
    if (c != 0 && i % m != 1 % m) return false;
  }
  return true;
}

std::optional<Subspace> find_tangent_space(const PointSet& b, PointRank p, int dim) {
  const auto& space = *b.space();
  const Subspace base = space.span_points(std::span<const PointRank>(&p, 1));
  if (dim == 0) return base;
  const auto vecs = point_vectors(b);
  SubspaceCounter counter{b, vecs, prefer_dual(b, dim), {}};
  std::optional<Subspace> found;
  space.for_each_subspace_through(base, dim, [&](const Subspace& s) {
    if (counter.count(s) != 1) return true;
    found = s;
    return false;
  });
  return found;
}

MinimalityCheck is_minimal(const PointSet& b, int k, MinimalityMethod method) {
  const auto& space = *b.space();
  check_k(space, k);
  const int dim = static_cast<int>(space.n()) - k;
  const auto s = spectrum(b, dim);
  if (s.at(0) != 0) throw Error(ErrorCode::NotBlocking, "some (n-k)-space misses the set");
  MinimalityCheck out;
  if (method == MinimalityMethod::Criterion) {
    const bool size_ok = BigInt(b.size()) <= 2 * ipow(space.field().q(), static_cast<std::uint64_t>(k));
    if (!size_ok) throw Error(ErrorCode::NotApplicable, "criterion needs |B| <= 2q^k");
    if (!one_mod_spectrum(s, space.field().p())) {
      throw Error(ErrorCode::NotApplicable, "criterion needs every (n-k)-space to meet B in 1 mod p points");
    }
    out.minimal = true;
    return out;
  }
  if (dim == 1) {
    const auto secants = secant_lines(b);
    std::vector<std::uint64_t> through(b.size(), 0);
    for (std::size_t i = 0; i < secants.size(); ++i) {
      for (const PointRank r : secants.members(i)) {
        ++through[std::lower_bound(b.ranks().begin(), b.ranks().end(), r) - b.ranks().begin()];
      }
    }
    const std::uint64_t lines = lines_through_point(space);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (through[i] == lines) {
        out.removable = b.ranks()[i];
        return out;
      }
    }
    out.minimal = true;
    return out;
  }
  for (const PointRank p : b.ranks()) {
    if (!find_tangent_space(b, p, dim)) {
      out.removable = p;
      return out;
    }
  }
  out.minimal = true;
  return out;
}

RedeiCheck is_redei(const PointSet& b, int k) {
  const auto& space = *b.space();
  check_k(space, k);
  RedeiCheck out;
  const BigInt target = BigInt(b.size()) - ipow(space.field().q(), static_cast<std::uint64_t>(k));
  if (target < 0) return out;
  const int dim = static_cast<int>(space.n()) - 1;
  const auto s = spectrum(b, dim);
  if (target > BigInt(s.max_size()) || s.at(static_cast<std::uint64_t>(target)) == 0) return out;
  const auto want = static_cast<std::size_t>(target);
  const auto vecs = point_vectors(b);
  SubspaceCounter counter{b, vecs, prefer_dual(b, dim), {}};
  space.for_each_subspace(dim, [&](const Subspace& h) {
    if (counter.count(h) != want) return true;
    out.hyperplane = h;
    return false;
  });
  out.redei = out.hyperplane.has_value();
  return out;
}

BlockingReport analyze(const PointSet& b, int k) {
  const auto& space = *b.space();
  check_k(space, k);
  BlockingReport r;
  r.k = k;
  r.size = b.size();
  r.spectrum = spectrum(b, static_cast<int>(space.n()) - k);
  r.is_small = smallness(b, k);
  const auto redei = is_redei(b, k);
  r.is_redei = redei.redei;
  r.redei_hyperplane = redei.hyperplane;
  if (r.spectrum.at(0) != 0) {
    r.uncovered = is_k_blocking(b, k).uncovered;
    return r;
  }
  r.is_blocking = true;
  r.exponent = exponent_from_spectrum(r.spectrum, space.field().p(), space.field().t());
  const auto m = is_minimal(b, k, MinimalityMethod::Direct);
  r.is_minimal = m.minimal;
  r.removable = m.removable;
  return r;
}

Rational small_threshold(std::uint64_t p0, std::uint32_t h, int s) {
  const std::int64_t e = static_cast<std::int64_t>(h) * s;
  return rpow(p0, e) + rpow(p0, e - 1) + rpow(p0, e - 2) + 3 * rpow(p0, e - 3);
}

Rational large_threshold(std::uint64_t p0, std::uint32_t h, int s) {
  const std::int64_t e = static_cast<std::int64_t>(h) * s;
  return rpow(p0, e + 1) - rpow(p0, e - 1) - rpow(p0, e - 2) - 3 * rpow(p0, e - 3);
}

std::string to_string(SizeSide side) {
  switch (side) {
    case SizeSide::Small: return "small";
    case SizeSide::Large: return "large";
    case SizeSide::Gap: return "gap";
  }
  return "?";
}

SizeClass classify_report(const PointSet& b, int k, std::uint64_t p0, std::uint32_t h, const Subspace& pi,
                          bool one_mod_p0) {
  const auto& space = *b.space();
  check_k(space, k);
  SizeClass out;
  out.s = pi.dim() - (static_cast<int>(space.n()) - k);
  out.count = b.count_in(pi);
  out.small_bound = small_threshold(p0, h, out.s);
  out.large_bound = large_threshold(p0, h, out.s);
  std::string why;
  if (p0 < 7) why += "p0 < 7; ";
  if (!one_mod_p0) why += "some (n-k)-space meets B in a number of points not 1 mod p0; ";
  if (out.s < 0 || out.s > k) why += "dim Pi outside n-k..n; ";
  out.applicable = why.empty();
  out.note = out.applicable ? "" : "exploratory: " + why.substr(0, why.size() - 2);
  const Rational c(out.count);
  if (c < out.small_bound) {
    out.side = SizeSide::Small;
  } else if (out.s >= k) {
    // For Pi the whole space only the small side is allowed.
    out.side = SizeSide::Gap;
  } else if (c > out.large_bound) {
    out.side = SizeSide::Large;
  } else {
    out.side = SizeSide::Gap;
  }
  return out;
}

SizeSide classify_small_large(const PointSet& b, int k, std::uint64_t p0, std::uint32_t h, const Subspace& pi) {
  const auto& space = *b.space();
  check_k(space, k);
  const auto s = spectrum(b, static_cast<int>(space.n()) - k);
  const auto r = classify_report(b, k, p0, h, pi, one_mod_spectrum(s, p0));
  if (!r.applicable) throw Error(ErrorCode::NotApplicable, r.note);
  if (r.side == SizeSide::Gap) {
    throw Error(ErrorCode::GapViolation, std::to_string(r.count) + " points in a space of dimension n-k+" +
                                             std::to_string(r.s) + " lies in the forbidden interval [" +
                                             to_string(r.small_bound) + ", " + to_string(r.large_bound) + "]");
  }
  return r.side;
}

Subspace tangent_extension(const PointSet& b, int k, const Subspace& l, int i) {
  const auto& space = *b.space();
  check_k(space, k);
  if (l.dim() != 1) throw Error(ErrorCode::BadParams, "L must be a line");
  const std::size_t on_line = b.count_in(l);
  if (on_line < 2 || on_line > space.field().q()) {
    throw Error(ErrorCode::BadParams, "L must meet B in more than one and fewer than q+1 points");
  }
  if (i < 1 || i > static_cast<int>(space.n()) - k) throw Error(ErrorCode::RangeError, "i must lie in 1..n-k");
  const auto vecs = point_vectors(b);
  std::function<std::optional<Subspace>(const Subspace&)> grow = [&](const Subspace& cur) -> std::optional<Subspace> {
    if (cur.dim() == i) return cur;
    SubspaceCounter counter{b, vecs, prefer_dual(b, cur.dim() + 1), {}};
    std::optional<Subspace> found;
    space.for_each_subspace_through(cur, cur.dim() + 1, [&](const Subspace& s) {
      if (counter.count(s) != on_line) return true;
      found = grow(s);
      return !found.has_value();
    });
    return found;
  };
  auto r = grow(l);
  if (!r) throw Error(ErrorCode::NotFound, "no " + std::to_string(i) + "-space through L meets B only in B cap L");
  return *r;
}

SecantReport secant_analysis(const PointSet& b, int k, std::uint64_t p0, bool find_tangents) {
  const auto& space = *b.space();
  check_k(space, k);
  SecantReport out;
  out.kappa = BigInt(b.size()) - ipow(space.field().q(), static_cast<std::uint64_t>(k));
  out.points.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out.points[i].point = b.ranks()[i];
  const auto secants = secant_lines(b);
  std::vector<std::uint64_t> on_secant((space.num_points() + 63) / 64, 0);
  std::vector<PointRank> pts;
  for (std::size_t i = 0; i < secants.size(); ++i) {
    const auto members = secants.members(i);
    ++out.line_sizes[members.size()];
    for (const PointRank r : members) {
      auto& ps = out.points[std::lower_bound(b.ranks().begin(), b.ranks().end(), r) - b.ranks().begin()];
      ++ps.sizes[members.size()];
      if (members.size() == p0 + 1) ++ps.p0_secants;
    }
    space.points_of(secants.line(space, i), pts);
    for (const PointRank r : pts) on_secant[r >> 6] |= std::uint64_t{1} << (r & 63u);
  }
  const std::uint64_t lines = lines_through_point(space);
  for (auto& ps : out.points) {
    std::uint64_t through = 0;
    for (const auto& [sz, c] : ps.sizes) through += c;
    ps.tangent_lines = lines - through;
  }
  std::uint64_t covered = 0;
  for (PointRank r = 0; r < space.num_points(); ++r) {
    if (b.contains(r) || ((on_secant[r >> 6] >> (r & 63u)) & 1u)) ++covered;
  }
  out.points_off_secants = space.num_points() - covered;
  if (find_tangents) {
    const int dim = static_cast<int>(space.n()) - k;
    for (auto& ps : out.points) ps.tangent_space = find_tangent_space(b, ps.point, dim);
  }
  return out;
}

std::optional<Subspace> find_contained_subspace(const PointSet& b, int k) {
  const auto& space = *b.space();
  if (k < 0 || b.empty()) return std::nullopt;
  if (k == 0) return space.span_points(std::span<const PointRank>(&b.ranks().front(), 1));
  // Every line of a k-space inside b is a full line of b, so only points
  // joined to the current basis by full lines can extend it.
  const std::size_t m = b.size();
  const std::size_t words = (m + 63) / 64;
  std::vector<std::uint64_t> joined(m * words, 0);
  const auto index = [&](PointRank r) {
    return static_cast<std::size_t>(std::lower_bound(b.ranks().begin(), b.ranks().end(), r) - b.ranks().begin());
  };
  const auto secants = secant_lines(b);
  const std::size_t full = space.field().q() + 1;
  std::vector<std::size_t> full_lines;
  for (std::size_t i = 0; i < secants.size(); ++i) {
    const auto mem = secants.members(i);
    if (mem.size() != full) continue;
    full_lines.push_back(i);
    for (const PointRank a : mem) {
      const auto ia = index(a);
      for (const PointRank c : mem) {
        const auto ic = index(c);
        joined[ia * words + (ic >> 6)] |= std::uint64_t{1} << (ic & 63u);
      }
    }
  }
  if (full_lines.empty()) return std::nullopt;
  if (k == 1) return secants.line(space, full_lines.front());

  std::function<std::optional<Subspace>(const Subspace&, std::vector<std::size_t>&)> grow =
      [&](const Subspace& cur, std::vector<std::size_t>& basis) -> std::optional<Subspace> {
    if (cur.dim() == k) return cur;
    for (std::size_t i = basis.back() + 1; i < m; ++i) {
      bool ok = true;
      for (const auto bi : basis) {
        if (!((joined[bi * words + (i >> 6)] >> (i & 63u)) & 1u)) {
          ok = false;
          break;
        }
      }
      if (!ok || space.contains(cur, b.ranks()[i])) continue;
      const Subspace next = space.span(cur, space.span_points(std::span<const PointRank>(&b.ranks()[i], 1)));
      if (b.count_in(next) != space.points_in(next)) continue;
      basis.push_back(i);
      if (auto found = grow(next, basis)) return found;
      basis.pop_back();
    }
    return std::nullopt;
  };
  for (const auto li : full_lines) {
    const auto mem = secants.members(li);
    std::vector<std::size_t> basis{index(mem[0]), index(mem[1])};
    if (auto found = grow(secants.line(space, li), basis)) return found;
  }
  return std::nullopt;
}

std::vector<std::pair<Subspace, std::size_t>> subspaces_meeting(const PointSet& b, int dim, std::size_t min_count) {
  const auto& space = *b.space();
  if (dim < 0 || dim > static_cast<int>(space.n())) throw Error(ErrorCode::RangeError, "dimension out of range");
  if (min_count == 0) throw Error(ErrorCode::BadParams, "min_count must be positive");
  using Found = std::vector<std::pair<Subspace, std::size_t>>;
  const auto vecs = point_vectors(b);
  const bool dual = dim < static_cast<int>(space.n()) && prefer_dual(b, dim);
  const BigInt through = gaussian_binomial(space.n(), dim, space.field().q());
  std::vector<Found> parts(thread_count());
  if (BigInt(b.size()) * through < space.count_subspaces(dim)) {
    parallel_chunks(b.size(), [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      SubspaceCounter counter{b, vecs, dual, {}};
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        const PointRank lead = b.ranks()[idx];
        const Subspace base = space.span_points(std::span<const PointRank>(&lead, 1));
        space.for_each_subspace_through(base, dim, [&](const Subspace& s) {
          const auto n = counter.count_led_by(s, lead);
          if (n && *n >= min_count) parts[w].emplace_back(s, *n);
          return true;
        });
      }
    });
  } else {
    parallel_chunks(to_u64(space.count_subspaces(dim)), [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      SubspaceCounter counter{b, vecs, dual, {}};
      space.for_each_subspace(dim, begin, end, [&](const Subspace& s) {
        const auto n = counter.count(s);
        if (n >= min_count) parts[w].emplace_back(s, n);
        return true;
      });
    });
  }
  Found all;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));
  return all;
}

std::optional<Subspace> find_subspace_with_count(const PointSet& b, int dim, std::size_t count) {
  const auto& space = *b.space();
  const auto vecs = point_vectors(b);
  SubspaceCounter counter{b, vecs, dim < static_cast<int>(space.n()) && prefer_dual(b, dim), {}};
  std::optional<Subspace> found;
  space.for_each_subspace(dim, [&](const Subspace& s) {
    if (counter.count(s) != count) return true;
    found = s;
    return false;
  });
  return found;
}

std::optional<PointRank> point_off_secants(const PointSet& b) {
  const auto& space = *b.space();
  const auto secants = secant_lines(b);
  std::vector<char> hit(space.num_points(), 0);
  for (const PointRank r : b.ranks()) hit[r] = 1;
  std::vector<PointRank> pts;
  for (std::size_t i = 0; i < secants.size(); ++i) {
    space.points_of(secants.line(space, i), pts);
    for (const PointRank r : pts) hit[r] = 1;
  }
  for (PointRank r = 0; r < space.num_points(); ++r) {
    if (!hit[r]) return r;
  }
  return std::nullopt;
}

}  // namespace fingeo
