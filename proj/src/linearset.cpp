#include "fingeo/linearset.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "fingeo/blockingset.hpp"
#include "fingeo/error.hpp"
#include "fingeo/reconstruct.hpp"

namespace fingeo {

namespace {

constexpr std::uint32_t kExhaustiveLimit = 10000;

Elem trace(const Field& f, std::uint32_t p0, std::uint32_t h, Elem a) {
  Elem acc = 0;
  Elem term = a;
  for (std::uint32_t i = 0; i < h; ++i) {
    acc = f.add(acc, term);
    term = f.pow(term, p0);
  }
  return acc;
}

std::vector<Elem> unit(std::uint32_t coords, std::uint32_t i) {
  std::vector<Elem> v(coords, 0);
  v[i] = 1;
  return v;
}

void append(std::vector<Elem>& rows, const std::vector<Elem>& v) { rows.insert(rows.end(), v.begin(), v.end()); }

std::vector<PointRank> image_of(const SpreadContext& ctx, std::span<const PointRank> small_points) {
  std::vector<PointRank> out;
  out.reserve(small_points.size());
  for (const PointRank s : small_points) out.push_back(ctx.element_of(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LinearityResult exhaustive(const PointSet& b, const SpreadPtr& ctx, int k) {
  const auto& small = *ctx->small();
  if (small.num_points() > kExhaustiveLimit) {
    throw Error(ErrorCode::TooLarge, "exhaustive linearity search refused: small side has " +
                                         std::to_string(small.num_points()) + " points (limit 10000)");
  }
  LinearityResult out;
  out.method = "exhaustive";
  const int full = static_cast<int>(small.coords());
  out.rank_cap = k > 0 ? std::min<int>(full, static_cast<int>(ctx->h()) * k + 1) : full;
  if (b.empty()) {
    out.certificate = "empty point set";
    return out;
  }
  std::vector<char> in_x(small.num_points(), 0);
  std::vector<PointRank> xs;
  for (const PointRank p : b.ranks()) {
    for (const PointRank s : ctx->element_points(p)) {
      in_x[s] = 1;
      xs.push_back(s);
    }
  }
  std::sort(xs.begin(), xs.end());
  // Scalar multiplication by GF(q)* fixes every spread element and is
  // transitive on the points of S(P), so some witness passes through x.
  const PointRank x = ctx->element_points(b.ranks().front()).front();

  std::set<std::vector<Elem>> seen;
  std::vector<Subspace> level{small.span_points(std::span<const PointRank>(&x, 1))};
  std::vector<PointRank> pts;
  for (int r = 1; r <= out.rank_cap && !level.empty(); ++r) {
    std::vector<Subspace> next;
    for (const auto& s : level) {
      ++out.examined;
      small.points_of(s, pts);
      if (image_of(*ctx, pts) == b.ranks()) {
        out.linear = true;
        out.witness = build_linear_set(ctx, s);
        return out;
      }
      if (r == out.rank_cap) continue;
      for (const PointRank y : xs) {
        if (small.contains(s, y)) continue;
        Subspace t = small.span(s, small.span_points(std::span<const PointRank>(&y, 1)));
        if (!seen.insert(t.rows()).second) continue;
        small.points_of(t, pts);
        if (std::all_of(pts.begin(), pts.end(), [&](PointRank v) { return in_x[v] != 0; })) {
          next.push_back(std::move(t));
        }
      }
    }
    level = std::move(next);
  }
  out.certificate = "no subspace through x = " + std::to_string(x) + " inside the union of S(P), P in B, of vector rank <= " +
                    std::to_string(out.rank_cap) + " has image B (" + std::to_string(out.examined) +
                    " subspaces examined)";
  return out;
}

}  // namespace

LinearSetWitness build_linear_set(SpreadPtr ctx, const Subspace& pi) {
  if (pi.empty()) throw Error(ErrorCode::EmptyInput, "pi must be nonempty");
  LinearSetWitness w;
  w.points = ctx->linear_set_of(pi);
  w.pi = pi;
  w.ctx = std::move(ctx);
  return w;
}

LinearSetWitness build_family(const FamilyParams& prm) {
  auto field = Field::make(prm.p, prm.t);
  if (prm.e == 0 || prm.t % prm.e != 0) throw Error(ErrorCode::BadParams, "subfield exponent must divide t");
  auto space = ProjectiveSpace::make(field, prm.n);
  auto ctx = SpreadContext::make(space, prm.e);
  const Field& f = *field;
  const std::uint32_t c = space->coords();
  const std::uint32_t h = ctx->h();
  std::vector<Elem> rows;

  if (prm.family == "subgeometry") {
    if (prm.m < 0 || prm.m > static_cast<int>(prm.n)) throw Error(ErrorCode::BadParams, "subgeometry needs 0 <= m <= n");
    for (int i = 0; i <= prm.m; ++i) append(rows, ctx->blow_up(unit(c, i)));
  } else if (prm.family == "redei_trace") {
    if (prm.k < 1 || prm.k + 1 > static_cast<int>(prm.n)) throw Error(ErrorCode::BadParams, "redei_trace needs 1 <= k <= n-1");
    Elem xj = 1;
    for (std::uint32_t j = 0; j < h; ++j) {
      const Elem tr = trace(f, ctx->p0(), h, xj);
      for (int i = 0; i < prm.k; ++i) {
        std::vector<Elem> v(c, 0);
        v[i] = xj;
        v[prm.k] = tr;
        append(rows, ctx->blow_up(v));
      }
      xj = f.mul(xj, f.x());
    }
    append(rows, ctx->blow_up(unit(c, prm.k + 1)));
  } else if (prm.family == "cone") {
    if (prm.vertex_dim < 0 || prm.m < 1 || prm.vertex_dim + 1 + prm.m > static_cast<int>(prm.n)) {
      throw Error(ErrorCode::BadParams, "cone needs vertex_dim >= 0, m >= 1 and vertex_dim + 1 + m <= n");
    }
    std::vector<Elem> vrows;
    for (int i = 0; i <= prm.vertex_dim; ++i) append(vrows, unit(c, i));
    const Subspace vertex = ctx->subspace_blow_up(space->subspace(vrows));
    rows = vertex.rows();
    for (int i = 0; i <= prm.m; ++i) append(rows, ctx->blow_up(unit(c, prm.vertex_dim + 1 + i)));
  } else if (prm.family == "subspace") {
    if (prm.m < 0 || prm.m > static_cast<int>(prm.n)) throw Error(ErrorCode::BadParams, "subspace needs 0 <= m <= n");
    std::vector<Elem> urows;
    for (int i = 0; i <= prm.m; ++i) append(urows, unit(c, i));
    rows = ctx->subspace_blow_up(space->subspace(urows)).rows();
  } else if (prm.family == "random_rank_r") {
    const auto& small = *ctx->small();
    if (prm.r < 1 || prm.r > static_cast<int>(small.coords())) {
      throw Error(ErrorCode::BadParams, "random_rank_r needs 1 <= r <= h(n+1)");
    }
    std::mt19937_64 gen(prm.seed);
    Subspace s;
    while (static_cast<int>(s.vector_dim()) < prm.r) {
      std::vector<Elem> v(small.coords());
      for (auto& a : v) a = static_cast<Elem>(gen() % ctx->p0());
      if (std::all_of(v.begin(), v.end(), [](Elem a) { return a == 0; })) continue;
      std::vector<Elem> trial = s.rows();
      append(trial, v);
      Subspace t = small.subspace(trial);
      if (t.vector_dim() > s.vector_dim()) s = std::move(t);
    }
    return build_linear_set(ctx, s);
  } else {
    throw Error(ErrorCode::BadParams, "unknown family '" + prm.family + "'");
  }
  return build_linear_set(ctx, ctx->small()->subspace(std::move(rows)));
}

LinearityResult is_linear(const PointSet& b, const SpreadPtr& ctx, LinearityStrategy strategy, int k) {
  if (b.space()->n() != ctx->big()->n() || b.space()->field().q() != ctx->big()->field().q()) {
    throw Error(ErrorCode::SpecMismatch, "point set and spread context live in different spaces");
  }
  if (b.size() == 1) {
    LinearityResult out;
    out.linear = true;
    out.method = "trivial";
    const PointRank x = ctx->element_points(b.ranks().front()).front();
    out.witness = build_linear_set(ctx, ctx->small()->span_points(std::span<const PointRank>(&x, 1)));
    return out;
  }
  std::string tried;
  if (strategy == LinearityStrategy::ReconstructFirst && k > 0) {
    try {
      const auto res = reconstruct(b, k, *ctx, PointPolicy::First);
      if (res.front().success()) {
        LinearityResult out;
        out.linear = true;
        out.method = "reconstruct";
        out.examined = 1;
        out.witness = build_linear_set(ctx, res.front().w);
        return out;
      }
      tried = "reconstruction ended in " + to_string(res.front().status) + "; ";
    } catch (const Error& err) {
      tried = std::string("reconstruction not possible (") + err.what() + "); ";
    }
  }
  auto out = exhaustive(b, ctx, k);
  if (!out.linear) out.certificate = tried + out.certificate;
  return out;
}

void enumerate_sublines(const SpreadContext& ctx, const Subspace& l,
                        const std::function<void(std::span<const PointRank>)>& fn) {
  const auto& big = *ctx.big();
  if (l.dim() != 1) throw Error(ErrorCode::BadParams, "sublines live on a line");
  auto pts = big.points_of(l);
  std::sort(pts.begin(), pts.end());
  const auto& small = *ctx.small();
  // A subline through a and b is the image of <x, y> for x fixed in S(a) and
  // exactly one y in S(b); it is reported from its two smallest points.
  std::vector<PointRank> image;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const PointRank x = ctx.element_points(pts[i]).front();
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (const PointRank y : ctx.element_points(pts[j])) {
        const PointRank pair[2] = {x, y};
        image = ctx.linear_set_ranks(small.span_points(pair));
        if (image[0] == pts[i] && image[1] == pts[j]) fn(image);
      }
    }
  }
}

std::vector<std::vector<PointRank>> sublines_of(const SpreadContext& ctx, const Subspace& l) {
  std::vector<std::vector<PointRank>> out;
  enumerate_sublines(ctx, l, [&](std::span<const PointRank> s) { out.emplace_back(s.begin(), s.end()); });
  return out;
}

bool is_subline(const SpreadContext& ctx, std::span<const PointRank> points) {
  if (points.size() != ctx.p0() + 1) return false;
  std::vector<PointRank> want(points.begin(), points.end());
  std::sort(want.begin(), want.end());
  try {
    ctx.transversal_line(want, ctx.element_points(want[0]).front());
    return true;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NotASubline) return false;
    throw;
  }
}

SublineMeetReport subline_meet_check(const LinearSetWitness& s) {
  const auto& ctx = *s.ctx;
  const auto& big = *ctx.big();
  SublineMeetReport out;
  out.rank = s.rank();
  const auto secants = secant_lines(s.points);
  for (std::size_t i = 0; i < secants.size(); ++i) {
    ++out.lines;
    enumerate_sublines(ctx, secants.line(big, i), [&](std::span<const PointRank> sub) {
      ++out.sublines;
      std::size_t meet = 0;
      for (const PointRank r : sub) meet += s.points.contains(r) ? 1 : 0;
      ++out.sizes[meet];
      if (meet > static_cast<std::size_t>(out.rank) && meet != ctx.p0() + 1) out.violations.emplace_back(sub.begin(), sub.end());
    });
  }
  return out;
}

bool within_main_hypotheses(const PointSet& b, int k, const SpreadContext& ctx, std::string* why) {
  std::string reason;
  const auto& space = *b.space();
  const auto spec = spectrum(b, static_cast<int>(space.n()) - k);
  if (ctx.p0() < 7) reason += "p0 < 7; ";
  if (spec.at(0) != 0) {
    reason += "not blocking; ";
  } else {
    if (!smallness(b, k)) reason += "not small; ";
    const auto e = exponent_from_spectrum(spec, space.field().p(), space.field().t());
    if (ipow(space.field().p(), e) != ctx.p0()) reason += "exponent " + std::to_string(e) + " does not give p0; ";
    if (!is_minimal(b, k).minimal) reason += "not minimal; ";
  }
  if (why != nullptr) *why = reason.empty() ? "" : reason.substr(0, reason.size() - 2);
  return reason.empty();
}

SecantLinearityReport secant_linearity_check(const PointSet& b, int k, const SpreadContext& ctx,
                                             std::optional<bool> in_hypothesis) {
  SecantLinearityReport out;
  std::string why;
  out.applicable = in_hypothesis ? *in_hypothesis : within_main_hypotheses(b, k, ctx, &why);
  if (!out.applicable) out.note = "exploratory" + (why.empty() ? std::string() : ": " + why);
  const auto secants = secant_lines(b);
  for (std::size_t i = 0; i < secants.size(); ++i) {
    const auto m = secants.members(i);
    if (m.size() != ctx.p0() + 1) continue;
    ++out.secants;
    if (!is_subline(ctx, m)) out.failures.emplace_back(m.begin(), m.end());
  }
  return out;
}

}  // namespace fingeo
