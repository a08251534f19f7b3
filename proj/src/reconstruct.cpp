#include "fingeo/reconstruct.hpp"

#include <algorithm>

#include "fingeo/blockingset.hpp"
#include "fingeo/error.hpp"
#include "fingeo/linearset.hpp"
#include "fingeo/parallel.hpp"

namespace fingeo {

namespace {

// (p0+1)-secant traces through each point, from one secant scan.
struct SubsecantIndex {
  std::vector<std::vector<PointRank>> traces;
  std::vector<PointRank> points;  // sorted: points on at least one trace

  SubsecantIndex(const PointSet& b, std::uint32_t p0) {
    const auto secants = secant_lines(b);
    for (std::size_t i = 0; i < secants.size(); ++i) {
      const auto m = secants.members(i);
      if (m.size() != p0 + 1) continue;
      traces.emplace_back(m.begin(), m.end());
      points.insert(points.end(), m.begin(), m.end());
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }

  std::vector<const std::vector<PointRank>*> through(PointRank p) const {
    std::vector<const std::vector<PointRank>*> out;
    for (const auto& t : traces) {
      if (std::binary_search(t.begin(), t.end(), p)) out.push_back(&t);
    }
    return out;
  }
};

void check_dims(int k, const SpreadContext& ctx) {
  const auto hk = static_cast<std::int64_t>(ctx.h()) * k;
  if (hk > static_cast<std::int64_t>(ctx.small()->n())) {
    throw Error(ErrorCode::BadParams, "hk = " + std::to_string(hk) + " exceeds the small-side dimension");
  }
}

struct Transversals {
  std::vector<std::vector<PointRank>> used;
  std::vector<std::vector<PointRank>> skipped;
  std::vector<Subspace> lines;
};

Transversals transversals(const SpreadContext& ctx, const std::vector<const std::vector<PointRank>*>& traces,
                          PointRank x) {
  std::vector<std::optional<Subspace>> found(traces.size());
  parallel_chunks(traces.size(), [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      try {
        found[i] = ctx.transversal_line(*traces[i], x);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotASubline) throw;
      }
    }
  });
  Transversals out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (found[i]) {
      out.used.push_back(*traces[i]);
      out.lines.push_back(std::move(*found[i]));
    } else {
      out.skipped.push_back(*traces[i]);
    }
  }
  return out;
}

ReconstructionResult run_at(const PointSet& b, int k, const SpreadContext& ctx, const SubsecantIndex& index,
                            PointRank p, PointRank x) {
  if (ctx.element_of(x) != p) throw Error(ErrorCode::XNotOnElement, "x does not lie on S(P)");
  ReconstructionResult r;
  r.base_point = p;
  r.x = x;
  r.expected_dim = static_cast<int>(ctx.h()) * k;
  auto t = transversals(ctx, index.through(p), x);
  r.secants_used = std::move(t.used);
  r.skipped = std::move(t.skipped);
  r.transversals = std::move(t.lines);
  const auto& small = *ctx.small();
  r.w = r.transversals.empty() ? small.span_points(std::span<const PointRank>(&x, 1)) : small.span(r.transversals);
  r.dim_w = r.w.dim();
  const auto image = ctx.linear_set_ranks(r.w);
  r.image_equal = image == b.ranks();
  const bool inside = std::includes(b.ranks().begin(), b.ranks().end(), image.begin(), image.end());
  if (r.dim_w == r.expected_dim && r.image_equal) {
    r.status = ReconstructStatus::Success;
  } else if (r.dim_w < r.expected_dim) {
    r.status = ReconstructStatus::DimTooSmall;
  } else if (r.dim_w > r.expected_dim) {
    r.status = ReconstructStatus::DimTooLarge;
  } else if (inside) {
    r.status = ReconstructStatus::ImageProperSubset;
  } else {
    r.status = ReconstructStatus::ImageOverflow;
  }
  return r;
}

}  // namespace

std::string to_string(ReconstructStatus s) {
  switch (s) {
    case ReconstructStatus::Success: return "success";
    case ReconstructStatus::DimTooSmall: return "dim_too_small";
    case ReconstructStatus::DimTooLarge: return "dim_too_large";
    case ReconstructStatus::ImageProperSubset: return "image_proper_subset";
    case ReconstructStatus::ImageOverflow: return "image_overflow";
  }
  return "?";
}

std::vector<ReconstructionResult> reconstruct(const PointSet& b, int k, const SpreadContext& ctx, PointPolicy policy,
                                              bool check_blocking) {
  check_dims(k, ctx);
  if (check_blocking && !is_k_blocking(b, k).blocking) {
    throw Error(ErrorCode::NotBlocking, "some (n-k)-space misses the set");
  }
  const SubsecantIndex index(b, ctx.p0());
  if (index.points.empty()) {
    throw Error(ErrorCode::NoSublineSecant, "no line meets the set in exactly " + std::to_string(ctx.p0() + 1) + " points");
  }
  std::vector<ReconstructionResult> out;
  for (const PointRank p : index.points) {
    out.push_back(run_at(b, k, ctx, index, p, ctx.element_points(p).front()));
    if (policy == PointPolicy::First) break;
  }
  return out;
}

ReconstructionResult reconstruct_at(const PointSet& b, int k, const SpreadContext& ctx, PointRank p, PointRank x) {
  check_dims(k, ctx);
  const SubsecantIndex index(b, ctx.p0());
  if (index.points.empty()) {
    throw Error(ErrorCode::NoSublineSecant, "no line meets the set in exactly " + std::to_string(ctx.p0() + 1) + " points");
  }
  return run_at(b, k, ctx, index, p, x);
}

SpanLemmaReport check_span_lemma(const PointSet& b, int k, const SpreadContext& ctx, PointRank p, PointRank x) {
  const auto r = reconstruct_at(b, k, ctx, p, x);
  const auto& small = *ctx.small();
  SpanLemmaReport out;
  out.transversals = r.transversals.size();
  for (std::size_t i = 0; i < r.transversals.size(); ++i) {
    for (std::size_t j = i + 1; j < r.transversals.size(); ++j) {
      ++out.pairs;
      const auto image = ctx.linear_set_ranks(small.span(r.transversals[i], r.transversals[j]));
      if (!std::includes(b.ranks().begin(), b.ranks().end(), image.begin(), image.end())) out.failing.emplace_back(i, j);
    }
  }
  return out;
}

Rational secant_count_bound(std::uint64_t p0, std::uint32_t h, int k) {
  const std::int64_t hh = h;
  const Rational per_line = rpow(p0, hh - 1) - 4 * rpow(p0, hh - 2);
  if (k == 1) return per_line + 1;
  const std::int64_t hk = hh * k;
  const Rational spaces = Rational(ipow(p0, hk) - 1, ipow(p0, hh) - 1) - 3 * rpow(p0, hk - hh - 3);
  return spaces * per_line + 1;
}

SecantBoundReport secant_count_bounds(const PointSet& b, int k, const SpreadContext& ctx,
                                      std::optional<bool> in_hypothesis) {
  SecantBoundReport out;
  std::string why;
  out.applicable = in_hypothesis ? *in_hypothesis : within_main_hypotheses(b, k, ctx, &why);
  if (!out.applicable) out.note = "exploratory" + (why.empty() ? std::string() : ": " + why);
  out.bound = secant_count_bound(ctx.p0(), ctx.h(), k);
  const SubsecantIndex index(b, ctx.p0());
  std::vector<std::size_t> count(index.points.size(), 0);
  for (const auto& t : index.traces) {
    for (const PointRank r : t) {
      ++count[std::lower_bound(index.points.begin(), index.points.end(), r) - index.points.begin()];
    }
  }
  for (std::size_t i = 0; i < index.points.size(); ++i) {
    out.counts.emplace_back(index.points[i], count[i]);
    if (Rational(count[i]) < out.bound) out.violations.push_back(index.points[i]);
  }
  return out;
}

}  // namespace fingeo
