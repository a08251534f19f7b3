#include <gtest/gtest.h>

#include "fingeo/blockingset.hpp"
#include "fingeo/error.hpp"
#include "fingeo/harness.hpp"
#include "fingeo/reconstruct.hpp"

using namespace fingeo;

namespace {

LinearSetWitness family(const std::string& name, std::uint32_t p, std::uint32_t t, std::uint32_t n, int m, int r = 0,
                        int vertex_dim = 0) {
  FamilyParams f;
  f.family = name;
  f.p = p;
  f.t = t;
  f.n = n;
  f.m = m;
  f.r = r;
  f.seed = 1;
  f.vertex_dim = vertex_dim;
  return build_family(f);
}

}  // namespace

TEST(Reconstruct, BaerSubplane) {
  const auto w = family("subgeometry", 3, 2, 2, 2);
  const auto res = reconstruct(w.points, 1, *w.ctx);
  ASSERT_EQ(res.size(), 1u);
  const auto& r = res[0];
  EXPECT_TRUE(r.success()) << to_string(r.status);
  EXPECT_EQ(r.dim_w, 2);
  EXPECT_EQ(r.expected_dim, 2);
  EXPECT_EQ(r.secants_used.size(), 4u);
  EXPECT_EQ(r.transversals.size(), 4u);
  EXPECT_TRUE(r.image_equal);
  EXPECT_EQ(r.base_point, w.points.ranks()[0]);
  EXPECT_EQ(r.x, w.ctx->element_points(r.base_point)[0]);
  EXPECT_EQ(w.ctx->linear_set_of(r.w), w.points);
  for (std::size_t i = 0; i < r.transversals.size(); ++i) {
    EXPECT_TRUE(w.ctx->small()->contains(r.transversals[i], r.x));
    EXPECT_EQ(w.ctx->linear_set_ranks(r.transversals[i]), r.secants_used[i]);
  }
}

TEST(Reconstruct, EveryBasePointOfTheBaerSubplane) {
  const auto w = family("subgeometry", 3, 2, 2, 2);
  const auto res = reconstruct(w.points, 1, *w.ctx, PointPolicy::All);
  EXPECT_EQ(res.size(), 13u);
  for (const auto& r : res) {
    EXPECT_TRUE(r.success());
    EXPECT_EQ(w.ctx->linear_set_of(r.w), w.points);
  }
  // any point of S(P), not just the first
  const PointRank p = w.points.ranks()[5];
  for (auto x : w.ctx->element_points(p)) {
    const auto r = reconstruct_at(w.points, 1, *w.ctx, p, x);
    EXPECT_TRUE(r.success());
    EXPECT_TRUE(w.ctx->small()->contains(r.w, x));
    EXPECT_EQ(w.ctx->linear_set_of(r.w), w.points);
  }
}

TEST(Reconstruct, RankFourSetInPG227) {
  const auto w = family("random_rank_r", 3, 3, 2, 0, 4);
  for (const auto& r : reconstruct(w.points, 1, *w.ctx, PointPolicy::All)) {
    EXPECT_TRUE(r.success()) << to_string(r.status);
    EXPECT_EQ(r.dim_w, 3);
    EXPECT_EQ(w.ctx->linear_set_of(r.w), w.points);
  }
}

TEST(Reconstruct, ConeIsATwoBlockingSet) {
  const auto w = family("cone", 3, 2, 3, 2, 0, 0);
  const auto res = reconstruct(w.points, 2, *w.ctx);
  EXPECT_TRUE(res[0].success()) << to_string(res[0].status);
  EXPECT_EQ(res[0].dim_w, 4);
}

TEST(Reconstruct, TrivialLineHasNoSublineSecant) {
  const auto w = family("subspace", 3, 2, 2, 1);
  try {
    reconstruct(w.points, 1, *w.ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSublineSecant);
  }
}

TEST(Reconstruct, RefusesNonBlockingInput) {
  const auto w = family("subgeometry", 3, 2, 2, 2);
  auto pts = w.points.ranks();
  pts.pop_back();
  try {
    reconstruct(PointSet(w.points.space(), pts), 1, *w.ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotBlocking);
  }
}

TEST(Reconstruct, MutatedControlOverflows) {
  const auto w = family("subgeometry", 3, 2, 2, 2);
  const auto m = mutate_off_secant(w.points, 3);
  const auto res = reconstruct(m, 1, *w.ctx, PointPolicy::All, false);
  bool any_failure = false;
  for (const auto& r : res) {
    any_failure = any_failure || !r.success();
    EXPECT_FALSE(r.success() && w.ctx->linear_set_of(r.w) != m);
  }
  EXPECT_TRUE(any_failure);
}

TEST(Reconstruct, SpanOfTwoTransversals) {
  for (const auto& w : {family("subgeometry", 3, 2, 2, 2), family("random_rank_r", 3, 3, 2, 0, 4)}) {
    const PointRank p = w.points.ranks()[0];
    const auto rep = check_span_lemma(w.points, 1, *w.ctx, p, w.ctx->element_points(p)[0]);
    EXPECT_GT(rep.transversals, 1u);
    EXPECT_EQ(rep.pairs, rep.transversals * (rep.transversals - 1) / 2);
    EXPECT_TRUE(rep.failing.empty());
  }
}

TEST(Reconstruct, SecantCountBound) {
  EXPECT_EQ(secant_count_bound(7, 2, 1), 4);
  EXPECT_EQ(secant_count_bound(3, 2, 1), 3 - 4 + 1);
  // k = 2, h = 2, p0 = 7: ((7^4-1)/(7^2-1) - 3*7^-1) * (7 - 4) + 1
  EXPECT_EQ(secant_count_bound(7, 2, 2), Rational(1048, 7));

  const auto w = family("subgeometry", 7, 2, 2, 2);
  const auto rep = secant_count_bounds(w.points, 1, *w.ctx);
  EXPECT_TRUE(rep.applicable);
  EXPECT_EQ(rep.counts.size(), 57u);
  for (const auto& [pt, n] : rep.counts) EXPECT_EQ(n, 8u);
  EXPECT_TRUE(rep.violations.empty());
}
