#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fingeo/error.hpp"
#include "fingeo/projspace.hpp"
#include "oracles.hpp"

using namespace fingeo;

namespace {

std::set<std::vector<PointRank>> library_subspaces(const ProjectiveSpace& s, int dim) {
  std::set<std::vector<PointRank>> out;
  s.for_each_subspace(dim, [&](const Subspace& sub) {
    auto pts = s.points_of(sub);
    std::sort(pts.begin(), pts.end());
    out.insert(pts);
    return true;
  });
  return out;
}

std::set<std::vector<PointRank>> oracle_subspaces(const ProjectiveSpace& s, const oracle::Space& o,
                                                  const std::set<std::set<std::size_t>>& blocks) {
  std::set<std::vector<PointRank>> out;
  for (const auto& b : blocks) out.insert(oracle::ranks_of(s, o, b));
  return out;
}

}  // namespace

TEST(ProjectiveSpace, PointCounts) {
  EXPECT_EQ(ProjectiveSpace(Field::make(3, 2), 2).num_points(), 91u);
  EXPECT_EQ(ProjectiveSpace(Field::make(7, 2), 3).num_points(), 120100u);
  EXPECT_EQ(ProjectiveSpace(Field::make(2, 1), 3).num_points(), 15u);
}

TEST(ProjectiveSpace, RankingIsABijectionOntoNormalizedVectors) {
  for (auto [p, t, n] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {3, 1, 3}, {3, 2, 2}, {5, 1, 2}}) {
    const auto f = Field::make(p, t);
    const ProjectiveSpace s(f, n);
    const oracle::Space o(*f, n);
    ASSERT_EQ(s.num_points(), o.points().size());
    std::set<std::vector<Elem>> seen;
    for (PointRank r = 0; r < s.num_points(); ++r) {
      const auto v = s.point(r);
      EXPECT_EQ(s.rank(v), r);
      EXPECT_EQ(std::vector<std::uint32_t>(v.begin(), v.end()), o.normalize({v.begin(), v.end()}));
      seen.insert(v);
    }
    EXPECT_EQ(seen.size(), s.num_points());
    // any nonzero scalar multiple has the same rank
    for (const auto& v : o.points()) {
      std::vector<Elem> w(v.begin(), v.end());
      for (auto& c : w) c = f->mul(c, f->generator());
      EXPECT_EQ(s.rank(w), oracle::rank_of(s, v));
    }
  }
  const ProjectiveSpace s(Field::make(3, 2), 2);
  EXPECT_EQ(s.point(0), (std::vector<Elem>{1, 0, 0}));
  EXPECT_EQ(s.point(90), (std::vector<Elem>{0, 0, 1}));
}

TEST(ProjectiveSpace, ZeroVectorHasNoRank) {
  const ProjectiveSpace s(Field::make(3, 1), 2);
  try {
    s.rank(std::vector<Elem>{0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(ProjectiveSpace, SubspaceCounts) {
  const ProjectiveSpace s(Field::make(3, 2), 3);
  EXPECT_EQ(s.count_subspaces(1), 7462);
  std::uint64_t visited = 0;
  std::set<Subspace> distinct;
  s.for_each_subspace(1, [&](const Subspace& l) {
    ++visited;
    distinct.insert(l);
    EXPECT_EQ(s.points_in(l), 10u);
    return true;
  });
  EXPECT_EQ(visited, 7462u);
  EXPECT_EQ(distinct.size(), 7462u);
  EXPECT_EQ(s.count_subspaces(2), 820);
  EXPECT_EQ(s.count_subspaces(3), 1);
}

TEST(ProjectiveSpace, EnumerationMatchesBruteForce) {
  for (auto [p, t, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 3}, {2, 2, 3}, {2, 1, 4}}) {
    const auto f = Field::make(p, t);
    const ProjectiveSpace s(f, n);
    const oracle::Space o(*f, n);
    EXPECT_EQ(library_subspaces(s, 1), oracle_subspaces(s, o, o.lines()));
    EXPECT_EQ(library_subspaces(s, n - 1), oracle_subspaces(s, o, o.hyperplanes()));
    if (n == 4) EXPECT_EQ(library_subspaces(s, 2), oracle_subspaces(s, o, o.subspaces(3)));
  }
}

TEST(ProjectiveSpace, EnumeratorSeekResumesTheWalk) {
  SubspaceEnumerator full(3, 4, 1);
  std::vector<std::vector<Elem>> all;
  std::vector<Elem> rows;
  std::vector<std::uint32_t> piv;
  while (full.next(rows, piv)) all.push_back(rows);
  ASSERT_EQ(all.size(), full.count());
  for (std::uint64_t start : {0ull, 1ull, 17ull, 200ull, 356ull}) {
    SubspaceEnumerator e(3, 4, 1);
    e.seek(start);
    std::uint64_t i = start;
    while (e.next(rows, piv)) ASSERT_EQ(rows, all[i++]);
    EXPECT_EQ(i, all.size());
  }
}

TEST(ProjectiveSpace, SubspacesThroughALine) {
  const auto f = Field::make(3, 1);
  const ProjectiveSpace s(f, 3);
  const oracle::Space o(*f, 3);
  const auto l = s.span_points(std::vector<PointRank>{0, 5});
  std::set<std::vector<PointRank>> got;
  s.for_each_subspace_through(l, 2, [&](const Subspace& pi) {
    EXPECT_TRUE(s.whole().contains(*f, pi));
    EXPECT_TRUE(pi.contains(*f, l));
    auto pts = s.points_of(pi);
    std::sort(pts.begin(), pts.end());
    got.insert(pts);
    return true;
  });
  auto lp = s.points_of(l);
  std::sort(lp.begin(), lp.end());
  std::set<std::vector<PointRank>> want;
  for (const auto& h : o.hyperplanes()) {
    const auto r = oracle::ranks_of(s, o, h);
    if (std::includes(r.begin(), r.end(), lp.begin(), lp.end())) want.insert(r);
  }
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.size(), 4u);
  EXPECT_EQ(s.count_subspaces_through(l, 2), 4);
}

TEST(ProjectiveSpace, SpanAndMeetAgreeWithPointSets) {
  const auto f = Field::make(3, 1);
  const ProjectiveSpace s(f, 3);
  const oracle::Space o(*f, 3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<PointRank> a{static_cast<PointRank>(rng() % 40), static_cast<PointRank>(rng() % 40)};
    std::vector<PointRank> b{static_cast<PointRank>(rng() % 40)};
    if (trial % 2) b.push_back(static_cast<PointRank>(rng() % 40));
    const auto sa = s.span_points(a), sb = s.span_points(b);
    auto pa = s.points_of(sa), pb = s.points_of(sb);
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    std::vector<PointRank> inter;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(inter));
    auto pm = s.points_of(s.meet(sa, sb));
    std::sort(pm.begin(), pm.end());
    EXPECT_EQ(pm, inter);
    std::vector<oracle::Vec> gens;
    for (auto r : a) {
      const auto v = s.point(r);
      gens.emplace_back(v.begin(), v.end());
    }
    for (auto r : b) {
      const auto v = s.point(r);
      gens.emplace_back(v.begin(), v.end());
    }
    auto ps = s.points_of(s.span(sa, sb));
    std::sort(ps.begin(), ps.end());
    EXPECT_EQ(ps, oracle::ranks_of(s, o, o.span(gens)));
    // Grassmann identity
    EXPECT_EQ(s.span(sa, sb).vector_dim() + s.meet(sa, sb).vector_dim(), sa.vector_dim() + sb.vector_dim());
  }
}

TEST(ProjectiveSpace, CanonicalFormIsBasisIndependent) {
  const auto f = Field::make(5, 1);
  const ProjectiveSpace s(f, 3);
  const auto a = s.subspace({1, 2, 0, 3, 0, 1, 4, 4});
  // same plane from a different basis: (r0 + r1, 2 r1)
  const auto b = s.subspace({1, 3, 4, 2, 0, 2, 3, 3});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dim(), 1);
  const auto d = a.dual_rows(*f);
  ASSERT_EQ(d.size(), 2u * 4u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Elem dot = 0;
      for (std::size_t c = 0; c < 4; ++c) dot = f->add(dot, f->mul(a.row(i)[c], d[j * 4 + c]));
      EXPECT_EQ(dot, 0u);
    }
  EXPECT_TRUE(Subspace().empty());
  EXPECT_EQ(Subspace().dim(), -1);
}

TEST(ProjectiveSpace, HyperplaneFromCoefficients) {
  const auto f = Field::make(2, 2);
  const ProjectiveSpace s(f, 2);
  const oracle::Space o(*f, 2);
  for (const auto& a : o.points()) {
    const auto h = s.hyperplane(std::vector<Elem>(a.begin(), a.end()));
    EXPECT_EQ(h.dim(), 1);
    for (PointRank r = 0; r < s.num_points(); ++r) {
      const auto v = s.point(r);
      Elem dot = 0;
      for (int c = 0; c < 3; ++c) dot = f->add(dot, f->mul(a[c], v[c]));
      EXPECT_EQ(s.contains(h, r), dot == 0);
    }
  }
}

TEST(ProjectiveSpace, CoordinatesInsideASubspace) {
  const auto f = Field::make(3, 1);
  const auto s = ProjectiveSpace::make(f, 3);
  const auto pi = s->hyperplane(std::vector<Elem>{1, 1, 0, 2});
  const ProjectiveSpace local(f, 2);
  std::set<PointRank> images;
  for (auto r : s->points_of(pi)) images.insert(local.rank(s->coordinates_in(pi, s->point(r))));
  EXPECT_EQ(images.size(), local.num_points());

  const PointSet b(s, s->points_of(pi));
  const auto inside = restrict_to(b, pi);
  EXPECT_EQ(inside.size(), 13u);
  EXPECT_EQ(inside.space()->n(), 2u);
}

TEST(ProjectiveSpace, ProjectionFromAPoint) {
  const auto f = Field::make(3, 1);
  const auto s = ProjectiveSpace::make(f, 3);
  const oracle::Space o(*f, 3);
  const auto h = s->hyperplane(std::vector<Elem>{0, 0, 0, 1});
  PointRank q = 0;
  while (s->contains(h, q)) ++q;
  std::vector<PointRank> pts;
  for (PointRank r = 0; r < s->num_points(); r += 3)
    if (r != q && !s->contains(h, r)) pts.push_back(r);
  const PointSet b(s, pts);
  const auto img = project(b, q, h);
  std::set<PointRank> want;
  const auto qv = s->point(q);
  for (auto r : pts) {
    const auto rv = s->point(r);
    for (auto i : o.span({{qv.begin(), qv.end()}, {rv.begin(), rv.end()}})) {
      const auto& v = o.points()[i];
      if (v[3] == 0) want.insert(oracle::rank_of(*s, v));
    }
  }
  EXPECT_EQ(img.ranks(), std::vector<PointRank>(want.begin(), want.end()));
  for (auto r : img.ranks()) EXPECT_TRUE(s->contains(h, r));
}

TEST(PointSet, MembershipAndCounts) {
  const auto s = ProjectiveSpace::make(Field::make(3, 2), 2);
  const PointSet b(s, {5, 1, 90, 5, 64});
  EXPECT_EQ(b.ranks(), (std::vector<PointRank>{1, 5, 64, 90}));
  EXPECT_TRUE(b.contains(90));
  EXPECT_FALSE(b.contains(2));
  EXPECT_EQ(b.count_in(std::vector<PointRank>{1, 2, 3, 5, 90}), 3u);
  const PointSet c(s, {1, 5, 64, 90, 7});
  EXPECT_TRUE(b.is_subset_of(c));
  EXPECT_FALSE(c.is_subset_of(b));
  const auto l = s->span_points(std::vector<PointRank>{1, 5});
  std::size_t direct = 0;
  for (auto r : s->points_of(l)) direct += b.contains(r);
  EXPECT_EQ(b.count_in(l), direct);
}
