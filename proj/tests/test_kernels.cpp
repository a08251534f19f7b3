#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "fingeo/blockingset.hpp"
#include "fingeo/field.hpp"
#include "fingeo/kernels.hpp"
#include "fingeo/projspace.hpp"

using namespace fingeo;

namespace {

struct Data {
  std::vector<std::uint64_t> a, b;
  std::vector<std::uint32_t> ranks;
};

Data make_data(std::mt19937_64& rng, std::size_t words, std::size_t nranks) {
  Data d;
  d.a.resize(words);
  d.b.resize(words);
  for (auto& w : d.a) w = rng();
  for (auto& w : d.b) w = rng() & rng();
  for (std::size_t i = 0; i < nranks; ++i) d.ranks.push_back(static_cast<std::uint32_t>(rng() % (64 * words)));
  return d;
}

std::size_t naive_and(const Data& d) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < d.a.size(); ++i) c += std::popcount(d.a[i] & d.b[i]);
  return c;
}

std::size_t naive_andnot(const Data& d) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < d.a.size(); ++i) c += std::popcount(d.a[i] & ~d.b[i]);
  return c;
}

std::size_t naive_members(const Data& d) {
  std::size_t c = 0;
  for (auto r : d.ranks) c += (d.a[r / 64] >> (r % 64)) & 1;
  return c;
}

class IsaGuard {
 public:
  explicit IsaGuard(kernels::Isa isa) : saved_(kernels::active_isa()) { kernels::force_isa(isa); }
  ~IsaGuard() { kernels::force_isa(saved_); }

 private:
  kernels::Isa saved_;
};

}  // namespace

TEST(Kernels, ScalarMatchesNaive) {
  std::mt19937_64 rng(1);
  for (std::size_t words : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 1001u}) {
    for (std::size_t nranks : {0u, 1u, 7u, 8u, 9u, 100u}) {
      if (words == 0 && nranks) continue;
      const auto d = make_data(rng, words, nranks);
      EXPECT_EQ(kernels::scalar::and_count(d.a, d.b), naive_and(d));
      EXPECT_EQ(kernels::scalar::andnot_count(d.a, d.b), naive_andnot(d));
      EXPECT_EQ(kernels::scalar::count_members(d.ranks, d.a), naive_members(d));
    }
  }
}

#if defined(FINGEO_HAVE_AVX2)
TEST(Kernels, Avx2MatchesScalar) {
  if (!kernels::avx2_available()) GTEST_SKIP() << "CPU lacks AVX2";
  std::mt19937_64 rng(2);
  for (std::size_t words : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 1001u, 4099u}) {
    for (std::size_t nranks : {0u, 1u, 7u, 8u, 9u, 15u, 16u, 17u, 1000u}) {
      if (words == 0 && nranks) continue;
      const auto d = make_data(rng, words, nranks);
      EXPECT_EQ(kernels::avx2::and_count(d.a, d.b), kernels::scalar::and_count(d.a, d.b));
      EXPECT_EQ(kernels::avx2::andnot_count(d.a, d.b), kernels::scalar::andnot_count(d.a, d.b));
      EXPECT_EQ(kernels::avx2::count_members(d.ranks, d.a), kernels::scalar::count_members(d.ranks, d.a));
    }
  }
}
#endif

TEST(Kernels, DispatchCanBePinned) {
  {
    IsaGuard g(kernels::Isa::Scalar);
    EXPECT_EQ(kernels::active_isa(), kernels::Isa::Scalar);
  }
  IsaGuard g(kernels::Isa::Avx2);
  EXPECT_EQ(kernels::active_isa(), kernels::avx2_available() ? kernels::Isa::Avx2 : kernels::Isa::Scalar);
  EXPECT_STREQ(kernels::isa_name(kernels::Isa::Scalar), "scalar");
}

TEST(Kernels, SpectraAgreeAcrossIsas) {
  const auto s = ProjectiveSpace::make(Field::make(7, 2), 2);
  std::mt19937_64 rng(5);
  std::vector<PointRank> pts;
  for (PointRank r = 0; r < s->num_points(); ++r)
    if (rng() % 10 == 0) pts.push_back(r);
  const PointSet b(s, pts);
  IntersectionSpectrum scalar_spec, avx_spec;
  {
    IsaGuard g(kernels::Isa::Scalar);
    scalar_spec = spectrum(b, 1, SpectrumMethod::Enumerate);
  }
  {
    IsaGuard g(kernels::Isa::Avx2);
    avx_spec = spectrum(b, 1, SpectrumMethod::Enumerate);
  }
  EXPECT_EQ(scalar_spec.x, avx_spec.x);
}
