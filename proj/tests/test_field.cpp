#include <gtest/gtest.h>

#include <random>

#include "fingeo/error.hpp"
#include "fingeo/exact.hpp"
#include "fingeo/field.hpp"
#include "oracles.hpp"

using namespace fingeo;

namespace {

void expect_matches_polynomial_arithmetic(const Field& f) {
  const auto& mod = f.modulus();
  for (Elem a = 0; a < f.q(); ++a) {
    for (Elem b = 0; b < f.q(); ++b) {
      ASSERT_EQ(f.mul(a, b), oracle::poly_mul(a, b, f.p(), mod)) << f.name() << " " << a << "*" << b;
      ASSERT_EQ(f.add(a, b), oracle::poly_add(a, b, f.p(), f.t())) << f.name() << " " << a << "+" << b;
    }
  }
}

void expect_sampled_polynomial_arithmetic(const Field& f, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Elem a = rng() % f.q(), b = rng() % f.q(), c = rng() % f.q();
    ASSERT_EQ(f.mul(a, b), oracle::poly_mul(a, b, f.p(), f.modulus()));
    ASSERT_EQ(f.add(a, b), oracle::poly_add(a, b, f.p(), f.t()));
    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    ASSERT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
  }
}

}  // namespace

TEST(Field, TableFieldsAgreeWithPolynomialArithmetic) {
  for (auto [p, t] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {7, 1}, {2, 3}, {2, 4}, {3, 2}, {3, 3},
                                                      {5, 2}, {7, 2}, {2, 6}, {13, 2}}) {
    const auto f = Field::make(p, t);
    EXPECT_TRUE(f->conway());
    expect_matches_polynomial_arithmetic(*f);
  }
}

TEST(Field, ZechAdditionAboveTableLimit) {
  const auto f = Field::make(7, 4);
  ASSERT_GT(f->q(), 1024u);
  expect_sampled_polynomial_arithmetic(*f, 200000, 11);
  for (Elem a = 0; a < f->q(); ++a) {
    ASSERT_EQ(f->add(a, f->neg(a)), 0u);
    ASSERT_EQ(f->add(a, 0), a);
  }
}

TEST(Field, ExplicitModulusOutsideTable) {
  const auto f = Field::make(2, 11, std::vector<std::uint32_t>{1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  EXPECT_FALSE(f->conway());
  EXPECT_EQ(f->q(), 2048u);
  expect_sampled_polynomial_arithmetic(*f, 200000, 5);
}

TEST(Field, InversesAndZeroInverse) {
  for (auto [p, t] : std::vector<std::pair<int, int>>{{3, 2}, {2, 5}, {7, 2}, {7, 4}}) {
    const auto f = Field::make(p, t);
    for (Elem a = 1; a < f->q(); ++a) ASSERT_EQ(f->mul(a, f->inv(a)), 1u);
    try {
      f->inv(0);
      FAIL() << "inverse of zero";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ZeroInverse);
    }
  }
}

TEST(Field, FrobeniusFixesEveryElement) {
  const auto f = Field::make(3, 2);
  for (Elem a = 0; a < 9; ++a) EXPECT_EQ(f->pow(a, 9), a);
  const auto g = Field::make(2, 8);
  for (Elem a = 0; a < 256; ++a) EXPECT_EQ(g->pow(a, 256), a);
}

TEST(Field, GeneratorIsPrimitive) {
  for (auto [p, t] : std::vector<std::pair<int, int>>{{3, 2}, {2, 8}, {7, 2}, {7, 4}}) {
    const auto f = Field::make(p, t);
    std::set<Elem> powers;
    Elem g = 1;
    for (std::uint32_t i = 0; i + 1 < f->q(); ++i) {
      powers.insert(g);
      g = f->mul(g, f->generator());
    }
    EXPECT_EQ(powers.size(), f->q() - 1);
    EXPECT_EQ(g, 1u);
  }
}

TEST(Field, SubfieldMembership) {
  const auto f = Field::make(3, 2);
  int base = 0;
  for (Elem a = 0; a < 9; ++a) base += f->in_subfield(a, 1);
  EXPECT_EQ(base, 3);
  const auto g = Field::make(2, 6);
  for (std::uint32_t e : {1u, 2u, 3u, 6u}) {
    const auto sub = g->subfield_elements(e);
    EXPECT_EQ(sub.size(), 1u << e);
    // closed under + and *
    const std::set<Elem> s(sub.begin(), sub.end());
    for (Elem a : sub)
      for (Elem b : sub) {
        EXPECT_TRUE(s.count(g->add(a, b)));
        EXPECT_TRUE(s.count(g->mul(a, b)));
      }
  }
  try {
    g->in_subfield(1, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadDivisor);
  }
}

TEST(Field, SubfieldFromOrder) {
  const auto f = Field::make(7, 2);
  const auto s = subfield_from_order(*f, 7);
  EXPECT_EQ(s.e, 1u);
  EXPECT_EQ(s.h, 2u);
  EXPECT_THROW(subfield_from_order(*f, 5), Error);
  EXPECT_THROW(make_subfield(*Field::make(2, 6), 4), Error);
}

TEST(Field, RejectsBadParameters) {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code_of([] { Field::make(4, 1); }), ErrorCode::NotPrime);
  EXPECT_EQ(code_of([] { Field::make(2, 19); }), ErrorCode::NoTableEntry);
  EXPECT_EQ(code_of([] { Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }), ErrorCode::ReduciblePolynomial);
}

TEST(Field, ElementWrapper) {
  const auto f = Field::make(5, 2);
  const FieldElement a(f, 7), b(f, 13);
  EXPECT_EQ((a * b).value(), f->mul(7, 13));
  EXPECT_EQ(((a / b) * b).value(), 7u);
  EXPECT_EQ((a - a).value(), 0u);
  EXPECT_EQ((-a + a).value(), 0u);
  EXPECT_EQ(a.pow(24).value(), 1u);
  EXPECT_THROW(a + FieldElement(Field::make(5, 1), 1), Error);
}

TEST(Exact, GaussianBinomialsByCounting) {
  EXPECT_EQ(gaussian_binomial(2, 1, 3), 4);
  for (auto [m, r, q] : std::vector<std::tuple<int, int, int>>{{4, 2, 2}, {3, 1, 3}, {4, 2, 3}, {3, 2, 4}}) {
    const auto f = Field::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
    const oracle::Space s(*f, m - 1);
    EXPECT_EQ(gaussian_binomial(m, r, q), s.subspaces(r).size()) << m << " " << r << " " << q;
  }
  EXPECT_EQ(gaussian_binomial(4, 2, 2), 35);
  EXPECT_EQ(gaussian_binomial(5, 0, 7), 1);
  EXPECT_THROW(gaussian_binomial(2, 3, 2), Error);
}

TEST(Exact, PowersAndCeiling) {
  EXPECT_EQ(rpow(7, -2), Rational(1, 49));
  EXPECT_EQ(rpow(3, 3), 27);
  EXPECT_EQ(ceil(Rational(7, 2)), 4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(ceil(Rational(6, 3)), 2);
  EXPECT_EQ(to_string(Rational(784620, 7)), "784620/7");
  EXPECT_EQ(ipow(49, 3), 117649);
}
