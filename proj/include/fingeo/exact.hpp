#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fingeo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^exp for exp >= 0.
BigInt ipow(std::uint64_t base, std::uint64_t exp);

/// base^exp for any integer exponent; negative exponents give 1/base^|exp|.
Rational rpow(std::uint64_t base, std::int64_t exp);

/// Number of r-dimensional vector subspaces of an m-dimensional space over
/// GF(q). Throws RangeError unless 0 <= r <= m.
BigInt gaussian_binomial(std::int64_t m, std::int64_t r, std::uint64_t q);

/// "a" for integers, "a/b" otherwise; always reduced.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& v);

/// Smallest integer >= r.
BigInt ceil(const Rational& r);

}  // namespace fingeo
