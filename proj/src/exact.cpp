#include "fingeo/exact.hpp"

#include "fingeo/error.hpp"

namespace fingeo {

BigInt ipow(std::uint64_t base, std::uint64_t exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1u;
  }
  return r;
}

Rational rpow(std::uint64_t base, std::int64_t exp) {
  if (exp >= 0) return Rational(ipow(base, static_cast<std::uint64_t>(exp)));
  return Rational(BigInt(1), ipow(base, static_cast<std::uint64_t>(-exp)));
}

BigInt gaussian_binomial(std::int64_t m, std::int64_t r, std::uint64_t q) {
  if (r < 0 || m < 0 || r > m) {
    throw Error(ErrorCode::RangeError,
                "gaussian_binomial requires 0 <= r <= m (m=" + std::to_string(m) + ", r=" + std::to_string(r) + ")");
  }
  BigInt num = 1;
  BigInt den = 1;
  for (std::int64_t i = 0; i < r; ++i) {
    num *= ipow(q, static_cast<std::uint64_t>(m - i)) - 1;
    den *= ipow(q, static_cast<std::uint64_t>(r - i)) - 1;
  }
  return num / den;
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt ceil(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt quot = num / den;  // truncates toward zero
  if (quot * den != num && num > 0) quot += 1;
  return quot;
}

}  // namespace fingeo
