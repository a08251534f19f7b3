#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fingeo/error.hpp"

namespace fingeo {

/// A field element in base-p digit encoding: the coefficient vector
/// (c_0, ..., c_{t-1}) of the polynomial basis is stored as sum c_i p^i.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Version tag of the shipped Conway polynomial table.
std::string conway_table_version();

/// Table lookup; empty when (p, t) is not shipped.
std::optional<std::vector<std::uint32_t>> conway_polynomial(std::uint32_t p, std::uint32_t t);

bool is_prime(std::uint64_t n);

/// Exact arithmetic in GF(p^t) over an explicit monic irreducible modulus.
///
/// Multiplication goes through log/antilog tables of a primitive element.
/// Addition uses a full table for q <= 1024 and Zech logarithms above that.
/// Instances are immutable once built and safe to share between threads.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;

  /// Builds GF(p^t). Without a modulus the Conway table supplies one.
  static FieldPtr make(std::uint32_t p, std::uint32_t t,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t t() const noexcept { return t_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  bool conway() const noexcept { return conway_; }
  std::string name() const;

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  /// The polynomial-basis element x (a root of the modulus). Equals p for t > 1.
  Elem x() const noexcept { return t_ > 1 ? p_ : root_of_linear_; }
  Elem generator() const noexcept { return exp_[1]; }

  Elem add(Elem a, Elem b) const noexcept {
    if (prime_) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_zech(a, b);
  }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws ZeroInverse for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const noexcept;
  /// Discrete log base generator(); undefined for 0.
  std::uint32_t log(Elem a) const noexcept { return log_[a]; }
  Elem exp(std::uint32_t k) const noexcept { return exp_[k % (q_ - 1)]; }

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;

  /// a^(p^e) == a. Throws BadDivisor when e does not divide t.
  bool in_subfield(Elem a, std::uint32_t e) const;
  /// All elements of GF(p^e) inside this field, ascending by encoding.
  std::vector<Elem> subfield_elements(std::uint32_t e) const;

 private:
  Field() = default;
  Elem add_zech(Elem a, Elem b) const noexcept;

  std::uint32_t p_ = 0;
  std::uint32_t t_ = 0;
  std::uint32_t q_ = 0;
  bool prime_ = false;
  bool conway_ = false;
  Elem root_of_linear_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;           // size 2(q-1): no reduction needed in mul
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<Elem> neg_;
  std::vector<Elem> plus_one_;      // Zech: a -> a + 1
  std::vector<Elem> add_table_;
};

/// Value-semantics handle around an encoding, for callers that want operators.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);

  const FieldPtr& field() const noexcept { return field_; }
  Elem value() const noexcept { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t k) const;
  bool operator==(const FieldElement& o) const;

 private:
  void check_same(const FieldElement& o) const;

  FieldPtr field_;
  Elem value_;
};

/// The subfield F_{p^e} of a field; p0 = p^e, h = t/e.
struct SubfieldSpec {
  std::uint32_t e = 1;
  std::uint32_t p0 = 0;
  std::uint32_t h = 1;
};

/// Validates e | t (BadDivisor otherwise).
SubfieldSpec make_subfield(const Field& field, std::uint32_t e);

/// Interprets p0 as a power p^e of the field's characteristic with e | t.
/// Throws BadParams if p0 is not such a power.
SubfieldSpec subfield_from_order(const Field& field, std::uint32_t p0);

}  // namespace fingeo
