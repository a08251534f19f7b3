#include "fingeo/field.hpp"

#include <algorithm>
#include <sstream>

#include "conway_table.inc"

namespace fingeo {

namespace {

using Poly = std::vector<std::uint32_t>;

struct TableEntry {
  std::uint32_t p;
  std::uint32_t t;
  Poly coeffs;
};

struct ConwayTable {
  std::string version;
  std::vector<TableEntry> entries;
};

const ConwayTable& table() {
  static const ConwayTable parsed = [] {
    ConwayTable out;
    std::istringstream in{std::string(kConwayTableText)};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        const auto pos = line.find("conway-table");
        if (pos != std::string::npos && out.version.empty()) out.version = line.substr(pos);
        continue;
      }
      std::istringstream ls(line);
      TableEntry e{};
      ls >> e.p >> e.t;
      std::uint32_t c = 0;
      while (ls >> c) e.coeffs.push_back(c);
      out.entries.push_back(std::move(e));
    }
    return out;
  }();
  return parsed;
}

// Remainder of a modulo monic b, both constant-term first.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      const Poly r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

}  // namespace

std::string conway_table_version() { return table().version; }

std::optional<std::vector<std::uint32_t>> conway_polynomial(std::uint32_t p, std::uint32_t t) {
  for (const auto& e : table().entries) {
    if (e.p == p && e.t == t) return e.coeffs;
  }
  return std::nullopt;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t t, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (t == 0) throw Error(ErrorCode::RangeError, "extension degree must be positive");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < t; ++i) {
    q64 *= p;
    if (q64 > kMaxOrder) throw Error(ErrorCode::RangeError, "field order exceeds 2^20");
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->t_ = t;
  f->q_ = static_cast<std::uint32_t>(q64);
  f->prime_ = (t == 1);

  const auto table_entry = conway_polynomial(p, t);
  if (modulus) {
    if (modulus->size() != t + 1 || modulus->back() != 1) {
      throw Error(ErrorCode::BadParams, "modulus must be monic of degree " + std::to_string(t));
    }
    for (auto c : *modulus) {
      if (c >= p) throw Error(ErrorCode::BadParams, "modulus coefficient out of range");
    }
    f->modulus_ = *modulus;
    f->conway_ = table_entry && *table_entry == *modulus;
  } else {
    if (!table_entry) {
      throw Error(ErrorCode::NoTableEntry,
                  "no Conway polynomial for p=" + std::to_string(p) + " t=" + std::to_string(t));
    }
    f->modulus_ = *table_entry;
    f->conway_ = true;
  }
  if (!is_irreducible(f->modulus_, p)) {
    throw Error(ErrorCode::ReduciblePolynomial, "modulus is reducible over GF(" + std::to_string(p) + ")");
  }
  f->root_of_linear_ = (p - f->modulus_[0]) % p;

  const std::uint32_t q = f->q_;
  auto to_digits = [&](Elem a) {
    Poly d(t, 0);
    for (std::uint32_t i = 0; i < t; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto from_digits = [&](const Poly& d) {
    Elem v = 0;
    for (std::uint32_t i = t; i-- > 0;) v = v * p + d[i];
    return v;
  };
  auto mulmod = [&](Elem a, Elem b) {
    const Poly da = to_digits(a);
    const Poly db = to_digits(b);
    Poly prod(2 * t - 1, 0);
    for (std::uint32_t i = 0; i < t; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < t; ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p);
      }
    }
    Poly r = poly_mod(prod, f->modulus_, p);
    r.resize(t, 0);
    return from_digits(r);
  };

  // Prefer x as the primitive element; fall back to the smallest one.
  f->exp_.assign(2 * (q - 1), 0);
  f->log_.assign(q, 0);
  std::vector<Elem> candidates;
  candidates.push_back(f->x());
  for (Elem g = 2; g < q; ++g) candidates.push_back(g);
  bool found = false;
  for (Elem g : candidates) {
    if (g == 0 || (q > 2 && g == 1)) continue;
    Elem cur = 1;
    std::uint32_t order = 0;
    do {
      f->exp_[order] = cur;
      cur = mulmod(cur, g);
      ++order;
    } while (cur != 1 && order < q - 1);
    if (cur == 1 && order == q - 1) {
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::ReduciblePolynomial, "no primitive element found");
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    f->exp_[i + q - 1] = f->exp_[i];
    f->log_[f->exp_[i]] = i;
  }

  f->neg_.assign(q, 0);
  for (Elem a = 0; a < q; ++a) {
    Poly d = to_digits(a);
    for (auto& c : d) c = (p - c) % p;
    f->neg_[a] = from_digits(d);
  }
  if (!f->prime_) {
    auto add_digits = [&](Elem a, Elem b) {
      Poly da = to_digits(a);
      const Poly db = to_digits(b);
      for (std::uint32_t i = 0; i < t; ++i) da[i] = (da[i] + db[i]) % p;
      return from_digits(da);
    };
    f->plus_one_.assign(q, 0);
    for (Elem a = 0; a < q; ++a) f->plus_one_[a] = add_digits(a, 1);
    if (q <= 1024) {
      f->add_table_.assign(static_cast<std::size_t>(q) * q, 0);
      for (Elem a = 0; a < q; ++a) {
        for (Elem b = 0; b < q; ++b) f->add_table_[static_cast<std::size_t>(a) * q + b] = add_digits(a, b);
      }
    }
  }
  return f;
}

Elem Field::add_zech(Elem a, Elem b) const noexcept {
  if (a == 0) return b;
  if (b == 0) return a;
  // a + b = a (1 + b/a)
  const Elem ratio = exp_[log_[b] + (q_ - 1) - log_[a]];
  const Elem s = plus_one_[ratio];
  if (s == 0) return 0;
  return exp_[log_[a] + log_[s]];
}

std::string Field::name() const { return "GF(" + std::to_string(q_) + ")"; }

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "inverse of zero in " + name());
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t k) const noexcept {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1))];
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(t_, 0);
  for (std::uint32_t i = 0; i < t_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() != t_) throw Error(ErrorCode::DimensionMismatch, "digit vector has wrong length");
  Elem v = 0;
  for (std::size_t i = t_; i-- > 0;) {
    if (digits[i] >= p_) throw Error(ErrorCode::RangeError, "digit out of range");
    v = v * p_ + digits[i];
  }
  return v;
}

bool Field::in_subfield(Elem a, std::uint32_t e) const {
  if (e == 0 || t_ % e != 0) {
    throw Error(ErrorCode::BadDivisor, std::to_string(e) + " does not divide " + std::to_string(t_));
  }
  std::uint64_t pe = 1;
  for (std::uint32_t i = 0; i < e; ++i) pe *= p_;
  return pow(a, pe) == a;
}

std::vector<Elem> Field::subfield_elements(std::uint32_t e) const {
  std::vector<Elem> out;
  for (Elem a = 0; a < q_; ++a) {
    if (in_subfield(a, e)) out.push_back(a);
  }
  return out;
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (value_ >= field_->q()) throw Error(ErrorCode::RangeError, "encoding out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_ && (field_->p() != o.field_->p() || field_->t() != o.field_->t() ||
                             field_->modulus() != o.field_->modulus())) {
    throw Error(ErrorCode::SpecMismatch, field_->name() + " vs " + o.field_->name());
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t k) const { return {field_, field_->pow(value_, k)}; }
bool FieldElement::operator==(const FieldElement& o) const {
  check_same(o);
  return value_ == o.value_;
}

SubfieldSpec make_subfield(const Field& field, std::uint32_t e) {
  if (e == 0 || field.t() % e != 0) {
    throw Error(ErrorCode::BadDivisor, std::to_string(e) + " does not divide " + std::to_string(field.t()));
  }
  SubfieldSpec s;
  s.e = e;
  s.p0 = 1;
  for (std::uint32_t i = 0; i < e; ++i) s.p0 *= field.p();
  s.h = field.t() / e;
  return s;
}

SubfieldSpec subfield_from_order(const Field& field, std::uint32_t p0) {
  std::uint32_t e = 0;
  std::uint64_t v = 1;
  while (v < p0) {
    v *= field.p();
    ++e;
  }
  if (v != p0 || e == 0) {
    throw Error(ErrorCode::BadParams, std::to_string(p0) + " is not a power of " + std::to_string(field.p()));
  }
  return make_subfield(field, e);
}

}  // namespace fingeo
