#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace altnet {

namespace gf {

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t add(std::int64_t a, std::int64_t b, std::int64_t p) {
  std::int64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b, std::int64_t p) {
  std::int64_t s = a - b;
  return s < 0 ? s + p : s;
}

inline std::int64_t neg(std::int64_t a, std::int64_t p) { return a == 0 ? 0 : p - a; }

inline std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>(
      static_cast<unsigned __int128>(a) * static_cast<std::uint64_t>(b) % p);
}

/// Extended Euclid. Requires gcd(a, p) = 1; inverting zero is an error.
inline std::int64_t inv(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("GF(p): inverse of zero");
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return t < 0 ? t + p : t;
}

}  // namespace gf

/// A prime field GF(p). Construction rejects non-primes. p = 2 is legal
/// arithmetic-wise, but the capacity theorems assume p > 2, so reports
/// downstream flag fields that fail meets_capacity_preconditions().
class FieldSpec {
 public:
  explicit FieldSpec(std::int64_t p) : p_(p) {
    if (!gf::is_prime(p))
      throw std::invalid_argument("FieldSpec: modulus " + std::to_string(p) +
                                  " is not prime");
  }
  std::int64_t p() const { return p_; }
  bool meets_capacity_preconditions() const { return p_ >= 3; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) {
    return !(a == b);
  }

 private:
  std::int64_t p_;
};

/// A residue in [0, p). Operands must come from the same field.
class FieldElement {
 public:
  FieldElement(FieldSpec field, std::int64_t value)
      : field_(field), value_(((value % field.p()) + field.p()) % field.p()) {}

  std::int64_t value() const { return value_; }
  const FieldSpec& field() const { return field_; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return FieldElement(a.field_, gf::add(a.value_, b.value_, a.field_.p()));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return FieldElement(a.field_, gf::sub(a.value_, b.value_, a.field_.p()));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return FieldElement(a.field_, gf::mul(a.value_, b.value_, a.field_.p()));
  }
  FieldElement operator-() const {
    return FieldElement(field_, gf::neg(value_, field_.p()));
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return a.value_ == b.value_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
    return os << a.value_;
  }

 private:
  void check_same(const FieldElement& other) const {
    if (field_ != other.field_)
      throw std::invalid_argument("FieldElement: mixed-field operands");
  }

  FieldSpec field_;
  std::int64_t value_;
};

inline FieldElement inv(const FieldElement& a) {
  return FieldElement(a.field(), gf::inv(a.value(), a.field().p()));
}

}  // namespace altnet
