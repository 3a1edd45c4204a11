#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "k3disc/errors.hpp"
#include "k3disc/modular.hpp"

namespace k3disc {

// Coefficient domains. Each exposes the same surface so MultiPoly and
// DensePoly can be written once:
//   Element, is_field, characteristic(), zero(), one(), from_int(),
//   add/sub/mul/neg, is_zero, equal, divide (exact, optional), parse, format.

/// Arbitrary-precision integers.
struct IntegerRing {
  using Element = mpz_class;
  static constexpr bool is_field = false;

  std::uint64_t characteristic() const { return 0; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const { return mpz_class(static_cast<long>(v)); }
  Element from_mpz(const mpz_class& v) const { return v; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool is_negative(const Element& a) const { return sgn(a) < 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  /// a / b when b divides a exactly.
  std::optional<Element> divide(const Element& a, const Element& b) const {
    if (sgn(b) == 0) return std::nullopt;
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
    Element q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }

  Element parse(std::string_view text) const;
  std::string format(const Element& a) const { return a.get_str(); }
  bool operator==(const IntegerRing&) const { return true; }
};

/// Exact rationals.
struct RationalField {
  using Element = mpq_class;
  static constexpr bool is_field = true;

  std::uint64_t characteristic() const { return 0; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const { return mpq_class(mpz_class(static_cast<long>(v))); }
  Element from_mpz(const mpz_class& v) const { return mpq_class(v); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw UndefinedError("inverse of zero");
    return 1 / a;
  }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }
  bool is_negative(const Element& a) const { return sgn(a) < 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::optional<Element> divide(const Element& a, const Element& b) const {
    if (sgn(b) == 0) return std::nullopt;
    return Element(a / b);
  }

  Element parse(std::string_view text) const;
  std::string format(const Element& a) const { return a.get_str(); }
  bool operator==(const RationalField&) const { return true; }
};

/// Integers modulo a prime below 2^63. Elements are canonical residues.
class PrimeField {
 public:
  using Element = std::uint64_t;
  static constexpr bool is_field = true;

  PrimeField() : p_(kDefaultPrime) {}
  explicit PrimeField(std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
    std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
    m %= p_;
    return m == 0 ? 0 : p_ - m;
  }
  Element from_mpz(const mpz_class& v) const;

  Element add(Element a, Element b) const { return add_mod(a, b, p_); }
  Element sub(Element a, Element b) const { return sub_mod(a, b, p_); }
  Element mul(Element a, Element b) const { return mul_mod(a, b, p_); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const {
    if (a == 0) throw UndefinedError("inverse of zero");
    return inv_mod(a, p_);
  }
  Element pow(Element a, std::uint64_t e) const { return pow_mod(a, e, p_); }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }
  bool is_negative(Element) const { return false; }
  bool equal(Element a, Element b) const { return a == b; }
  std::optional<Element> divide(Element a, Element b) const {
    if (b == 0) return std::nullopt;
    return mul(a, inv_mod(b, p_));
  }

  /// Symmetric representative in (-p/2, p/2].
  mpz_class lift_symmetric(Element a) const;

  Element parse(std::string_view text) const;
  std::string format(Element a) const { return std::to_string(a); }
  bool operator==(const PrimeField& other) const { return p_ == other.p_; }

 private:
  std::uint64_t p_;
};

/// Reduces a rational into F_p; throws UndefinedError if p divides the denominator.
PrimeField::Element reduce_rational(const PrimeField& field, const mpq_class& q);

}  // namespace k3disc
