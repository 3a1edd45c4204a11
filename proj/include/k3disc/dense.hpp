#pragma once

#include <climits>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "k3disc/domain.hpp"
#include "k3disc/errors.hpp"
#include "k3disc/poly.hpp"

namespace k3disc {

/// Order value standing for "identically zero".
inline constexpr int kInfiniteOrder = INT_MAX;

/// Dense univariate polynomial, coefficients stored low degree first and
/// trimmed so the last entry is nonzero.
template <class D>
class DensePoly {
 public:
  using Element = typename D::Element;

  explicit DensePoly(D dom = D{}) : dom_(std::move(dom)) {}
  DensePoly(D dom, std::vector<Element> coeffs) : dom_(std::move(dom)), c_(std::move(coeffs)) { trim(); }

  static DensePoly constant(const D& dom, Element c) { return DensePoly(dom, {std::move(c)}); }
  /// x - a
  static DensePoly linear_root(const D& dom, const Element& a) { return DensePoly(dom, {dom.neg(a), dom.one()}); }
  static DensePoly x_power(const D& dom, std::size_t n) {
    std::vector<Element> c(n + 1, dom.zero());
    c[n] = dom.one();
    return DensePoly(dom, std::move(c));
  }

  const D& domain() const { return dom_; }
  const std::vector<Element>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Element coeff(std::size_t i) const { return i < c_.size() ? c_[i] : dom_.zero(); }
  Element leading() const { return c_.empty() ? dom_.zero() : c_.back(); }

  Element eval(const Element& x) const {
    Element acc = dom_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = dom_.add(dom_.mul(acc, x), c_[i]);
    return acc;
  }

  DensePoly derivative() const {
    std::vector<Element> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(dom_.mul(c_[i], dom_.from_int(static_cast<std::int64_t>(i))));
    return DensePoly(dom_, std::move(d));
  }

  DensePoly scaled(const Element& s) const {
    std::vector<Element> d(c_);
    for (auto& x : d) x = dom_.mul(x, s);
    return DensePoly(dom_, std::move(d));
  }

  DensePoly monic() const {
    if constexpr (D::is_field) {
      if (c_.empty()) return *this;
      return scaled(dom_.inv(leading()));
    } else {
      throw UndefinedError("monic normalization needs a field");
    }
  }

  friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
    std::vector<Element> r(std::max(a.c_.size(), b.c_.size()), a.dom_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.dom_.add(a.coeff(i), b.coeff(i));
    return DensePoly(a.dom_, std::move(r));
  }
  friend DensePoly operator-(const DensePoly& a, const DensePoly& b) {
    std::vector<Element> r(std::max(a.c_.size(), b.c_.size()), a.dom_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.dom_.sub(a.coeff(i), b.coeff(i));
    return DensePoly(a.dom_, std::move(r));
  }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly(a.dom_);
    std::vector<Element> r(a.c_.size() + b.c_.size() - 1, a.dom_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.dom_.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = a.dom_.add(r[i + j], a.dom_.mul(a.c_[i], b.c_[j]));
    }
    return DensePoly(a.dom_, std::move(r));
  }
  friend bool operator==(const DensePoly& a, const DensePoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.dom_.equal(a.c_[i], b.c_[i])) return false;
    }
    return true;
  }

  /// Quotient and remainder over a field.
  friend std::pair<DensePoly, DensePoly> divrem(const DensePoly& a, const DensePoly& b) {
    static_assert(D::is_field, "divrem needs a field; use pseudo_remainder over rings");
    if (b.is_zero()) throw UndefinedError("polynomial division by zero");
    const D& dom = a.dom_;
    if (a.degree() < b.degree()) return {DensePoly(dom), a};
    std::vector<Element> rem = a.c_;
    std::vector<Element> quo(a.c_.size() - b.c_.size() + 1, dom.zero());
    Element inv_lead = dom.inv(b.leading());
    for (std::size_t k = quo.size(); k-- > 0;) {
      Element q = dom.mul(rem[k + b.c_.size() - 1], inv_lead);
      quo[k] = q;
      if (dom.is_zero(q)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] = dom.sub(rem[k + j], dom.mul(q, b.c_[j]));
    }
    return {DensePoly(dom, std::move(quo)), DensePoly(dom, std::move(rem))};
  }
  friend DensePoly operator%(const DensePoly& a, const DensePoly& b) { return divrem(a, b).second; }

 private:
  void trim() {
    while (!c_.empty() && dom_.is_zero(c_.back())) c_.pop_back();
  }

  D dom_;
  std::vector<Element> c_;
};

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without division.
template <class D>
DensePoly<D> pseudo_remainder(const DensePoly<D>& a, const DensePoly<D>& b) {
  if (b.is_zero()) throw UndefinedError("pseudo-division by zero");
  const D& dom = a.domain();
  if (a.degree() < b.degree()) return a;
  std::vector<typename D::Element> rem = a.coeffs();
  const auto& bc = b.coeffs();
  auto lb = b.leading();
  for (int top = a.degree(); top >= b.degree(); --top) {
    auto lead = rem[static_cast<std::size_t>(top)];
    for (auto& x : rem) x = dom.mul(x, lb);
    std::size_t shift = static_cast<std::size_t>(top - b.degree());
    for (std::size_t j = 0; j < bc.size(); ++j) rem[shift + j] = dom.sub(rem[shift + j], dom.mul(lead, bc[j]));
  }
  return DensePoly<D>(dom, std::move(rem));
}

/// Content (gcd of coefficients, positive) of an integer polynomial.
mpz_class content(const DensePoly<IntegerRing>& p);
/// Primitive part with positive leading coefficient.
DensePoly<IntegerRing> primitive_part(const DensePoly<IntegerRing>& p);

/// Exact quotient over the integers; throws NotDivisibleError.
DensePoly<IntegerRing> exact_quotient(const DensePoly<IntegerRing>& a, const DensePoly<IntegerRing>& b);

DensePoly<IntegerRing> subresultant_gcd(const DensePoly<IntegerRing>& a, const DensePoly<IntegerRing>& b);

/// Greatest common divisor: monic over fields, primitive with positive
/// leading coefficient over the integers (subresultant remainder sequence).
template <class D>
DensePoly<D> gcd(DensePoly<D> a, DensePoly<D> b) {
  if (a.is_zero() && b.is_zero()) throw UndefinedError("gcd(0, 0) is undefined");
  if constexpr (D::is_field) {
    while (!b.is_zero()) {
      auto r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  } else {
    return subresultant_gcd(a, b);
  }
}

/// Multiplicity of x0 as a root; kInfiniteOrder for the zero polynomial.
template <class D>
int order_at(const DensePoly<D>& p, const typename D::Element& x0) {
  if (p.is_zero()) return kInfiniteOrder;
  const D& dom = p.domain();
  std::vector<typename D::Element> c = p.coeffs();
  int order = 0;
  while (c.size() > 1) {
    // synthetic division by (x - x0)
    std::vector<typename D::Element> q(c.size() - 1, dom.zero());
    typename D::Element carry = dom.zero();
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = dom.add(dom.mul(carry, x0), c[i]);
      q[i - 1] = carry;
    }
    typename D::Element rem = dom.add(dom.mul(carry, x0), c[0]);
    if (!dom.is_zero(rem)) break;
    ++order;
    c = std::move(q);
  }
  return order;
}

/// Determinant of the Sylvester matrix of (a, b) taken with formal degrees
/// (deg_a, deg_b), by Gaussian elimination over a field.
template <class D>
typename D::Element sylvester_determinant(const DensePoly<D>& a, int deg_a, const DensePoly<D>& b, int deg_b) {
  static_assert(D::is_field);
  const D& dom = a.domain();
  if (deg_a < a.degree() || deg_b < b.degree()) throw UndefinedError("formal degree below actual degree");
  if (deg_a == 0 && deg_b == 0) throw UndefinedError("resultant of two constants");
  const std::size_t n = static_cast<std::size_t>(deg_a + deg_b);
  std::vector<std::vector<typename D::Element>> m(n, std::vector<typename D::Element>(n, dom.zero()));
  for (int r = 0; r < deg_b; ++r) {
    for (int j = 0; j <= deg_a; ++j) m[r][r + j] = a.coeff(static_cast<std::size_t>(deg_a - j));
  }
  for (int r = 0; r < deg_a; ++r) {
    for (int j = 0; j <= deg_b; ++j) m[deg_b + r][r + j] = b.coeff(static_cast<std::size_t>(deg_b - j));
  }
  typename D::Element det = dom.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && dom.is_zero(m[piv][col])) ++piv;
    if (piv == n) return dom.zero();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = dom.neg(det);
    }
    det = dom.mul(det, m[col][col]);
    auto inv = dom.inv(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (dom.is_zero(m[r][col])) continue;
      auto factor = dom.mul(m[r][col], inv);
      for (std::size_t k = col; k < n; ++k) m[r][k] = dom.sub(m[r][k], dom.mul(factor, m[col][k]));
    }
  }
  return det;
}

/// Discriminant (-1)^(n(n-1)/2) Res(p, p') / lc(p) over a field, n = deg p.
template <class D>
typename D::Element discriminant_value(const DensePoly<D>& p) {
  const D& dom = p.domain();
  int n = p.degree();
  if (n < 1) throw UndefinedError("discriminant needs positive degree");
  if (n == 1) return dom.one();
  auto res = sylvester_determinant(p, n, p.derivative(), n - 1);
  auto disc = dom.mul(res, dom.inv(p.leading()));
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) disc = dom.neg(disc);
  return disc;
}

/// base^e mod m over F_p.
DensePoly<PrimeField> pow_mod(DensePoly<PrimeField> base, std::uint64_t e, const DensePoly<PrimeField>& m);

/// Distinct roots in F_p, ascending (Cantor-Zassenhaus equal-degree splitting).
std::vector<std::uint64_t> roots_mod_p(const DensePoly<PrimeField>& f, std::uint64_t seed = 0);

/// Ben-Or irreducibility test over F_p.
bool is_irreducible_mod_p(const DensePoly<PrimeField>& f);

/// Distinct rational roots of an integer polynomial, ascending. Roots are
/// found modulo a word-size prime, lifted p-adically past the rational-root
/// bound |lc * trailing coefficient| and confirmed by exact evaluation.
std::vector<mpq_class> rational_roots(const DensePoly<IntegerRing>& f);
std::vector<mpq_class> rational_roots(const DensePoly<RationalField>& f);

/// Distinct roots lying in the coefficient field itself, sorted.
inline std::vector<std::uint64_t> roots_in_field(const DensePoly<PrimeField>& f) { return roots_mod_p(f); }
inline std::vector<mpq_class> roots_in_field(const DensePoly<RationalField>& f) { return rational_roots(f); }

// ---------------------------------------------------------------------------
// Conversions between sparse and dense forms

/// Projects a polynomial that only involves `var` to dense form.
template <class D>
DensePoly<D> to_dense(const MultiPoly<D>& p, std::string_view var) {
  std::size_t v = p.ring()->index_of(var);
  int d = p.degree_in(v);
  std::vector<typename D::Element> c(static_cast<std::size_t>(std::max(d, 0)) + 1, p.domain().zero());
  for (const auto& t : p.terms()) {
    if (t.mono.total_degree() != t.mono[v]) throw ContextError("polynomial is not univariate in '" + std::string(var) + "'");
    c[t.mono[v]] = t.coeff;
  }
  return DensePoly<D>(p.domain(), std::move(c));
}

template <class D>
MultiPoly<D> from_dense(const DensePoly<D>& p, const RingPtr<D>& ring, std::string_view var) {
  std::size_t v = ring->index_of(var);
  std::vector<typename MultiPoly<D>::Term> terms;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (!p.domain().is_zero(p.coeffs()[i])) terms.push_back({Monomial::variable(v, static_cast<std::uint32_t>(i)), p.coeffs()[i]});
  }
  return MultiPoly<D>::from_terms(ring, std::move(terms));
}

/// Univariate gcd of two polynomials involving only `var`.
template <class D>
MultiPoly<D> univariate_gcd(const MultiPoly<D>& a, const MultiPoly<D>& b, std::string_view var) {
  MultiPoly<D>::check_same(a, b);
  return from_dense(gcd(to_dense(a, var), to_dense(b, var)), a.ring(), var);
}

}  // namespace k3disc
