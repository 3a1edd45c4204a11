#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3disc/domain.hpp"
#include "k3disc/errors.hpp"
#include "k3disc/monomial.hpp"

namespace k3disc {

/// A polynomial ring context: coefficient domain plus ordered variable names.
/// The declared order fixes the grevlex monomial order and printing order.
template <class D>
class Ring {
 public:
  Ring(D domain, std::vector<std::string> names) : domain_(std::move(domain)), names_(std::move(names)) {
    if (names_.size() > kMaxVars) throw ContextError("too many variables in ring context");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = i + 1; j < names_.size(); ++j) {
        if (names_[i] == names_[j]) throw ContextError("duplicate variable '" + names_[i] + "'");
      }
    }
  }

  const D& domain() const { return domain_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return i;
    }
    return std::nullopt;
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw ContextError("unknown variable '" + std::string(name) + "'");
  }

  bool same_as(const Ring& other) const { return this == &other || (domain_ == other.domain_ && names_ == other.names_); }

 private:
  D domain_;
  std::vector<std::string> names_;
};

template <class D>
using RingPtr = std::shared_ptr<const Ring<D>>;

template <class D>
RingPtr<D> make_ring(D domain, std::vector<std::string> names) {
  return std::make_shared<const Ring<D>>(std::move(domain), std::move(names));
}

/// Sparse multivariate polynomial in canonical form: terms strictly
/// descending in grevlex, no zero coefficients. Immutable in practice; all
/// operations return new values.
template <class D>
class MultiPoly {
 public:
  using Domain = D;
  using Element = typename D::Element;
  struct Term {
    Monomial mono;
    Element coeff;
  };

  explicit MultiPoly(RingPtr<D> ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(RingPtr<D> ring, Element c) {
    MultiPoly p(std::move(ring));
    if (!p.domain().is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
    return p;
  }

  static MultiPoly from_int(RingPtr<D> ring, std::int64_t v) {
    Element c = ring->domain().from_int(v);
    return constant(std::move(ring), std::move(c));
  }

  static MultiPoly variable(RingPtr<D> ring, std::string_view name, std::uint32_t power = 1) {
    std::size_t i = ring->index_of(name);
    Element one = ring->domain().one();
    return monomial(std::move(ring), Monomial::variable(i, power), std::move(one));
  }

  static MultiPoly monomial(RingPtr<D> ring, Monomial m, Element c) {
    MultiPoly p(std::move(ring));
    if (!p.domain().is_zero(c)) p.terms_.push_back({m, std::move(c)});
    return p;
  }

  /// Builds a canonical polynomial from arbitrary (possibly repeated, unsorted) terms.
  static MultiPoly from_terms(RingPtr<D> ring, std::vector<Term> terms) {
    MultiPoly p(std::move(ring));
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const RingPtr<D>& ring() const { return ring_; }
  const D& domain() const { return ring_->domain(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  Element constant_value() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return domain().zero();
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw UndefinedError("leading term of zero polynomial");
    return terms_.front();
  }

  /// Degree in one variable; -1 for the zero polynomial.
  int degree_in(std::size_t var) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[var]));
    return d;
  }
  int degree_in(std::string_view name) const { return degree_in(ring_->index_of(name)); }

  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.total_degree()); }

  bool uses_variable(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[var] != 0; });
  }

  /// Coefficients with respect to one variable: result[i] multiplies var^i.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const {
    int d = degree_in(var);
    std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(d, 0)) + 1);
    for (const auto& t : terms_) {
      Monomial m = t.mono;
      std::uint32_t e = m[var];
      m.set(var, 0);
      buckets[e].push_back({m, t.coeff});
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
    return out;
  }

  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& t : r.terms_) t.coeff = domain().neg(t.coeff);
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, false); }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return combine(a, b, true); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    const D& dom = a.domain();
    if (a.is_zero() || b.is_zero()) return MultiPoly(a.ring_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    std::vector<Term> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) prods.push_back({ta.mono * tb.mono, dom.mul(ta.coeff, tb.coeff)});
    }
    MultiPoly r(a.ring_);
    r.terms_ = std::move(prods);
    r.canonicalize();
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }

  MultiPoly scaled(const Element& c) const { return mul_term(Monomial{}, c); }

  /// Multiplication by c * m; order-preserving, so no re-sort is needed.
  MultiPoly mul_term(const Monomial& m, const Element& c) const {
    MultiPoly r(ring_);
    if (domain().is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Element v = domain().mul(t.coeff, c);
      if (!domain().is_zero(v)) r.terms_.push_back({t.mono * m, std::move(v)});
    }
    return r;
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly result = constant(ring_, domain().one());
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (!a.ring_->same_as(*b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
      if (!a.domain().equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
    }
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  static void check_same(const MultiPoly& a, const MultiPoly& b) {
    if (!a.ring_->same_as(*b.ring_)) throw ContextError("operands belong to different ring contexts");
  }

 private:
  static MultiPoly combine(const MultiPoly& a, const MultiPoly& b, bool subtract) {
    check_same(a, b);
    const D& dom = a.domain();
    MultiPoly r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int cmp;
      if (i == a.terms_.size()) {
        cmp = -1;
      } else if (j == b.terms_.size()) {
        cmp = 1;
      } else {
        cmp = grevlex_compare(a.terms_[i].mono, b.terms_[j].mono);
      }
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        const Term& t = b.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? dom.neg(t.coeff) : t.coeff});
      } else {
        Element c = subtract ? dom.sub(a.terms_[i].coeff, b.terms_[j].coeff) : dom.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (!dom.is_zero(c)) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    const D& dom = domain();
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return grevlex_compare(x.mono, y.mono) > 0; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().mono == t.mono) {
        merged.back().coeff = dom.add(merged.back().coeff, t.coeff);
      } else {
        if (!merged.empty() && dom.is_zero(merged.back().coeff)) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && dom.is_zero(merged.back().coeff)) merged.pop_back();
    terms_ = std::move(merged);
  }

  RingPtr<D> ring_;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Substitution and evaluation

/// Substitution homomorphism: each assigned variable is replaced by a
/// polynomial of the same ring; unassigned variables are kept.
template <class D>
MultiPoly<D> substitute(const MultiPoly<D>& p, const std::map<std::string, MultiPoly<D>>& assignment) {
  const auto& ring = p.ring();
  const D& dom = p.domain();
  std::vector<std::optional<MultiPoly<D>>> values(ring->nvars());
  for (const auto& [name, value] : assignment) {
    std::size_t i = ring->index_of(name);
    if (!value.ring()->same_as(*ring)) throw ContextError("substituted value for '" + name + "' lives in another ring");
    values[i] = value;
  }
  // powers[i][e] = values[i]^e, filled lazily
  std::vector<std::vector<MultiPoly<D>>> powers(ring->nvars());
  auto power_of = [&](std::size_t i, std::uint32_t e) -> const MultiPoly<D>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly<D>::constant(ring, dom.one()));
    while (cache.size() <= e) cache.push_back(cache.back() * *values[i]);
    return cache[e];
  };
  MultiPoly<D> result(ring);
  std::vector<typename MultiPoly<D>::Term> untouched;
  for (const auto& t : p.terms()) {
    Monomial kept = t.mono;
    bool any = false;
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      if (values[i] && t.mono[i] != 0) {
        any = true;
        kept.set(i, 0);
      }
    }
    if (!any) {
      untouched.push_back(t);
      continue;
    }
    MultiPoly<D> term = MultiPoly<D>::monomial(ring, kept, t.coeff);
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      if (values[i] && t.mono[i] != 0) term = term * power_of(i, t.mono[i]);
    }
    result += term;
  }
  return result + MultiPoly<D>::from_terms(ring, std::move(untouched));
}

/// Partial evaluation at domain elements.
template <class D>
MultiPoly<D> evaluate(const MultiPoly<D>& p, const std::map<std::string, typename D::Element>& assignment) {
  const auto& ring = p.ring();
  const D& dom = p.domain();
  std::vector<std::optional<typename D::Element>> values(ring->nvars());
  for (const auto& [name, value] : assignment) values[ring->index_of(name)] = value;
  std::vector<typename MultiPoly<D>::Term> out;
  out.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    Monomial kept = t.mono;
    typename D::Element c = t.coeff;
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      if (values[i] && t.mono[i] != 0) {
        typename D::Element pw = dom.one();
        for (std::uint32_t k = 0; k < t.mono[i]; ++k) pw = dom.mul(pw, *values[i]);
        c = dom.mul(c, pw);
        kept.set(i, 0);
      }
    }
    out.push_back({kept, std::move(c)});
  }
  return MultiPoly<D>::from_terms(ring, std::move(out));
}

/// Full evaluation; `point` holds one value per ring variable.
template <class D>
typename D::Element evaluate_all(const MultiPoly<D>& p, std::span<const typename D::Element> point) {
  const auto& ring = p.ring();
  const D& dom = p.domain();
  if (point.size() != ring->nvars()) throw ContextError("evaluation point has wrong arity");
  typename D::Element acc = dom.zero();
  for (const auto& t : p.terms()) {
    typename D::Element c = t.coeff;
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      for (std::uint32_t k = 0; k < t.mono[i]; ++k) c = dom.mul(c, point[i]);
    }
    acc = dom.add(acc, c);
  }
  return acc;
}

/// Maps p into another ring (matching variables by name) transforming each coefficient.
template <class D, class E, class F>
MultiPoly<E> change_ring(const MultiPoly<D>& p, const RingPtr<E>& target, F&& coefficient_map) {
  const auto& src = p.ring();
  std::vector<std::optional<std::size_t>> index(src->nvars());
  for (std::size_t i = 0; i < src->nvars(); ++i) index[i] = target->find(src->names()[i]);
  std::vector<typename MultiPoly<E>::Term> out;
  out.reserve(p.num_terms());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < src->nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!index[i]) throw ContextError("variable '" + src->names()[i] + "' missing from target ring");
      m.set(*index[i], t.mono[i]);
    }
    out.push_back({m, coefficient_map(t.coeff)});
  }
  return MultiPoly<E>::from_terms(target, std::move(out));
}

/// Reduction of an integer polynomial modulo the field's prime.
inline MultiPoly<PrimeField> reduce_mod(const MultiPoly<IntegerRing>& p, const RingPtr<PrimeField>& target) {
  const PrimeField& f = target->domain();
  return change_ring(p, target, [&](const mpz_class& c) { return f.from_mpz(c); });
}

// ---------------------------------------------------------------------------
// Division and differentiation

/// Exact quotient a / b, or nullopt when b does not divide a in the domain.
template <class D>
std::optional<MultiPoly<D>> try_exact_div(const MultiPoly<D>& a, const MultiPoly<D>& b) {
  MultiPoly<D>::check_same(a, b);
  if (b.is_zero()) throw UndefinedError("division by the zero polynomial");
  const D& dom = a.domain();
  const auto& lead_b = b.leading_term();
  std::vector<typename MultiPoly<D>::Term> quotient;
  MultiPoly<D> rem = a;
  while (!rem.is_zero()) {
    const auto& lead_r = rem.leading_term();
    if (!lead_b.mono.divides(lead_r.mono)) return std::nullopt;
    auto c = dom.divide(lead_r.coeff, lead_b.coeff);
    if (!c) return std::nullopt;
    Monomial m = lead_r.mono / lead_b.mono;
    quotient.push_back({m, *c});
    rem = rem - b.mul_term(m, *c);
  }
  return MultiPoly<D>::from_terms(a.ring(), std::move(quotient));
}

template <class D>
MultiPoly<D> exact_div(const MultiPoly<D>& a, const MultiPoly<D>& b) {
  if (auto q = try_exact_div(a, b)) return std::move(*q);
  throw NotDivisibleError("exact division left a nonzero remainder");
}

template <class D>
MultiPoly<D> derivative(const MultiPoly<D>& p, std::string_view var) {
  const auto& ring = p.ring();
  const D& dom = p.domain();
  std::size_t v = ring->index_of(var);
  std::vector<typename MultiPoly<D>::Term> out;
  for (const auto& t : p.terms()) {
    std::uint32_t e = t.mono[v];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(v, e - 1);
    out.push_back({m, dom.mul(t.coeff, dom.from_int(e))});
  }
  return MultiPoly<D>::from_terms(ring, std::move(out));
}

// ---------------------------------------------------------------------------
// Canonical text format

/// Terms in descending monomial order, factors in declared variable order,
/// `*` separators and `^` powers, e.g. `u^7 - 21*u^5*b^2 + 6*b^7`.
template <class D>
std::string to_string(const MultiPoly<D>& p) {
  if (p.is_zero()) return "0";
  const D& dom = p.domain();
  const auto& names = p.ring()->names();
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = dom.is_negative(t.coeff);
    typename D::Element mag = negative ? dom.neg(t.coeff) : t.coeff;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::uint32_t e = t.mono[i];
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names[i];
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += dom.format(mag);
    } else if (dom.is_one(mag)) {
      out += factors;
    } else {
      out += dom.format(mag) + "*" + factors;
    }
  }
  return out;
}

namespace detail {

struct PolyLexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  }
  std::string number() {
    std::string s = digits();
    if (peek() == '/') {
      ++pos;
      std::string den = digits();
      if (den.empty()) throw ParseError("expected denominator at offset " + std::to_string(pos));
      s += "/" + den;
    }
    return s;
  }
  std::string identifier() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    return std::string(text.substr(start, pos - start));
  }
};

}  // namespace detail

/// Parses the canonical text format (whitespace-insensitive). Identifiers must
/// be variables of `ring`.
template <class D>
MultiPoly<D> parse_poly(const RingPtr<D>& ring, std::string_view text) {
  const D& dom = ring->domain();
  detail::PolyLexer lex{text};
  std::vector<typename MultiPoly<D>::Term> terms;
  if (lex.at_end()) throw ParseError("empty polynomial text");
  bool first = true;
  while (!lex.at_end()) {
    bool negative = false;
    bool had_sign = false;
    while (lex.peek() == '+' || lex.peek() == '-') {
      negative ^= (lex.peek() == '-');
      had_sign = true;
      ++lex.pos;
    }
    if (!first && !had_sign) throw ParseError("expected '+' or '-' at offset " + std::to_string(lex.pos));
    first = false;
    typename D::Element coeff = dom.one();
    Monomial mono;
    bool need_factor = true;
    while (need_factor) {
      char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff = dom.mul(coeff, dom.parse(lex.number()));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = lex.identifier();
        std::size_t idx = ring->index_of(name);
        std::uint32_t e = 1;
        if (lex.accept('^')) {
          std::string d = lex.digits();
          if (d.empty()) throw ParseError("expected exponent after '^' in '" + name + "'");
          e = static_cast<std::uint32_t>(std::stoul(d));
        }
        mono.set(idx, mono[idx] + e);
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(lex.pos));
      }
      need_factor = lex.accept('*');
    }
    if (negative) coeff = dom.neg(coeff);
    terms.push_back({mono, std::move(coeff)});
  }
  return MultiPoly<D>::from_terms(ring, std::move(terms));
}

/// Identifiers in order of first appearance; used to infer a ring context.
std::vector<std::string> scan_identifiers(std::string_view text);

}  // namespace k3disc
