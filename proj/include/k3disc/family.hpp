#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3disc/dense.hpp"
#include "k3disc/elimination.hpp"
#include "k3disc/grading.hpp"
#include "k3disc/poly.hpp"

namespace k3disc {

/// Weights of the eleven family parameters t4, t10, ..., t42.
inline constexpr std::array<int, 11> kParameterWeights{4, 10, 12, 16, 18, 22, 24, 28, 30, 36, 42};

/// u-exponent of each parameter in the dehomogenized g2 / g3 (weight = 6 * (deg - exponent)).
inline constexpr std::array<std::pair<int, int>, 5> kG2Terms{{{4, 4}, {10, 3}, {16, 2}, {22, 1}, {28, 0}}};
inline constexpr std::array<std::pair<int, int>, 6> kG3Terms{{{12, 5}, {18, 4}, {24, 3}, {30, 2}, {36, 1}, {42, 0}}};

inline constexpr int kDegreeK = 1092;
inline constexpr int kDegreeR = 196;
inline constexpr int kDegreeDelta = 504;
inline constexpr int kDegreeH = 84;
inline constexpr int kDegreeHInU = 14;

std::string param_name(int weight);
/// Position of weight in kParameterWeights; throws UsageError for non-weights.
std::size_t param_index(int weight);
/// Parses "4,28,42" into a sorted list of parameter weights.
std::vector<int> parse_slice(std::string_view text);

/// A parameter point t = (t4, ..., t42) with coefficients in a field.
template <class D>
struct FamilyPoint {
  using Element = typename D::Element;

  D domain;
  std::array<Element, 11> t;

  explicit FamilyPoint(D dom = D{}) : domain(std::move(dom)) { t.fill(domain.zero()); }

  const Element& operator[](int weight) const { return t[param_index(weight)]; }
  Element& operator[](int weight) { return t[param_index(weight)]; }
  bool is_origin() const {
    for (const auto& x : t) {
      if (!domain.is_zero(x)) return false;
    }
    return true;
  }
};

/// Reads {"t4": "3", "t28": "-1/2", ...}; missing parameters are zero.
template <class D>
FamilyPoint<D> point_from_json(const nlohmann::json& j, const D& dom) {
  if (!j.is_object()) throw ParseError("family point must be a JSON object keyed t4 ... t42");
  FamilyPoint<D> pt(dom);
  for (const auto& [key, value] : j.items()) {
    if (key.size() < 2 || key[0] != 't') throw ParseError("unknown family parameter '" + key + "'");
    int weight = 0;
    try {
      weight = std::stoi(key.substr(1));
    } catch (const std::logic_error&) {
      throw ParseError("unknown family parameter '" + key + "'");
    }
    if (param_name(weight) != key) throw ParseError("unknown family parameter '" + key + "'");
    std::size_t idx;
    try {
      idx = param_index(weight);
    } catch (const UsageError&) {
      throw ParseError("unknown family parameter '" + key + "'");
    }
    if (value.is_number_integer()) {
      pt.t[idx] = dom.from_int(value.template get<std::int64_t>());
    } else if (value.is_string()) {
      pt.t[idx] = dom.parse(value.template get<std::string>());
    } else {
      throw ParseError("parameter '" + key + "' must be an integer or a decimal string");
    }
  }
  if (pt.is_origin()) throw ParseError("the origin is not a point of the parameter space");
  return pt;
}

template <class D>
nlohmann::ordered_json point_to_json(const FamilyPoint<D>& pt) {
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < kParameterWeights.size(); ++i) j[param_name(kParameterWeights[i])] = pt.domain.format(pt.t[i]);
  return j;
}

/// Reduction of a rational point modulo the field's prime; throws UndefinedError
/// when a denominator vanishes or the point reduces to the origin.
inline FamilyPoint<PrimeField> reduce_point(const FamilyPoint<RationalField>& pt, const PrimeField& f) {
  FamilyPoint<PrimeField> out(f);
  for (std::size_t i = 0; i < pt.t.size(); ++i) out.t[i] = reduce_rational(f, pt.t[i]);
  if (out.is_origin()) throw UndefinedError("point reduces to the origin");
  return out;
}

/// The Weierstrass pair dehomogenized in u = x / w^6: deg g2 <= 4, and g3 is
/// monic of degree 7 with no u^6 term.
template <class D>
struct WeierstrassData {
  DensePoly<D> g2;
  DensePoly<D> g3;
};

template <class D>
void require_family_field(const D& dom) {
  auto c = dom.characteristic();
  if (c == 2 || c == 3) throw UsageError("the family needs a field of characteristic 0 or at least 5");
}

template <class D>
WeierstrassData<D> weierstrass(const FamilyPoint<D>& pt) {
  const D& dom = pt.domain;
  std::vector<typename D::Element> g2(5, dom.zero()), g3(8, dom.zero());
  for (auto [w, e] : kG2Terms) g2[static_cast<std::size_t>(e)] = pt[w];
  for (auto [w, e] : kG3Terms) g3[static_cast<std::size_t>(e)] = pt[w];
  g3[7] = dom.one();
  return {DensePoly<D>(dom, std::move(g2)), DensePoly<D>(dom, std::move(g3))};
}

/// h = 4 g2^3 + 27 g3^2, always of degree 14 in u (leading coefficient 27).
template <class D>
DensePoly<D> build_h(const WeierstrassData<D>& wd) {
  const D& dom = wd.g3.domain();
  return (wd.g2 * wd.g2 * wd.g2).scaled(dom.from_int(4)) + (wd.g3 * wd.g3).scaled(dom.from_int(27));
}

/// r(t): Sylvester determinant of (g2, g3) with formal degrees (4, 7).
template <class D>
typename D::Element r_value(const WeierstrassData<D>& wd) {
  return sylvester_determinant(wd.g2, 4, wd.g3, 7);
}

/// k(t): discriminant of h in u.
template <class D>
typename D::Element k_value(const WeierstrassData<D>& wd) {
  require_family_field(wd.g3.domain());
  return discriminant_value(build_h(wd));
}

/// k / r^3 for univariate restrictions over a field; NotDivisibleError when
/// the divisibility claim fails.
template <class D>
DensePoly<D> delta_T_on_restriction(const DensePoly<D>& k, const DensePoly<D>& r) {
  auto r3 = r * r * r;
  auto [q, rem] = divrem(k, r3);
  if (!rem.is_zero()) throw NotDivisibleError("r^3 does not divide k on this restriction");
  return q;
}

/// Symbolic counterpart on slices (or any exact polynomial ring).
template <class D>
MultiPoly<D> delta_T_on_restriction(const MultiPoly<D>& k, const MultiPoly<D>& r) {
  return exact_div(k, r.pow(3));
}

// ---------------------------------------------------------------------------
// Symbolic family

struct SymbolicFamily {
  RingPtr<IntegerRing> ring;  // x, y, z, w, t4, ..., t42, then extras
  MultiPoly<IntegerRing> f, g2, g3, h;
};

/// f = z^2 + y^3 + g2 y + g3 with fully symbolic parameters.
SymbolicFamily build_family(const std::vector<std::string>& extra_vars = {});

/// 4 g2^3 + 27 g3^2.
MultiPoly<IntegerRing> build_h(const MultiPoly<IntegerRing>& g2, const MultiPoly<IntegerRing>& g3);

/// Sends x -> u, w -> 1 into `target` (which must contain u and every
/// parameter present in p).
MultiPoly<IntegerRing> dehomogenize(const MultiPoly<IntegerRing>& p, const RingPtr<IntegerRing>& target);

/// The combined torus action of the family: w has weight -1, t_i weight i.
WeightVector torus_weights();

/// g2, g3, h in u with only the listed parameters kept (the others are zero).
struct SliceForms {
  std::vector<int> active;
  RingPtr<IntegerRing> ring;  // u followed by the active parameters
  MultiPoly<IntegerRing> g2, g3, h;
};

SliceForms slice_forms(std::span<const int> active);
MultiPoly<IntegerRing> slice_r(const SliceForms& s, ResultantStrategy strategy = ResultantStrategy::modular_interp);
MultiPoly<IntegerRing> slice_k(const SliceForms& s, ResultantStrategy strategy = ResultantStrategy::modular_interp);

/// Restriction of k and r to a line in parameter space over F_p: all
/// parameters fixed from `base` except `free_weight`, interpolated with the
/// degree bounds 1092 / w and 196 / w.
struct UnivariateRestriction {
  int free_weight;
  DensePoly<PrimeField> k;
  DensePoly<PrimeField> r;
  int k_bound;
  int r_bound;
};

UnivariateRestriction restrict_to_parameter(const FamilyPoint<PrimeField>& base, int free_weight);

// ---------------------------------------------------------------------------
// Non-RDP locus

/// t = (a, -4ab, -21b^2, 6ab^2, 70b^3, -4ab^3, -105b^4, ab^4, 84b^5, -35b^6, 6b^7),
/// for which g2 = a (u - b)^4 and g3 = (u - b)^6 (u + 6b).
template <class D>
FamilyPoint<D> nonrdp_param(const D& dom, const typename D::Element& a, const typename D::Element& b) {
  if (dom.is_zero(a) && dom.is_zero(b)) throw UsageError("(a, b) must not both vanish");
  auto c = [&](std::int64_t k) { return dom.from_int(k); };
  auto pw = [&](const typename D::Element& x, int e) {
    typename D::Element r = dom.one();
    for (int i = 0; i < e; ++i) r = dom.mul(r, x);
    return r;
  };
  FamilyPoint<D> pt(dom);
  pt[4] = a;
  pt[10] = dom.mul(c(-4), dom.mul(a, b));
  pt[12] = dom.mul(c(-21), pw(b, 2));
  pt[16] = dom.mul(c(6), dom.mul(a, pw(b, 2)));
  pt[18] = dom.mul(c(70), pw(b, 3));
  pt[22] = dom.mul(c(-4), dom.mul(a, pw(b, 3)));
  pt[24] = dom.mul(c(-105), pw(b, 4));
  pt[28] = dom.mul(a, pw(b, 4));
  pt[30] = dom.mul(c(84), pw(b, 5));
  pt[36] = dom.mul(c(-35), pw(b, 6));
  pt[42] = dom.mul(c(6), pw(b, 7));
  return pt;
}

template <class D>
struct NonRdpPoint {
  typename D::Element u0;
  int ord_g2;  // kInfiniteOrder when g2 vanishes identically
  int ord_g3;
};

/// Base points u0 (in the coefficient field) with ord g2 >= 4 and ord g3 >= 6.
template <class D>
std::vector<NonRdpPoint<D>> detect_nonrdp(const WeierstrassData<D>& wd) {
  std::vector<NonRdpPoint<D>> out;
  auto common = gcd(wd.g2, wd.g3);
  if (common.degree() < 1) return out;
  for (const auto& u0 : roots_in_field(common)) {
    int a = order_at(wd.g2, u0);
    int b = order_at(wd.g3, u0);
    if (a >= 4 && b >= 6) out.push_back({u0, a, b});
  }
  return out;
}

/// f at [0:-1:1:0], [-1:0:1:0], [1:-1:0:0] with symbolic t; each entry is
/// true when f vanishes identically there.
std::array<bool, 3> generic_point_membership();

}  // namespace k3disc
