#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3disc/dense.hpp"
#include "k3disc/family.hpp"

namespace k3disc {

enum class KodairaTag { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar, NonMinimal };

struct KodairaType {
  KodairaTag tag = KodairaTag::I0;
  int n = 0;  // only for In and In*

  /// "I0", "I2", "II", "I0*", "I3*", "II*", "NonMinimal", ...
  std::string name() const;
  /// Topological Euler number of the fiber; none for non-minimal fibers.
  std::optional<int> euler() const;
  static KodairaType parse(std::string_view text);

  bool operator==(const KodairaType&) const = default;
};

/// Local orders (ord g2, ord g3, ord Delta); kInfiniteOrder when identically zero.
struct OrderTriple {
  int a = 0;
  int b = 0;
  int d = 0;

  bool operator==(const OrderTriple&) const = default;
};

/// Lookup in the standard Kodaira table. Throws InconsistentOrdersError when no row
/// matches or d contradicts d >= min(3a, 2b) (equality when 3a != 2b).
KodairaType classify(const OrderTriple& o);

template <class D>
struct FiberPlace {
  std::optional<typename D::Element> u;  // nullopt is the place w = 0
  OrderTriple orders;
  KodairaType type;
};

template <class D>
struct FiberScan {
  std::vector<FiberPlace<D>> places;  // finite places sorted by u, then infinity
  int residual = 0;                   // deg h minus the orders at field-rational roots

  /// Sum of Euler numbers over the reported places (non-minimal places count 0).
  int euler_sum() const {
    int s = 0;
    for (const auto& p : places) s += p.type.euler().value_or(0);
    return s;
  }
  const FiberPlace<D>& infinity() const { return places.back(); }
};

/// Orders at w = 0 on the P(1,4,6,1) model: (8 - deg g2, 12 - deg g3, 24 - deg h).
template <class D>
OrderTriple orders_at_infinity(const WeierstrassData<D>& wd) {
  auto gap = [](int total, const DensePoly<D>& p) { return p.is_zero() ? kInfiniteOrder : total - p.degree(); };
  return {gap(8, wd.g2), gap(12, wd.g3), gap(24, build_h(wd))};
}

/// Kodaira fibers at every field-rational root of h and at infinity.
template <class D>
FiberScan<D> scan_fibers(const WeierstrassData<D>& wd) {
  require_family_field(wd.g3.domain());
  FiberScan<D> scan;
  auto h = build_h(wd);
  int accounted = 0;
  for (const auto& u0 : roots_in_field(h)) {
    OrderTriple o{order_at(wd.g2, u0), order_at(wd.g3, u0), order_at(h, u0)};
    accounted += o.d;
    scan.places.push_back({u0, o, classify(o)});
  }
  scan.residual = h.degree() - accounted;
  auto inf = orders_at_infinity(wd);
  scan.places.push_back({std::nullopt, inf, classify(inf)});
  return scan;
}

std::string order_to_string(int order);

/// A point of the D1 component: h acquires the double root u0 while
/// g2(u0) = -3 s^2 and g3(u0) = 2 s^3 stay nonzero. All parameters except
/// t28, t36, t42 are drawn at random; those three are solved for linearly.
template <class D>
struct ConstructedPoint {
  FamilyPoint<D> point;
  typename D::Element u0;
};

template <class D, class Draw>
ConstructedPoint<D> construct_d1_point(const D& dom, Draw&& draw_nonzero) {
  FamilyPoint<D> pt(dom);
  for (auto& x : pt.t) x = draw_nonzero();
  const auto u0 = draw_nonzero();
  const auto s = draw_nonzero();
  pt[28] = dom.zero();
  pt[36] = dom.zero();
  pt[42] = dom.zero();
  auto wd = weierstrass(pt);
  auto s2 = dom.mul(s, s);
  auto s3 = dom.mul(s2, s);
  // g2(u0) = -3 s^2 via the constant term t28
  pt[28] = dom.sub(dom.mul(dom.from_int(-3), s2), wd.g2.eval(u0));
  // g3'(u0) = -s g2'(u0) via the linear term t36 (t28 does not enter g2')
  auto target_slope = dom.neg(dom.mul(s, wd.g2.derivative().eval(u0)));
  pt[36] = dom.sub(target_slope, wd.g3.derivative().eval(u0));
  // g3(u0) = 2 s^3 via the constant term t42
  wd = weierstrass(pt);
  pt[42] = dom.sub(dom.mul(dom.from_int(2), s3), wd.g3.eval(u0));
  return {pt, u0};
}

/// A point of the D2 component: t28 = t42 = 0, so g2 and g3 both vanish at u = 0.
template <class D, class Draw>
ConstructedPoint<D> construct_d2_point(const D& dom, Draw&& draw_nonzero) {
  FamilyPoint<D> pt(dom);
  for (auto& x : pt.t) x = draw_nonzero();
  pt[28] = dom.zero();
  pt[42] = dom.zero();
  return {pt, dom.zero()};
}

/// Primes p = 1 (mod 14), ascending from 29: the only primes over which a
/// degree-14 h of the form c (u^14 - a) can split into distinct linear factors.
std::vector<std::uint64_t> splitting_candidates(std::size_t count);

/// First candidate prime over which h of the reduced point splits into
/// distinct linear factors (so every fiber place is rational).
std::optional<std::uint64_t> find_splitting_prime(const FamilyPoint<RationalField>& pt, std::size_t candidates = 50);

template <class D>
nlohmann::ordered_json scan_to_json(const FiberScan<D>& scan, const D& dom) {
  nlohmann::ordered_json places = nlohmann::ordered_json::array();
  auto ord = [](int v) -> nlohmann::ordered_json {
    if (v == kInfiniteOrder) return "inf";
    return v;
  };
  for (const auto& p : scan.places) {
    nlohmann::ordered_json j;
    j["place"] = p.u ? dom.format(*p.u) : std::string("infinity");
    j["orders"] = {ord(p.orders.a), ord(p.orders.b), ord(p.orders.d)};
    j["type"] = p.type.name();
    auto e = p.type.euler();
    j["euler"] = e ? nlohmann::ordered_json(*e) : nlohmann::ordered_json(nullptr);
    places.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["places"] = std::move(places);
  out["residual"] = scan.residual;
  out["euler_sum"] = scan.euler_sum();
  return out;
}

}  // namespace k3disc
