#include "k3disc/family.hpp"

#include <algorithm>
#include <sstream>

namespace k3disc {

std::string param_name(int weight) { return "t" + std::to_string(weight); }

std::size_t param_index(int weight) {
  auto it = std::find(kParameterWeights.begin(), kParameterWeights.end(), weight);
  if (it == kParameterWeights.end()) throw UsageError("no family parameter has weight " + std::to_string(weight));
  return static_cast<std::size_t>(it - kParameterWeights.begin());
}

std::vector<int> parse_slice(std::string_view text) {
  std::vector<int> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c) || c == 't'; }), item.end());
    if (item.empty()) continue;
    int w = 0;
    try {
      std::size_t used = 0;
      w = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw ParseError("bad slice entry '" + item + "'");
    }
    param_index(w);
    out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ParseError("empty slice");
  return out;
}

namespace {

std::vector<std::string> parameter_names() {
  std::vector<std::string> names;
  for (int w : kParameterWeights) names.push_back(param_name(w));
  return names;
}

std::string g2_text(const std::vector<int>& keep, bool homogeneous) {
  std::string out;
  for (auto [w, e] : kG2Terms) {
    if (std::find(keep.begin(), keep.end(), w) == keep.end()) continue;
    if (!out.empty()) out += " + ";
    out += param_name(w);
    if (homogeneous) {
      if (e > 0) out += "*x^" + std::to_string(e);
      out += "*w^" + std::to_string(w);
    } else if (e > 0) {
      out += "*u^" + std::to_string(e);
    }
  }
  return out.empty() ? "0" : out;
}

std::string g3_text(const std::vector<int>& keep, bool homogeneous) {
  std::string out = homogeneous ? "x^7" : "u^7";
  for (auto [w, e] : kG3Terms) {
    if (std::find(keep.begin(), keep.end(), w) == keep.end()) continue;
    out += " + " + param_name(w);
    if (homogeneous) {
      if (e > 0) out += "*x^" + std::to_string(e);
      out += "*w^" + std::to_string(w);
    } else if (e > 0) {
      out += "*u^" + std::to_string(e);
    }
  }
  return out;
}

}  // namespace

MultiPoly<IntegerRing> build_h(const MultiPoly<IntegerRing>& g2, const MultiPoly<IntegerRing>& g3) {
  const auto& ring = g2.ring();
  return MultiPoly<IntegerRing>::from_int(ring, 4) * g2.pow(3) + MultiPoly<IntegerRing>::from_int(ring, 27) * g3.pow(2);
}

SymbolicFamily build_family(const std::vector<std::string>& extra_vars) {
  std::vector<std::string> names{"x", "y", "z", "w"};
  for (const auto& n : parameter_names()) names.push_back(n);
  for (const auto& n : extra_vars) names.push_back(n);
  auto ring = make_ring(IntegerRing{}, names);
  std::vector<int> all(kParameterWeights.begin(), kParameterWeights.end());
  auto g2 = parse_poly(ring, g2_text(all, true));
  auto g3 = parse_poly(ring, g3_text(all, true));
  auto f = parse_poly(ring, "z^2 + y^3") + g2 * MultiPoly<IntegerRing>::variable(ring, "y") + g3;
  auto h = build_h(g2, g3);
  return SymbolicFamily{ring, std::move(f), std::move(g2), std::move(g3), std::move(h)};
}

MultiPoly<IntegerRing> dehomogenize(const MultiPoly<IntegerRing>& p, const RingPtr<IntegerRing>& target) {
  const auto& src = p.ring();
  std::size_t u = target->index_of("u");
  std::vector<typename MultiPoly<IntegerRing>::Term> out;
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < src->nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      const auto& name = src->names()[i];
      if (name == "w") continue;
      if (name == "x") {
        m.set(u, t.mono[i]);
        continue;
      }
      auto j = target->find(name);
      if (!j) throw ContextError("variable '" + name + "' has no counterpart in the dehomogenized ring");
      m.set(*j, t.mono[i]);
    }
    out.push_back({m, t.coeff});
  }
  return MultiPoly<IntegerRing>::from_terms(target, std::move(out));
}

WeightVector torus_weights() {
  WeightVector w;
  w.set("w", -1);
  for (int i : kParameterWeights) w.set(param_name(i), i);
  return w;
}

SliceForms slice_forms(std::span<const int> active) {
  std::vector<int> sorted(active.begin(), active.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> names{"u"};
  for (int w : sorted) names.push_back(param_name(w));
  auto ring = make_ring(IntegerRing{}, names);
  auto g2 = parse_poly(ring, g2_text(sorted, false));
  auto g3 = parse_poly(ring, g3_text(sorted, false));
  auto h = build_h(g2, g3);
  return SliceForms{std::move(sorted), ring, std::move(g2), std::move(g3), std::move(h)};
}

namespace {

ModularOptions graded_options() {
  ModularOptions opts;
  opts.grading = parameter_weights();
  return opts;
}

}  // namespace

MultiPoly<IntegerRing> slice_r(const SliceForms& s, ResultantStrategy strategy) {
  if (s.g2.is_zero()) return MultiPoly<IntegerRing>(s.ring);
  if (s.g2.degree_in(0) < 4) {
    // formal degree 4: a vanishing leading block contributes lc(g3)^(4 - deg) = 1 up to sign
    auto names = s.ring->names();
    names.push_back("_formal_lead");
    auto wide = make_ring(IntegerRing{}, names);
    auto id = [](const mpz_class& c) { return c; };
    auto g2 = change_ring(s.g2, wide, id) + MultiPoly<IntegerRing>::variable(wide, "_formal_lead") * MultiPoly<IntegerRing>::variable(wide, "u", 4);
    auto res = resultant(g2, change_ring(s.g3, wide, id), "u", ResultantStrategy::fraction_free);
    return change_ring(evaluate(res, {{"_formal_lead", mpz_class(0)}}), s.ring, id);
  }
  return resultant(s.g2, s.g3, "u", strategy, graded_options());
}

MultiPoly<IntegerRing> slice_k(const SliceForms& s, ResultantStrategy strategy) {
  return discriminant(s.h, "u", strategy, graded_options());
}

UnivariateRestriction restrict_to_parameter(const FamilyPoint<PrimeField>& base, int free_weight) {
  const PrimeField& f = base.domain;
  require_family_field(f);
  UnivariateRestriction out;
  out.free_weight = free_weight;
  out.k_bound = kDegreeK / free_weight;
  out.r_bound = kDegreeR / free_weight;
  auto ring = make_ring(f, {"s"});
  auto at = [&](std::uint64_t s) {
    FamilyPoint<PrimeField> pt = base;
    pt[free_weight] = s % f.prime();
    return weierstrass(pt);
  };
  auto k = interp_univariate([&](std::uint64_t s) { return k_value(at(s)); }, out.k_bound, ring, "s");
  auto r = interp_univariate([&](std::uint64_t s) { return r_value(at(s)); }, out.r_bound, ring, "s");
  out.k = to_dense(k, "s");
  out.r = to_dense(r, "s");
  return out;
}

std::array<bool, 3> generic_point_membership() {
  auto fam = build_family();
  const std::array<std::array<int, 4>, 3> points{{{0, -1, 1, 0}, {-1, 0, 1, 0}, {1, -1, 0, 0}}};
  std::array<bool, 3> out{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    auto v = evaluate(fam.f, {{"x", mpz_class(p[0])}, {"y", mpz_class(p[1])}, {"z", mpz_class(p[2])}, {"w", mpz_class(p[3])}});
    out[i] = v.is_zero();
  }
  return out;
}

}  // namespace k3disc
