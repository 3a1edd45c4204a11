#include "k3disc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "k3disc/elimination.hpp"
#include "k3disc/errors.hpp"
#include "k3disc/family.hpp"
#include "k3disc/kodaira.hpp"
#include "k3disc/lattice.hpp"

#ifndef K3DISC_VERSION
#define K3DISC_VERSION "0.0.0"
#endif

namespace k3disc {

namespace {

using json = nlohmann::ordered_json;
using ZPoly = MultiPoly<IntegerRing>;

/// Smallest prime accepted for the modular checks: every univariate
/// restriction needs 1092 / 4 + 1 distinct interpolation nodes, and the
/// probabilistic bounds need room.
constexpr std::uint64_t kMinimumPrime = 1u << 20;

int trials_or(const CheckOptions& o, int fallback) { return o.trials ? *o.trials : fallback; }

std::string weights_label(const std::vector<int>& ws) {
  std::string out = "(";
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? ", " : "") + param_name(ws[i]);
  return out + ")";
}

json slice_json(const std::vector<int>& ws) {
  json j = json::array();
  for (int w : ws) j.push_back(param_name(w));
  return j;
}

template <class D>
json dense_json(const DensePoly<D>& p) {
  json j = json::array();
  for (const auto& c : p.coeffs()) j.push_back(p.domain().format(c));
  return j;
}

json order_json(int v) {
  if (v == kInfiniteOrder) return "inf";
  return v;
}

json orders_json(const OrderTriple& o) { return json::array({order_json(o.a), order_json(o.b), order_json(o.d)}); }

std::uint64_t draw_nonzero(std::mt19937_64& rng, const PrimeField& f) {
  std::uniform_int_distribution<std::uint64_t> el(1, f.prime() - 1);
  return el(rng);
}

FamilyPoint<PrimeField> random_point(std::mt19937_64& rng, const PrimeField& f) {
  FamilyPoint<PrimeField> pt(f);
  for (auto& x : pt.t) x = draw_nonzero(rng, f);
  return pt;
}

mpq_class random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 9);
  while (true) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    if (sgn(q) != 0) return q;
  }
}

template <class D>
DensePoly<D> power(const DensePoly<D>& p, int e) {
  auto out = DensePoly<D>::constant(p.domain(), p.domain().one());
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

FieldEvaluator family_evaluator(const PrimeField& f, bool k) {
  return [f, k](std::span<const std::uint64_t> t) {
    FamilyPoint<PrimeField> pt(f);
    std::copy(t.begin(), t.end(), pt.t.begin());
    auto wd = weierstrass(pt);
    return k ? k_value(wd) : r_value(wd);
  };
}

// ---------------------------------------------------------------------------
// slice-factorization

/// Proof that an integer polynomial is irreducible over Q: some variable x has
/// a constant leading coefficient and the content is 1, so every nontrivial
/// factorization keeps positive x-degree in both factors under any
/// specialization of the other variables; an irreducible specialization mod a
/// prime of full x-degree therefore rules factorizations out.
std::optional<json> certify_irreducible(const ZPoly& f, std::mt19937_64& rng) {
  const auto& ring = f.ring();
  mpz_class content = 0;
  for (const auto& t : f.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.coeff.get_mpz_t());
  if (content != 1) return std::nullopt;
  for (std::size_t x = 0; x < ring->nvars(); ++x) {
    int d = f.degree_in(x);
    if (d <= 0) continue;
    auto lead = f.coefficients_in(x)[static_cast<std::size_t>(d)];
    if (!lead.is_constant()) continue;
    const mpz_class lc = lead.constant_value();
    for (std::uint64_t p : primes_below(std::uint64_t{1} << 61, 4)) {
      PrimeField fp(p);
      if (fp.from_mpz(lc) == 0) continue;
      auto rp = make_ring(fp, ring->names());
      auto fm = reduce_mod(f, rp);
      for (int attempt = 0; attempt < 8; ++attempt) {
        std::map<std::string, std::uint64_t> at;
        json point = json::object();
        for (std::size_t v = 0; v < ring->nvars(); ++v) {
          if (v == x || !f.uses_variable(v)) continue;
          at[ring->names()[v]] = draw_nonzero(rng, fp);
          point[ring->names()[v]] = at[ring->names()[v]];
        }
        auto g = to_dense(evaluate(fm, at), ring->names()[x]);
        if (g.degree() == d && is_irreducible_mod_p(g)) {
          return json{{"variable", ring->names()[x]},
                      {"degree", d},
                      {"leading_coefficient", lc.get_str()},
                      {"content", 1},
                      {"prime", p},
                      {"specialization", point}};
        }
        if (at.empty()) break;
      }
    }
  }
  return std::nullopt;
}

enum class SliceOutcome { ok, degenerate, failed, inconclusive };

SliceOutcome analyze_slice(const std::vector<int>& active, CheckRecorder& rec, json& log) {
  auto s = slice_forms(active);
  auto r = slice_r(s);
  json entry{{"slice", slice_json(active)}};
  if (r.is_zero()) {
    entry["outcome"] = "degenerate";
    entry["reason"] = "g2 and g3 share a root for every value, so r vanishes identically";
    log.push_back(entry);
    return SliceOutcome::degenerate;
  }
  auto k = slice_k(s);
  auto wk = weighted_degree(k, parameter_weights());
  auto wr = weighted_degree(r, parameter_weights());
  entry["r"] = to_string(r);
  entry["k_terms"] = k.num_terms();
  entry["deg_k"] = wk.degree;
  entry["deg_r"] = wr.degree;
  bool ok = rec.expect(wk.homogeneous && wk.degree == kDegreeK, "k is weighted homogeneous of degree 1092 on " + weights_label(active),
                       json{{"degree", wk.degree}, {"homogeneous", wk.homogeneous}});
  ok &= rec.expect(wr.homogeneous && wr.degree == kDegreeR, "r is weighted homogeneous of degree 196 on " + weights_label(active),
                   json{{"degree", wr.degree}, {"homogeneous", wr.homogeneous}});
  auto quotient = try_exact_div(k, r.pow(3));
  ok &= rec.expect(quotient.has_value(), "r^3 divides k on " + weights_label(active), json{{"r", to_string(r)}});
  if (!ok) {
    entry["outcome"] = "failed";
    log.push_back(entry);
    return SliceOutcome::failed;
  }
  auto wq = weighted_degree(*quotient, parameter_weights());
  entry["deg_quotient"] = wq.degree;
  entry["quotient_terms"] = quotient->num_terms();
  if (!rec.expect(wq.homogeneous && wq.degree == kDegreeDelta, "k / r^3 has weighted degree 504", json{{"degree", wq.degree}})) {
    entry["outcome"] = "failed";
    log.push_back(entry);
    return SliceOutcome::failed;
  }
  // factors of r: coordinate hyperplanes first, then the remaining part
  json factors = json::array();
  auto rest = r;
  std::string degenerate_reason;
  for (std::size_t v = 1; v < s.ring->nvars(); ++v) {
    auto var = ZPoly::variable(s.ring, s.ring->names()[v]);
    int e = vanishing_order(r, var);
    if (e == 0) continue;
    int ord = vanishing_order(k, var);
    factors.push_back(json{{"factor", s.ring->names()[v]}, {"multiplicity_in_r", e}, {"order_in_k", ord}});
    rest = exact_div(rest, var.pow(static_cast<unsigned>(e)));
    if (ord != 3 * e && degenerate_reason.empty()) {
      degenerate_reason = "k vanishes to order " + std::to_string(ord) + " along " + s.ring->names()[v] + ", beyond 3 * " +
                          std::to_string(e) + ": the slice lies inside a special stratum";
    }
  }
  if (!rest.is_constant()) {
    int ord = vanishing_order(k, rest);
    json f{{"factor", to_string(rest)}, {"multiplicity_in_r", 1}, {"order_in_k", ord}};
    auto cert = certify_irreducible(rest, rec.rng());
    if (cert) f["irreducibility_certificate"] = *cert;
    factors.push_back(f);
    if (!cert) {
      entry["factors"] = factors;
      entry["outcome"] = "inconclusive";
      entry["reason"] = "no irreducibility certificate for the non-monomial part of r";
      log.push_back(entry);
      return SliceOutcome::inconclusive;
    }
    if (ord != 3 && degenerate_reason.empty()) degenerate_reason = "k vanishes to order " + std::to_string(ord) + " along the irreducible part of r";
  }
  entry["factors"] = factors;
  if (!degenerate_reason.empty()) {
    entry["outcome"] = "degenerate";
    entry["reason"] = degenerate_reason;
    log.push_back(entry);
    return SliceOutcome::degenerate;
  }
  entry["outcome"] = "ok";
  log.push_back(entry);
  return SliceOutcome::ok;
}

void check_slice_factorization(const CheckOptions& o, CheckRecorder& rec) {
  std::vector<std::vector<int>> plan;
  plan.push_back(o.slice ? *o.slice : std::vector<int>{4, 42});
  for (auto fallback : {std::vector<int>{4, 28, 42}, std::vector<int>{10, 28, 42}}) {
    if (std::find(plan.begin(), plan.end(), fallback) == plan.end()) plan.push_back(fallback);
  }
  json log = json::array();
  bool inconclusive = false;
  for (const auto& active : plan) {
    auto outcome = analyze_slice(active, rec, log);
    if (outcome == SliceOutcome::ok) {
      rec.witness("slice") = slice_json(active);
      rec.witness("attempts") = log;
      return;
    }
    if (outcome == SliceOutcome::failed) {
      rec.witness("attempts") = log;
      return;
    }
    inconclusive |= outcome == SliceOutcome::inconclusive;
  }
  rec.witness("attempts") = log;
  rec.inconclusive(inconclusive ? "no slice produced an irreducibility certificate" : "every slice was degenerate");
}

// ---------------------------------------------------------------------------
// univariate-divisibility

void check_univariate_divisibility(const CheckOptions& o, CheckRecorder& rec) {
  PrimeField f(o.prime);
  auto base = random_point(rec.rng(), f);
  rec.witness("base_point") = point_to_json(base);
  json lines = json::array();
  for (int w : {4, 10}) {
    auto res = restrict_to_parameter(base, w);
    json line{{"free", param_name(w)}, {"k_bound", res.k_bound}, {"r_bound", res.r_bound}, {"deg_k", res.k.degree()}, {"deg_r", res.r.degree()}};
    rec.expect(res.k_bound == kDegreeK / w && res.r_bound == kDegreeR / w, "interpolation bounds are 1092 / w and 196 / w", line);
    rec.expect(res.r.degree() > 0, "r restricted to the line is non-constant", line);
    try {
      auto q = delta_T_on_restriction(res.k, res.r);
      line["deg_cofactor"] = q.degree();
      rec.expect(q.degree() == res.k.degree() - 3 * res.r.degree(), "cofactor degree is deg k - 3 deg r", line);
    } catch (const NotDivisibleError&) {
      rec.expect(false, "r^3 divides k on the line through " + param_name(w), line);
    }
    lines.push_back(line);
  }
  rec.witness("lines") = lines;
}

// ---------------------------------------------------------------------------
// scaling-probes

void check_scaling_probes(const CheckOptions& o, CheckRecorder& rec) {
  const int trials = trials_or(o, 20);
  PrimeField f(o.prime);
  std::vector<int> weights(kParameterWeights.begin(), kParameterWeights.end());
  auto seed = [&]() { return rec.rng()(); };
  struct Probe {
    const char* name;
    bool k;
    int degree;
    bool expected;
  };
  json probes = json::array();
  for (const auto& p : {Probe{"k", true, kDegreeK, true}, Probe{"r", false, kDegreeR, true}, Probe{"k", true, kDegreeK - 1, false},
                        Probe{"r", false, kDegreeR + 1, false}}) {
    auto res = numeric_degree_probe(family_evaluator(f, p.k), weights, p.degree, trials, f.prime(), seed());
    json j{{"polynomial", p.name}, {"claimed_degree", p.degree}, {"holds", res.holds}, {"trials", res.trials_used}, {"zero_retries", res.zero_retries}};
    rec.expect(res.holds == p.expected, std::string(p.expected ? "" : "control: ") + p.name + " scales with degree " + std::to_string(p.degree), j);
    probes.push_back(j);
  }
  rec.witness("probes") = probes;
  // Schwartz-Zippel: k(alpha t) - alpha^1092 k(t) has total degree <= 273 + 1092
  const double single = std::log2(static_cast<double>(kDegreeK / 4 + kDegreeK)) - std::log2(static_cast<double>(f.prime()));
  rec.witness("aggregate_false_pass_log2_bound") = std::round(single * trials * 100) / 100;
  if (single * trials > -40) rec.inconclusive("the prime is too small for a 2^-40 error bound with this many trials");

  auto fam = build_family();
  auto dh = weighted_degree(fam.h, ambient_weights());
  rec.expect(dh.homogeneous && dh.degree == kDegreeH, "h is homogeneous of degree 84 in (x, w)", json{{"degree", dh.degree}});
  std::vector<std::string> names{"u"};
  for (int w : kParameterWeights) names.push_back(param_name(w));
  auto hu = dehomogenize(fam.h, make_ring(IntegerRing{}, names));
  rec.expect(hu.degree_in(0) == kDegreeHInU, "h has degree 14 in u", json{{"degree", hu.degree_in(0)}});
  rec.witness("h_degree") = dh.degree;
  rec.witness("h_degree_in_u") = hu.degree_in(0);
}

// ---------------------------------------------------------------------------
// lemma-order

void check_lemma_order(const CheckOptions& o, CheckRecorder& rec) {
  auto ring = make_ring(IntegerRing{}, {"x", "alpha", "beta", "c"});
  auto var = [&](const char* n) { return ZPoly::variable(ring, n); };
  auto lin = [&](const char* a) { return var("x") - var(a); };
  auto diag = var("alpha") - var("beta");
  const ResultantStrategy strategies[] = {ResultantStrategy::fraction_free, ResultantStrategy::modular_interp};

  auto branch_order = [&](int n, int m) {
    auto p = lin("alpha").pow(static_cast<unsigned>(n)) - lin("beta").pow(static_cast<unsigned>(m));
    std::vector<int> orders;
    for (auto s : strategies) orders.push_back(vanishing_order(formal_discriminant(p, "x", n, s), diag));
    json j{{"n", n}, {"m", m}, {"order", orders[0]}, {"expected", n * (m - 1)}};
    rec.expect(orders[0] == orders[1], "both resultant strategies agree", j);
    rec.expect(orders[0] == n * (m - 1), "order of the discriminant along alpha = beta is n (m - 1)", j);
    return j;
  };

  if (o.params.count("n") || o.params.count("m")) {
    auto n = static_cast<int>(o.params.count("n") ? o.params.at("n") : o.params.at("m"));
    auto m = static_cast<int>(o.params.count("m") ? o.params.at("m") : 2);
    auto j = branch_order(n, m);
    rec.witness("order") = j["order"];
    rec.witness("case") = j;
    return;
  }

  auto h = ZPoly::from_int(ring, 4) * lin("alpha").pow(3) + ZPoly::from_int(ring, 27) * lin("beta").pow(2);
  std::vector<int> orders;
  for (auto s : strategies) orders.push_back(vanishing_order(discriminant(h, "x", s), diag));
  rec.expect(orders[0] == 3 && orders[1] == 3, "disc(4 (x - alpha)^3 + 27 (x - beta)^2) vanishes to order 3 along alpha = beta",
             json{{"orders", orders}});
  // normal form with beta - alpha = c: the exact polynomial, frozen from an independent CAS
  auto hc = ZPoly::from_int(ring, 4) * var("x").pow(3) + ZPoly::from_int(ring, 27) * (var("x") + var("c")).pow(2);
  auto dc = discriminant(hc, "x");
  auto frozen = ZPoly::from_int(ring, -314928) * var("c").pow(3) * (var("c") - ZPoly::from_int(ring, 1));
  rec.expect(dc == frozen, "disc(4 x^3 + 27 (x + c)^2) = -314928 c^3 (c - 1)", json{{"computed", to_string(dc)}});
  rec.witness("cusp_collision") = json{{"order", orders[0]}, {"normal_form", to_string(dc)}};
  json table = json::array();
  for (auto [n, m] : {std::pair{2, 2}, {3, 2}, {3, 3}, {4, 3}, {5, 2}, {4, 4}}) table.push_back(branch_order(n, m));
  rec.witness("branch_collisions") = table;
}

void validate_lemma_params(const CheckOptions& o) {
  auto get = [&](const char* k, std::int64_t d) { return o.params.count(k) ? o.params.at(k) : d; };
  if (!o.params.count("n") && !o.params.count("m")) return;
  auto n = get("n", get("m", 2));
  auto m = get("m", 2);
  if (m < 1 || n < m || n > 8) throw UsageError("lemma-order needs 1 <= m <= n <= 8, got n = " + std::to_string(n) + ", m = " + std::to_string(m));
  if (n < 2) throw UsageError("lemma-order needs n >= 2 for a discriminant");
}

// ---------------------------------------------------------------------------
// nonrdp-param

template <class D>
bool nonrdp_instance(const D& dom, const typename D::Element& a, const typename D::Element& b, CheckRecorder& rec) {
  auto wd = weierstrass(nonrdp_param(dom, a, b));
  auto lin = DensePoly<D>::linear_root(dom, b);
  auto g2 = power(lin, 4).scaled(a);
  auto g3 = power(lin, 6) * DensePoly<D>::linear_root(dom, dom.mul(dom.from_int(-6), b));
  json ev{{"a", dom.format(a)}, {"b", dom.format(b)}};
  bool ok = rec.expect(wd.g2 == g2, "g2 = a (u - b)^4", ev);
  ok &= rec.expect(wd.g3 == g3, "g3 = (u - b)^6 (u + 6b)", ev);
  auto found = detect_nonrdp(wd);
  ok &= rec.expect(found.size() == 1 && dom.equal(found[0].u0, b) && found[0].ord_g2 == 4 && found[0].ord_g3 == 6,
                   "the only non-RDP base point is u = b with orders (4, 6)", ev);
  ok &= rec.expect(dom.is_zero(r_value(wd)) && dom.is_zero(k_value(wd)), "r and k vanish", ev);
  return ok;
}

void check_nonrdp_param(const CheckOptions& o, CheckRecorder& rec) {
  const int trials = trials_or(o, 100);
  RationalField q;
  PrimeField f(o.prime);
  int passed_q = 0, passed_p = 0;
  for (int i = 0; i < trials; ++i) {
    auto a = random_rational(rec.rng()), b = random_rational(rec.rng());
    passed_q += nonrdp_instance(q, a, b, rec);
  }
  for (int i = 0; i < trials; ++i) {
    auto a = draw_nonzero(rec.rng(), f), b = draw_nonzero(rec.rng(), f);
    passed_p += nonrdp_instance(f, a, b, rec);
  }
  rec.witness("rational_instances") = passed_q;
  rec.witness("prime_field_instances") = passed_p;
  rec.witness("orders") = json::array({4, 6});

  // printed t16 = 6ab, checked at a = 2, b = 3
  {
    mpq_class a = 2, b = 3;
    auto pt = nonrdp_param(q, a, b);
    auto correct = weierstrass(pt).g2;
    pt[16] = 6 * a * b;
    auto printed = weierstrass(pt);
    rec.erratum("t16-component", "the t16 entry of the non-RDP parametrization must be 6ab^2; the printed 6ab breaks g2 = a(u - b)^4",
                json{{"a", 2},
                     {"b", 3},
                     {"g2_with_6ab2", dense_json(correct)},
                     {"g2_with_6ab", dense_json(printed.g2)},
                     {"nonrdp_points_with_6ab", detect_nonrdp(printed).size()},
                     {"weights", "16 = 4 + 2 * 6 in P(4, 6)"}});
  }
  // printed condition ord g2 >= 4 and ord g2 >= 6
  {
    auto wd = weierstrass(nonrdp_param(q, mpq_class(1), mpq_class(1)));
    OrderTriple o3{order_at(wd.g2, mpq_class(1)), order_at(wd.g3, mpq_class(1)), order_at(build_h(wd), mpq_class(1))};
    bool printed = o3.a >= 4 && o3.a >= 6;
    rec.erratum("nonrdp-condition-typo", "the non-RDP condition must read ord g2 >= 4 and ord g3 >= 6; the printed second condition repeats g2",
                json{{"point", "a = 1, b = 1, u = 1"},
                     {"orders", orders_json(o3)},
                     {"fiber", classify(o3).name()},
                     {"printed_condition_holds", printed},
                     {"corrected_condition_holds", o3.a >= 4 && o3.b >= 6}});
  }
}

// ---------------------------------------------------------------------------
// kodaira

void check_kodaira(const CheckOptions& o, CheckRecorder& rec) {
  const int trials = trials_or(o, 1000);
  PrimeField f(o.prime);
  rec.expect(classify({4, 5, 10}) == KodairaType{KodairaTag::IIstar}, "classify(4, 5, 10) = II*");
  int ii_star = 0;
  for (int i = 0; i < trials; ++i) {
    auto pt = random_point(rec.rng(), f);
    auto wd = weierstrass(pt);
    auto inf = orders_at_infinity(wd);
    bool ok = inf == OrderTriple{4, 5, 10} && classify(inf).tag == KodairaTag::IIstar;
    ii_star += ok;
    if (!ok) rec.expect(false, "fiber at w = 0 is II* with orders (4, 5, 10)", json{{"point", point_to_json(pt)}, {"orders", orders_json(inf)}});
  }
  rec.witness("random_points_with_II_star_at_infinity") = ii_star;

  auto draw = [&]() { return draw_nonzero(rec.rng(), f); };
  {
    auto c = construct_d1_point(f, draw);
    auto wd = weierstrass(c.point);
    auto scan = scan_fibers(wd);
    auto it = std::find_if(scan.places.begin(), scan.places.end(), [&](const auto& p) { return p.u && *p.u == c.u0; });
    json j{{"point", point_to_json(c.point)}, {"u0", c.u0}, {"k", k_value(wd)}, {"r", r_value(wd)}};
    if (it != scan.places.end()) {
      j["orders"] = orders_json(it->orders);
      j["type"] = it->type.name();
    }
    rec.expect(it != scan.places.end() && it->type == KodairaType{KodairaTag::In, 2}, "constructed D1 point has an I2 fiber", j);
    rec.expect(k_value(wd) == 0 && r_value(wd) != 0, "constructed D1 point has k = 0 and r != 0", j);
    rec.witness("d1") = j;
  }
  {
    auto c = construct_d2_point(f, draw);
    auto wd = weierstrass(c.point);
    auto scan = scan_fibers(wd);
    const auto& first = scan.places.front();
    json j{{"point", point_to_json(c.point)}, {"u0", 0}, {"orders", orders_json(first.orders)}, {"type", first.type.name()}, {"r", r_value(wd)}};
    rec.expect(first.u && *first.u == 0 && first.type == KodairaType{KodairaTag::II}, "constructed D2 point has a type II fiber at u = 0", j);
    rec.expect(r_value(wd) == 0, "constructed D2 point has r = 0", j);
    rec.witness("d2") = j;
  }
  {
    FamilyPoint<RationalField> pt;
    pt[28] = -3;
    auto p = find_splitting_prime(pt);
    if (!rec.expect(p.has_value(), "a prime splitting h = 27 (u^14 - 4) exists among the candidates")) return;
    auto scan = scan_fibers(weierstrass(reduce_point(pt, PrimeField(*p))));
    std::map<std::string, int> counts;
    for (const auto& place : scan.places) ++counts[place.type.name()];
    json j{{"point", point_to_json(pt)}, {"prime", *p}, {"places", scan.places.size()}, {"residual", scan.residual}, {"euler_sum", scan.euler_sum()}};
    j["types"] = counts;
    rec.expect(scan.residual == 0 && scan.euler_sum() == 24, "Euler numbers of all singular fibers sum to 24", j);
    rec.witness("euler_sum") = j;
  }
  {
    auto fam = build_family();
    auto swapped = ZPoly::from_int(fam.ring, 4) * fam.g2.pow(2) - ZPoly::from_int(fam.ring, 27) * fam.g3.pow(3);
    std::set<std::int64_t> degrees;
    auto w = ambient_weights();
    auto weights = ring_weights(swapped, w);
    for (const auto& t : swapped.terms()) {
      std::int64_t d = 0;
      for (std::size_t i = 0; i < weights.size(); ++i) d += static_cast<std::int64_t>(weights[i]) * t.mono[i];
      degrees.insert(d);
    }
    auto used = weighted_degree(fam.h, w);
    rec.erratum("delta-exponent-swap",
                "the discriminant in the II* argument is printed as 4 g2^2 - 27 g3^3; only 4 g2^3 + 27 g3^2 is homogeneous, and it is used throughout",
                json{{"printed_form_degrees", degrees}, {"used_form_degree", used.degree}, {"used_form_homogeneous", used.homogeneous}});
  }
}

// ---------------------------------------------------------------------------
// lattice

json gram_json(const GramMatrix& g) {
  json rows = json::array();
  for (const auto& row : g) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.get_si());
    rows.push_back(r);
  }
  return rows;
}

json invariants_json(const LatticeInvariants& inv) {
  return json{{"determinant", inv.determinant.get_str()}, {"signature", json::array({inv.positive, inv.negative})}, {"radical", inv.radical}, {"even", inv.even}};
}

void check_lattice(const CheckOptions& o, CheckRecorder& rec) {
  const int trials = trials_or(o, 20);
  auto d = t237_diagram();
  auto g = gram_from_diagram(d);
  auto inv = lattice_invariants(g);
  rec.witness("diagram") = d.to_string();
  rec.witness("gram") = gram_json(g);
  rec.witness("invariants") = invariants_json(inv);
  rec.expect(inv.determinant == -1 && inv.positive == 1 && inv.negative == 9 && inv.radical == 0 && inv.even,
             "T_{2,3,7} is even unimodular of signature (1, 9) with determinant -1", invariants_json(inv));
  int stable = 0;
  for (int i = 0; i < trials; ++i) {
    auto u = random_unimodular(10, rec.rng());
    auto changed = lattice_invariants(congruent(g, u));
    bool same = changed.determinant == inv.determinant && changed.positive == inv.positive && changed.negative == inv.negative &&
                changed.even == inv.even;
    stable += same;
    if (!same) rec.expect(false, "invariants survive a unimodular change of basis", invariants_json(changed));
  }
  rec.witness("basis_changes") = stable;
  auto e8 = lattice_invariants(gram_from_diagram(e8_diagram()));
  rec.witness("e8") = invariants_json(e8);
  rec.expect(e8.determinant == 1 && e8.negative == 8 && e8.positive == 0 && e8.even, "E8 is even unimodular and negative definite", invariants_json(e8));
}

// ---------------------------------------------------------------------------
// degree-ledger

void check_degree_ledger(const CheckOptions& o, CheckRecorder& rec) {
  json identities = json::array();
  for (const auto& e : degree_ledger()) {
    identities.push_back(json{{"identity", e.identity}, {"lhs", e.lhs}, {"rhs", e.rhs}});
    rec.expect(e.holds(), e.identity, json{{"lhs", e.lhs}, {"rhs", e.rhs}});
  }
  // re-derive the degrees from the computational modules
  PrimeField f(o.prime);
  std::vector<int> weights(kParameterWeights.begin(), kParameterWeights.end());
  const int weight_sum = std::accumulate(weights.begin(), weights.end(), 0);
  auto fam = build_family();
  auto dh = weighted_degree(fam.h, ambient_weights());
  std::vector<std::string> names{"u"};
  for (int w : kParameterWeights) names.push_back(param_name(w));
  auto hu = dehomogenize(fam.h, make_ring(IntegerRing{}, names));
  auto dk = numeric_degree_probe(family_evaluator(f, true), weights, kDegreeK, 3, f.prime(), rec.rng()());
  auto dr = numeric_degree_probe(family_evaluator(f, false), weights, kDegreeR, 3, f.prime(), rec.rng()());
  rec.expect(weight_sum == 242, "sum of the parameter weights", json{{"computed", weight_sum}});
  rec.expect(dh.homogeneous && dh.degree == kDegreeH, "degree of h from the symbolic family", json{{"computed", dh.degree}});
  rec.expect(hu.degree_in(0) == kDegreeHInU, "u-degree of h from the symbolic family", json{{"computed", hu.degree_in(0)}});
  rec.expect(dk.holds, "k scales with degree 1092");
  rec.expect(dr.holds, "r scales with degree 196");
  rec.witness("identities") = identities;
  rec.witness("degrees") = json{{"weight_sum", weight_sum},
                                {"delta_degree", kDegreeK - 3 * kDegreeR},
                                {"canonical_twist", -weight_sum + kDegreeDelta / 2},
                                {"k_degree", kDegreeK},
                                {"r_degree", kDegreeR},
                                {"h_degree", dh.degree},
                                {"h_degree_in_u", hu.degree_in(0)}};
}

// ---------------------------------------------------------------------------
// family-invariance

void check_family_invariance(const CheckOptions&, CheckRecorder& rec) {
  auto fam = build_family({"alpha", "alpha_inv"});
  auto tw = torus_weights();
  rec.expect(scale_action(fam.f, tw, +1) == fam.f && scale_action(fam.f, tw, -1) == fam.f, "f is fixed by the combined torus action");
  auto without_w = tw;
  without_w.set("w", 0);
  rec.expect(scale_action(fam.f, without_w, +1) != fam.f, "control: the parameter action alone moves f");
  json degrees = json::object();
  auto aw = ambient_weights();
  const std::pair<const char*, const ZPoly*> forms[] = {{"f", &fam.f}, {"g2", &fam.g2}, {"g3", &fam.g3}, {"h", &fam.h}};
  const std::map<std::string, int> expected{{"f", 42}, {"g2", 28}, {"g3", 42}, {"h", kDegreeH}};
  for (auto [name, p] : forms) {
    auto d = weighted_degree(*p, aw);
    degrees[name] = d.degree;
    rec.expect(d.homogeneous && d.degree == expected.at(name), std::string(name) + " is homogeneous of the expected degree", json{{"degree", d.degree}});
  }
  rec.witness("ambient_degrees") = degrees;
  auto m = generic_point_membership();
  const char* labels[] = {"[0:-1:1:0]", "[-1:0:1:0]", "[1:-1:0:0]"};
  json members = json::object();
  for (std::size_t i = 0; i < m.size(); ++i) {
    members[labels[i]] = m[i];
    rec.expect(m[i], std::string("every member passes through ") + labels[i]);
  }
  rec.witness("generic_points") = members;
}

// ---------------------------------------------------------------------------
// sylvester-display

void check_sylvester_display(const CheckOptions& o, CheckRecorder& rec) {
  std::vector<int> all(kParameterWeights.begin(), kParameterWeights.end());
  auto s = slice_forms(all);
  auto m = sylvester(s.g2, s.g3, "u", CoefficientOrder::ascending);
  rec.expect(m.size() == 11, "the Sylvester matrix of (g2, g3) is 11 x 11", json{{"size", m.size()}});
  if (m.size() != 11) return;
  auto entry = [&](const char* text) { return text[0] == '0' ? ZPoly(s.ring) : text[0] == '1' ? ZPoly::from_int(s.ring, 1) : ZPoly::variable(s.ring, text); };
  const char* g2_band[] = {"t28", "t22", "t16", "t10", "t4"};
  const char* g3_band[] = {"t42", "t36", "t30", "t24", "t18", "t12", "0", "1"};
  bool layout = true;
  for (std::size_t row = 0; row < 11; ++row) {
    const bool first = row < 7;
    const std::size_t shift = first ? row : row - 7;
    const std::size_t width = first ? 5 : 8;
    for (std::size_t col = 0; col < 11; ++col) {
      ZPoly want(s.ring);
      if (col >= shift && col < shift + width) want = entry(first ? g2_band[col - shift] : g3_band[col - shift]);
      if (m.at(row, col) != want) {
        layout = false;
        rec.expect(false, "Sylvester entry matches the banded layout",
                   json{{"row", row}, {"col", col}, {"entry", to_string(m.at(row, col))}, {"expected", to_string(want)}});
      }
    }
  }
  rec.witness("rows") = json::array({"t28 t22 t16 t10 t4 (7 shifted rows)", "t42 t36 t30 t24 t18 t12 0 1 (4 shifted rows)"});
  // the displayed matrix is the resultant up to sign
  PrimeField f(o.prime);
  auto rp = make_ring(f, s.ring->names());
  auto pt = random_point(rec.rng(), f);
  std::map<std::string, std::uint64_t> at;
  for (int w : kParameterWeights) at[param_name(w)] = pt[w];
  auto cr = make_ring(f, std::vector<std::string>{"u"});
  std::vector<std::vector<MultiPoly<PrimeField>>> numeric;
  for (const auto& row : m.rows) {
    std::vector<MultiPoly<PrimeField>> nr;
    for (const auto& e : row) nr.push_back(MultiPoly<PrimeField>::constant(cr, evaluate(reduce_mod(e, rp), at).constant_value()));
    numeric.push_back(nr);
  }
  auto det = determinant_fraction_free(numeric, cr);
  auto rv = r_value(weierstrass(pt));
  const std::uint64_t dv = det.is_zero() ? 0 : det.constant_value();
  int sign = dv == rv ? 1 : dv == f.neg(rv) ? -1 : 0;
  rec.expect(sign != 0 && rv != 0, "the displayed determinant equals r up to sign", json{{"det", dv}, {"r", rv}});
  rec.witness("determinant_sign") = sign;
  if (layout) {
    json positions = json::array();
    for (std::size_t j = 0; j < 4; ++j) positions.push_back(json::array({7 + j, j}));
    rec.erratum("t40-entry",
                "the displayed resultant shows t40 in the first column of the g3 band; no parameter of weight 40 exists and the construction puts t42 there",
                json{{"positions", positions}, {"constructed_entry", "t42"}, {"parameter_weights", kParameterWeights}});
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "fail";
}

CheckRecorder::CheckRecorder(std::string name, std::uint64_t seed) : rng_(seed) { result_.name = std::move(name); }

bool CheckRecorder::expect(bool ok, const std::string& what, nlohmann::ordered_json evidence) {
  if (ok) return true;
  result_.status = CheckStatus::fail;
  json entry{{"expectation", what}};
  if (!evidence.is_null()) entry["evidence"] = std::move(evidence);
  result_.witnesses["failures"].push_back(std::move(entry));
  return false;
}

void CheckRecorder::inconclusive(const std::string& why, nlohmann::ordered_json evidence) {
  if (result_.status == CheckStatus::pass) result_.status = CheckStatus::inconclusive;
  json entry{{"reason", why}};
  if (!evidence.is_null()) entry["evidence"] = std::move(evidence);
  result_.witnesses["inconclusive"].push_back(std::move(entry));
}

void CheckRecorder::erratum(std::string id, std::string summary, nlohmann::ordered_json evidence) {
  result_.errata.push_back({std::move(id), std::move(summary), std::move(evidence)});
}

CheckResult CheckRecorder::finish() && { return std::move(result_); }

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry{
      {"degree-ledger", "degree bookkeeping: 242, 504, 10, 1092 = 3 * 196 + 504, 14 * 13 * 6", {}, check_degree_ledger},
      {"family-invariance", "torus invariance, ambient homogeneity and generic singular points of the family", {}, check_family_invariance},
      {"sylvester-display", "banded layout of the 11 x 11 Sylvester matrix of (g2, g3)", {}, check_sylvester_display},
      {"scaling-probes", "k and r scale with weighted degrees 1092 and 196; h has degree 84 and 14 in u", {}, check_scaling_probes},
      {"univariate-divisibility", "r^3 divides k on seeded lines through t4 and t10 over F_p", {}, check_univariate_divisibility},
      {"slice-factorization", "symbolic k = r^3 * (degree 504) on a parameter slice, with multiplicity exactly 3", {}, check_slice_factorization},
      {"lemma-order", "order of vanishing of the local discriminants along alpha = beta", {"n", "m"}, check_lemma_order},
      {"nonrdp-param", "the non-RDP parametrization over Q and F_p", {}, check_nonrdp_param},
      {"kodaira", "II* at infinity, I2 on D1, II on D2 and Euler sum 24", {}, check_kodaira},
      {"lattice", "T_{2,3,7} is even unimodular of signature (1, 9)", {}, check_lattice},
  };
  return registry;
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& c : check_registry()) out.push_back(c.name);
  return out;
}

std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(fnv1a(name)),
                    static_cast<std::uint32_t>(fnv1a(name) >> 32)};
  std::mt19937_64 gen(seq);
  return gen();
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::pass; });
}

VerificationReport run_checks(const std::vector<std::string>& names, const RunOptions& opts) {
  const auto& registry = check_registry();
  std::vector<const CheckSpec*> selected;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& c : registry) selected.push_back(&c);
      continue;
    }
    auto it = std::find_if(registry.begin(), registry.end(), [&](const CheckSpec& c) { return c.name == n; });
    if (it == registry.end()) throw UsageError("unknown check '" + n + "' (see list-checks)");
    selected.push_back(&*it);
  }
  if (selected.empty()) throw UsageError("no checks selected");
  // keep registry order and drop repeats so reports do not depend on argument order
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

  const auto& o = opts.check;
  if (!is_prime_u64(o.prime) || o.prime < kMinimumPrime || o.prime >= (std::uint64_t{1} << 63)) {
    throw UsageError("--prime must be a prime between 2^20 and 2^63, got " + std::to_string(o.prime));
  }
  if (o.trials && *o.trials < 1) throw UsageError("--trials must be positive");
  if (o.slice) {
    if (o.slice->size() < 2) throw UsageError("a slice needs at least two parameters");
    for (int w : *o.slice) param_index(w);
  }
  for (const auto& [key, value] : o.params) {
    bool accepted = std::any_of(selected.begin(), selected.end(), [&](const CheckSpec* c) {
      return std::find(c->params.begin(), c->params.end(), key) != c->params.end();
    });
    if (!accepted) throw UsageError("no selected check takes the parameter '" + key + "'");
  }
  validate_lemma_params(o);

  VerificationReport report;
  report.seed = o.seed;
  report.prime = o.prime;
  report.version = library_version();
  report.checks.resize(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      const CheckSpec& spec = *selected[i];
      CheckRecorder rec(spec.name, check_seed(o.seed, spec.name));
      auto start = std::chrono::steady_clock::now();
      try {
        spec.run(o, rec);
      } catch (const std::exception& e) {
        rec.expect(false, "the check ran to completion", json{{"error", e.what()}});
      }
      auto result = std::move(rec).finish();
      if (opts.timings) result.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      report.checks[i] = std::move(result);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(selected.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

nlohmann::ordered_json report_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json errata = json::array();
    for (const auto& e : c.errata) errata.push_back(json{{"id", e.id}, {"summary", e.summary}, {"evidence", e.evidence}});
    checks.push_back(json{{"name", c.name},
                          {"status", status_name(c.status)},
                          {"witnesses", c.witnesses},
                          {"millis", std::round(c.millis * 1000) / 1000},
                          {"errata", errata}});
  }
  return json{{"meta", json{{"seed", report.seed}, {"prime", report.prime}, {"version", report.version}}}, {"checks", checks}};
}

std::vector<LedgerEntry> degree_ledger() {
  std::int64_t sum = 0;
  for (int w : kParameterWeights) sum += w;
  return {
      {"w4 + w10 + ... + w42 = 242", sum, 242},
      {"-242 + 504 / 2 = 10", -sum + kDegreeDelta / 2, 10},
      {"14 * 13 * 6 = 1092", 14 * 13 * 6, kDegreeK},
      {"1092 - 3 * 196 = 504", kDegreeK - 3 * kDegreeR, kDegreeDelta},
      {"1092 = 3 * 196 + 504", kDegreeK, 3 * kDegreeR + kDegreeDelta},
      {"deg h = 6 * 14 = 84", 6 * kDegreeHInU, kDegreeH},
  };
}

std::string library_version() { return K3DISC_VERSION; }

}  // namespace k3disc
