#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "k3disc/dense.hpp"
#include "k3disc/grading.hpp"
#include "k3disc/poly.hpp"

namespace k3disc {

// ---------------------------------------------------------------------------
// Sylvester matrices

enum class CoefficientOrder {
  descending,  // textbook layout: leading coefficient first in each band row
  ascending,   // constant term first, as some printed displays use
};

/// Square matrix of size deg p + deg q: deg q shifted rows of p-coefficients
/// followed by deg p shifted rows of q-coefficients. Entries are polynomials
/// in the remaining variables of the shared ring.
template <class D>
struct SylvesterMatrix {
  std::vector<std::vector<MultiPoly<D>>> rows;
  std::string var;
  int deg_p = 0;
  int deg_q = 0;
  CoefficientOrder order = CoefficientOrder::descending;

  std::size_t size() const { return rows.size(); }
  const MultiPoly<D>& at(std::size_t r, std::size_t c) const { return rows[r][c]; }

  /// Row-major text, one row per line, entries in canonical polynomial format.
  std::string to_string() const {
    std::string out;
    for (const auto& row : rows) {
      out += "[";
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ", ";
        out += k3disc::to_string(row[c]);
      }
      out += "]\n";
    }
    return out;
  }
};

template <class D>
SylvesterMatrix<D> sylvester(const MultiPoly<D>& p, const MultiPoly<D>& q, const std::string& var,
                             CoefficientOrder order = CoefficientOrder::descending) {
  MultiPoly<D>::check_same(p, q);
  if (p.is_zero() || q.is_zero()) throw UndefinedError("Sylvester matrix of a zero polynomial");
  std::size_t v = p.ring()->index_of(var);
  int m = p.degree_in(v);
  int n = q.degree_in(v);
  if (m == 0 && n == 0) throw UndefinedError("both polynomials have degree 0 in '" + var + "'");
  auto pc = p.coefficients_in(v);
  auto qc = q.coefficients_in(v);
  const std::size_t size = static_cast<std::size_t>(m + n);
  SylvesterMatrix<D> s;
  s.var = var;
  s.deg_p = m;
  s.deg_q = n;
  s.order = order;
  s.rows.assign(size, std::vector<MultiPoly<D>>(size, MultiPoly<D>(p.ring())));
  auto pick = [&](const std::vector<MultiPoly<D>>& c, int deg, int j) -> const MultiPoly<D>& {
    return order == CoefficientOrder::descending ? c[static_cast<std::size_t>(deg - j)] : c[static_cast<std::size_t>(j)];
  };
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j <= m; ++j) s.rows[r][r + j] = pick(pc, m, j);
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) s.rows[n + r][r + j] = pick(qc, n, j);
  }
  return s;
}

/// Single-step fraction-free (Bareiss) elimination. Every division is exact;
/// the pivot in each column is the nonzero entry with the fewest terms.
template <class D>
MultiPoly<D> determinant_fraction_free(std::vector<std::vector<MultiPoly<D>>> m, const RingPtr<D>& ring) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly<D>::constant(ring, ring->domain().one());
  bool negate = false;
  MultiPoly<D> prev = MultiPoly<D>::constant(ring, ring->domain().one());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = n;
    for (std::size_t r = k; r < n; ++r) {
      if (m[r][k].is_zero()) continue;
      if (piv == n || m[r][k].num_terms() < m[piv][k].num_terms()) piv = r;
    }
    if (piv == n) return MultiPoly<D>(ring);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly<D> num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = prev.is_constant() && ring->domain().is_one(prev.constant_value()) ? std::move(num) : exact_div(num, prev);
      }
      m[i][k] = MultiPoly<D>(ring);
    }
    prev = m[k][k];
  }
  MultiPoly<D> det = m[n - 1][n - 1];
  return negate ? -det : det;
}

template <class D>
MultiPoly<D> determinant(const SylvesterMatrix<D>& s, const RingPtr<D>& ring) {
  return determinant_fraction_free(s.rows, ring);
}

// ---------------------------------------------------------------------------
// Interpolation over prime fields

/// Coefficients (low degree first) of the polynomial through (nodes[i], values[i]).
/// Throws SamplingError on repeated nodes.
std::vector<std::uint64_t> interpolate_at_nodes(std::span<const std::uint64_t> nodes, std::span<const std::uint64_t> values,
                                                std::uint64_t prime);

/// Interpolation through consecutive integer nodes 0, 1, ..., values.size()-1.
std::vector<std::uint64_t> interpolate_consecutive(std::span<const std::uint64_t> values, std::uint64_t prime);

/// Evaluates F at s = 0..degree_bound over F_p and returns the interpolating
/// polynomial in `var` (a variable of `ring`).
MultiPoly<PrimeField> interp_univariate(const std::function<std::uint64_t(std::uint64_t)>& f, int degree_bound,
                                        const RingPtr<PrimeField>& ring, const std::string& var);

// ---------------------------------------------------------------------------
// Resultants and discriminants

enum class ResultantStrategy {
  fraction_free,   // Bareiss on the symbolic Sylvester matrix
  modular_interp,  // evaluation at grid points mod several primes, interpolation, CRT
};

struct ModularOptions {
  /// When set and both inputs are weighted-homogeneous, the result is known to
  /// be homogeneous of a computable degree; one variable is then set to 1 and
  /// restored afterwards, removing one interpolation dimension.
  std::optional<WeightVector> grading;
  std::uint64_t seed = 20240601;
  std::size_t max_grid_points = 20'000'000;
};

namespace detail {

/// Coefficient polynomial in compact form for fast evaluation mod p.
struct CompactPoly {
  std::vector<std::uint64_t> coeffs;
  std::vector<std::vector<std::uint32_t>> exps;  // per term, per grid variable
};

mpz_class one_norm(const MultiPoly<IntegerRing>& p);

struct GridLayout {
  std::vector<std::size_t> vars;     // ring indices interpolated over
  std::vector<int> bounds;           // degree bound per grid variable
  std::optional<std::size_t> pivot;  // ring index set to 1 (homogeneous mode)
  std::int64_t degree = 0;           // result weighted degree (homogeneous mode)
  std::vector<int> weights;          // weights of all ring variables (homogeneous mode)
};

/// Tensor-grid interpolation in place: values -> coefficients, axis by axis.
void tensor_interpolate(std::vector<std::uint64_t>& grid, const std::vector<int>& bounds, std::uint64_t prime);

template <class D>
GridLayout plan_grid(const MultiPoly<D>& p, const MultiPoly<D>& q, std::size_t v, const ModularOptions& opts) {
  const auto& ring = p.ring();
  auto pc = p.coefficients_in(v);
  auto qc = q.coefficients_in(v);
  const int m = p.degree_in(v);
  const int n = q.degree_in(v);
  GridLayout g;
  std::vector<int> row_bound(ring->nvars(), 0);
  for (std::size_t y = 0; y < ring->nvars(); ++y) {
    if (y == v) continue;
    int dp = 0, dq = 0;
    for (const auto& c : pc) dp = std::max(dp, c.degree_in(y));
    for (const auto& c : qc) dq = std::max(dq, c.degree_in(y));
    row_bound[y] = n * dp + m * dq;
  }
  std::vector<std::size_t> active;
  for (std::size_t y = 0; y < ring->nvars(); ++y) {
    if (y != v && row_bound[y] > 0) active.push_back(y);
  }
  if (opts.grading) {
    auto wp = weighted_degree(p, *opts.grading);
    auto wq = weighted_degree(q, *opts.grading);
    auto weights = ring_weights(p, *opts.grading);
    std::int64_t wv = weights[v];
    std::int64_t total = static_cast<std::int64_t>(m) * wq.degree + static_cast<std::int64_t>(n) * wp.degree -
                         static_cast<std::int64_t>(m) * n * wv;
    std::optional<std::size_t> pivot;
    for (std::size_t y : active) {
      if (weights[y] > 0 && (!pivot || row_bound[y] > row_bound[*pivot])) pivot = y;
    }
    if (wp.homogeneous && wq.homogeneous && total >= 0 && pivot) {
      g.pivot = pivot;
      g.degree = total;
      g.weights = weights;
      for (std::size_t y : active) {
        if (y == *pivot) continue;
        int b = row_bound[y];
        if (weights[y] > 0) b = std::min<std::int64_t>(b, total / weights[y]);
        g.vars.push_back(y);
        g.bounds.push_back(b);
      }
      return g;
    }
  }
  for (std::size_t y : active) {
    g.vars.push_back(y);
    g.bounds.push_back(row_bound[y]);
  }
  return g;
}

template <class D>
CompactPoly compact(const MultiPoly<D>& c, const GridLayout& g, const PrimeField& f) {
  CompactPoly out;
  for (const auto& t : c.terms()) {
    if constexpr (std::is_same_v<D, IntegerRing>) {
      out.coeffs.push_back(f.from_mpz(t.coeff));
    } else {
      out.coeffs.push_back(t.coeff);
    }
    std::vector<std::uint32_t> e;
    for (std::size_t y : g.vars) e.push_back(t.mono[y]);
    out.exps.push_back(std::move(e));
  }
  return out;
}

/// Values of Res(p, q) on the grid modulo one prime, then interpolated.
template <class D>
std::vector<std::uint64_t> modular_image(const std::vector<MultiPoly<D>>& pc, const std::vector<MultiPoly<D>>& qc, const GridLayout& g,
                                         std::uint64_t prime) {
  PrimeField f(prime);
  std::vector<CompactPoly> cp, cq;
  for (const auto& c : pc) cp.push_back(compact(c, g, f));
  for (const auto& c : qc) cq.push_back(compact(c, g, f));
  std::size_t total = 1;
  for (int b : g.bounds) total *= static_cast<std::size_t>(b + 1);
  // pw[k][node][e] = node^e
  std::vector<std::vector<std::vector<std::uint64_t>>> pw(g.vars.size());
  for (std::size_t k = 0; k < g.vars.size(); ++k) {
    std::uint32_t max_e = 0;
    for (const auto* list : {&cp, &cq}) {
      for (const auto& c : *list) {
        for (const auto& e : c.exps) max_e = std::max(max_e, e[k]);
      }
    }
    pw[k].assign(static_cast<std::size_t>(g.bounds[k] + 1), std::vector<std::uint64_t>(max_e + 1, 1));
    for (int node = 0; node <= g.bounds[k]; ++node) {
      for (std::uint32_t e = 1; e <= max_e; ++e) pw[k][node][e] = f.mul(pw[k][node][e - 1], static_cast<std::uint64_t>(node) % prime);
    }
  }
  std::vector<std::uint64_t> grid(total);
  std::vector<int> idx(g.vars.size(), 0);
  auto eval_compact = [&](const CompactPoly& c) {
    std::uint64_t acc = 0;
    for (std::size_t t = 0; t < c.coeffs.size(); ++t) {
      std::uint64_t v = c.coeffs[t];
      for (std::size_t k = 0; k < idx.size(); ++k) v = f.mul(v, pw[k][idx[k]][c.exps[t][k]]);
      acc = f.add(acc, v);
    }
    return acc;
  };
  const int m = static_cast<int>(pc.size()) - 1;
  const int n = static_cast<int>(qc.size()) - 1;
  std::vector<std::uint64_t> a(pc.size()), b(qc.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    // row-major: last grid variable varies fastest
    std::size_t rest = flat;
    for (std::size_t k = idx.size(); k-- > 0;) {
      idx[k] = static_cast<int>(rest % static_cast<std::size_t>(g.bounds[k] + 1));
      rest /= static_cast<std::size_t>(g.bounds[k] + 1);
    }
    for (std::size_t i = 0; i < pc.size(); ++i) a[i] = eval_compact(cp[i]);
    for (std::size_t j = 0; j < qc.size(); ++j) b[j] = eval_compact(cq[j]);
    grid[flat] = sylvester_determinant(DensePoly<PrimeField>(f, a), m, DensePoly<PrimeField>(f, b), n);
  }
  tensor_interpolate(grid, g.bounds, prime);
  return grid;
}

}  // namespace detail

/// Resultant with respect to `var`, i.e. the determinant of the Sylvester
/// matrix built from the formal degrees of p and q in `var`. Both strategies
/// return the identical polynomial.
template <class D>
MultiPoly<D> resultant(const MultiPoly<D>& p, const MultiPoly<D>& q, const std::string& var,
                       ResultantStrategy strategy = ResultantStrategy::fraction_free, const ModularOptions& opts = {}) {
  MultiPoly<D>::check_same(p, q);
  const auto& ring = p.ring();
  if (strategy == ResultantStrategy::fraction_free || std::is_same_v<D, RationalField>) {
    return determinant(sylvester(p, q, var), ring);
  }
  if constexpr (std::is_same_v<D, RationalField>) {
    return determinant(sylvester(p, q, var), ring);
  } else {
    if (p.is_zero() || q.is_zero()) throw UndefinedError("resultant of a zero polynomial");
    std::size_t v = ring->index_of(var);
    const int m = p.degree_in(v);
    const int n = q.degree_in(v);
    if (m == 0 && n == 0) throw UndefinedError("both polynomials have degree 0 in '" + var + "'");
    auto pc = p.coefficients_in(v);
    auto qc = q.coefficients_in(v);
    detail::GridLayout g = detail::plan_grid(p, q, v, opts);
    std::size_t total = 1;
    for (int b : g.bounds) {
      total *= static_cast<std::size_t>(b + 1);
      if (total > opts.max_grid_points) throw NeedsMorePointsError("interpolation grid exceeds the configured point budget");
    }
    std::vector<std::uint64_t> primes;
    std::vector<mpz_class> coeffs(total);
    mpz_class modulus = 1;
    if constexpr (std::is_same_v<D, PrimeField>) {
      primes.push_back(ring->domain().prime());
      auto image = detail::modular_image(pc, qc, g, primes[0]);
      for (std::size_t i = 0; i < total; ++i) coeffs[i] = mpz_class(static_cast<unsigned long>(image[i]));
    } else {
      mpz_class sum_p = 0, sum_q = 0;
      for (const auto& c : pc) sum_p += detail::one_norm(c);
      for (const auto& c : qc) sum_q += detail::one_norm(c);
      mpz_class bound, tmp;
      mpz_pow_ui(bound.get_mpz_t(), sum_p.get_mpz_t(), static_cast<unsigned long>(n));
      mpz_pow_ui(tmp.get_mpz_t(), sum_q.get_mpz_t(), static_cast<unsigned long>(m));
      bound *= tmp;
      auto candidates = primes_below(1ULL << 61, 1 + mpz_sizeinbase(bound.get_mpz_t(), 2) / 59 + 2);
      for (std::uint64_t prime : candidates) {
        if (modulus > 2 * bound) break;
        primes.push_back(prime);
        auto image = detail::modular_image(pc, qc, g, prime);
        mpz_class mp(static_cast<unsigned long>(prime));
        mpz_class inv;
        mpz_class mod_p = modulus % mp;
        mpz_invert(inv.get_mpz_t(), mod_p.get_mpz_t(), mp.get_mpz_t());
        for (std::size_t i = 0; i < total; ++i) {
          mpz_class diff = mpz_class(static_cast<unsigned long>(image[i])) - coeffs[i];
          diff = diff * inv;
          mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), mp.get_mpz_t());
          coeffs[i] += modulus * diff;
        }
        modulus *= mp;
      }
      if (modulus <= 2 * bound) throw NeedsMorePointsError("ran out of CRT primes below the coefficient bound");
      mpz_class half = modulus / 2;
      for (auto& c : coeffs) {
        if (c > half) c -= modulus;
      }
    }
    // assemble terms
    std::vector<typename MultiPoly<D>::Term> terms;
    std::vector<int> idx(g.vars.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      if (sgn(coeffs[flat]) == 0) continue;
      std::size_t rest = flat;
      for (std::size_t k = idx.size(); k-- > 0;) {
        idx[k] = static_cast<int>(rest % static_cast<std::size_t>(g.bounds[k] + 1));
        rest /= static_cast<std::size_t>(g.bounds[k] + 1);
      }
      Monomial mono;
      std::int64_t used = 0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        mono.set(g.vars[k], static_cast<std::uint32_t>(idx[k]));
        if (g.pivot) used += static_cast<std::int64_t>(g.weights[g.vars[k]]) * idx[k];
      }
      if (g.pivot) {
        std::int64_t wp = g.weights[*g.pivot];
        std::int64_t left = g.degree - used;
        if (left < 0 || left % wp != 0) throw InternalConsistencyError("interpolated resultant is not weighted-homogeneous");
        mono.set(*g.pivot, static_cast<std::uint32_t>(left / wp));
      }
      if constexpr (std::is_same_v<D, PrimeField>) {
        terms.push_back({mono, ring->domain().from_mpz(coeffs[flat])});
      } else {
        terms.push_back({mono, coeffs[flat]});
      }
    }
    auto result = MultiPoly<D>::from_terms(ring, std::move(terms));
    // independent check at a random point modulo a prime not used above
    std::uint64_t check_prime = 0;
    if constexpr (std::is_same_v<D, PrimeField>) {
      check_prime = ring->domain().prime();
    } else {
      for (std::uint64_t cand : primes_below(1ULL << 62, 8)) {
        if (std::find(primes.begin(), primes.end(), cand) == primes.end()) {
          check_prime = cand;
          break;
        }
      }
    }
    PrimeField cf(check_prime);
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, check_prime - 1);
    std::vector<std::uint64_t> point(ring->nvars());
    for (auto& x : point) x = pick(rng);
    auto fp_ring = make_ring(cf, ring->names());
    auto lower = [&](const MultiPoly<D>& x) {
      if constexpr (std::is_same_v<D, PrimeField>) {
        return change_ring(x, fp_ring, [](std::uint64_t c) { return c; });
      } else {
        return reduce_mod(x, fp_ring);
      }
    };
    std::vector<std::uint64_t> a, b;
    for (const auto& c : pc) a.push_back(evaluate_all(lower(c), std::span<const std::uint64_t>(point)));
    for (const auto& c : qc) b.push_back(evaluate_all(lower(c), std::span<const std::uint64_t>(point)));
    auto expected = sylvester_determinant(DensePoly<PrimeField>(cf, a), m, DensePoly<PrimeField>(cf, b), n);
    if (evaluate_all(lower(result), std::span<const std::uint64_t>(point)) != expected) {
      throw NeedsMorePointsError("modular resultant failed its verification point");
    }
    return result;
  }
}

/// (-1)^(n(n-1)/2) * Res(p, dp/dv) / lc(p), n = deg_v p >= 2.
template <class D>
MultiPoly<D> discriminant(const MultiPoly<D>& p, const std::string& var,
                          ResultantStrategy strategy = ResultantStrategy::fraction_free, const ModularOptions& opts = {}) {
  const auto& ring = p.ring();
  std::size_t v = ring->index_of(var);
  const int n = p.degree_in(v);
  if (n < 2) throw UndefinedError("discriminant needs degree >= 2 in '" + var + "'");
  auto res = resultant(p, derivative(p, var), var, strategy, opts);
  auto lead = p.coefficients_in(v)[static_cast<std::size_t>(n)];
  auto quotient = try_exact_div(res, lead);
  if (!quotient) throw InternalConsistencyError("resultant not divisible by the leading coefficient");
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) return -*quotient;
  return *quotient;
}

/// Discriminant of p regarded as a polynomial of formal degree N >= deg_v p,
/// i.e. the universal degree-N discriminant evaluated at p's coefficients
/// (with zero leading coefficients when the degree drops). Computed as
/// disc(p + e*v^N) at e = 0 with an auxiliary symbol e.
template <class D>
MultiPoly<D> formal_discriminant(const MultiPoly<D>& p, const std::string& var, int formal_degree,
                                 ResultantStrategy strategy = ResultantStrategy::fraction_free) {
  const auto& ring = p.ring();
  const int n = p.degree_in(var);
  if (formal_degree < n) throw UndefinedError("formal degree below actual degree");
  if (formal_degree == n) return discriminant(p, var, strategy);
  auto names = ring->names();
  std::string eps = "_formal_lead";
  names.push_back(eps);
  auto wide = make_ring(ring->domain(), names);
  auto lifted = change_ring(p, wide, [](const auto& c) { return c; });
  auto perturbed = lifted + MultiPoly<D>::variable(wide, eps) * MultiPoly<D>::variable(wide, var, static_cast<std::uint32_t>(formal_degree));
  auto disc = discriminant(perturbed, var, strategy);
  auto at_zero = evaluate(disc, {{eps, ring->domain().zero()}});
  return change_ring(at_zero, ring, [](const auto& c) { return c; });
}

/// Largest e with along^e | p, by repeated exact division.
template <class D>
int vanishing_order(const MultiPoly<D>& p, const MultiPoly<D>& along) {
  MultiPoly<D>::check_same(p, along);
  if (p.is_zero()) return kInfiniteOrder;
  if (along.is_constant()) throw UndefinedError("vanishing order along a constant");
  int e = 0;
  MultiPoly<D> cur = p;
  while (auto q = try_exact_div(cur, along)) {
    cur = std::move(*q);
    ++e;
  }
  return e;
}

}  // namespace k3disc
