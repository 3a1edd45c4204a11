#include "k3disc/dense.hpp"

#include <algorithm>
#include <random>

namespace k3disc {

mpz_class content(const DensePoly<IntegerRing>& p) {
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

DensePoly<IntegerRing> primitive_part(const DensePoly<IntegerRing>& p) {
  if (p.is_zero()) return p;
  mpz_class g = content(p);
  if (sgn(p.leading()) < 0) g = -g;
  std::vector<mpz_class> c = p.coeffs();
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return DensePoly<IntegerRing>(p.domain(), std::move(c));
}

DensePoly<IntegerRing> exact_quotient(const DensePoly<IntegerRing>& a, const DensePoly<IntegerRing>& b) {
  if (b.is_zero()) throw UndefinedError("polynomial division by zero");
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return a;
    throw NotDivisibleError("degree of dividend below divisor");
  }
  std::vector<mpz_class> rem = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<mpz_class> quo(rem.size() - bc.size() + 1);
  const mpz_class& lb = bc.back();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const mpz_class& top = rem[k + bc.size() - 1];
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) throw NotDivisibleError("integer polynomial division not exact");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j < bc.size(); ++j) rem[k + j] -= q * bc[j];
    quo[k] = q;
  }
  for (const auto& r : rem) {
    if (sgn(r) != 0) throw NotDivisibleError("integer polynomial division not exact");
  }
  return DensePoly<IntegerRing>(a.domain(), std::move(quo));
}

DensePoly<IntegerRing> subresultant_gcd(const DensePoly<IntegerRing>& a_in, const DensePoly<IntegerRing>& b_in) {
  if (a_in.is_zero() && b_in.is_zero()) throw UndefinedError("gcd(0, 0) is undefined");
  if (a_in.is_zero()) return primitive_part(b_in);
  if (b_in.is_zero()) return primitive_part(a_in);
  DensePoly<IntegerRing> a = a_in.degree() >= b_in.degree() ? a_in : b_in;
  DensePoly<IntegerRing> b = a_in.degree() >= b_in.degree() ? b_in : a_in;
  // The content gcd is discarded: the result is the primitive gcd.
  a = primitive_part(a);
  b = primitive_part(b);
  mpz_class g = 1;
  mpz_class h = 1;
  const IntegerRing zz;
  while (true) {
    int delta = a.degree() - b.degree();
    DensePoly<IntegerRing> r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    if (r.degree() == 0) return DensePoly<IntegerRing>::constant(zz, 1);
    mpz_class divisor = g;
    mpz_class hpow;
    mpz_pow_ui(hpow.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    divisor *= hpow;
    std::vector<mpz_class> rc = r.coeffs();
    for (auto& x : rc) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
    a = std::move(b);
    b = DensePoly<IntegerRing>(zz, std::move(rc));
    g = a.leading();
    // h <- g^delta / h^(delta - 1)
    mpz_class num;
    mpz_pow_ui(num.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
    if (delta >= 1) {
      mpz_class den;
      mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    } else {
      h = num * h;
    }
  }
  return primitive_part(b);
}

DensePoly<PrimeField> pow_mod(DensePoly<PrimeField> base, std::uint64_t e, const DensePoly<PrimeField>& m) {
  const PrimeField& f = m.domain();
  DensePoly<PrimeField> result = DensePoly<PrimeField>::constant(f, 1) % m;
  base = base % m;
  while (e > 0) {
    if (e & 1U) result = (result * base) % m;
    e >>= 1U;
    if (e > 0) base = (base * base) % m;
  }
  return result;
}

namespace {

void split_roots(const DensePoly<PrimeField>& g, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
  const PrimeField& f = g.domain();
  const std::uint64_t p = f.prime();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    auto m = g.monic();
    out.push_back(f.neg(m.coeff(0)));
    return;
  }
  if (p == 2) {
    for (std::uint64_t x : {0ULL, 1ULL}) {
      if (g.eval(x) == 0) out.push_back(x);
    }
    return;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
  while (true) {
    auto shift = DensePoly<PrimeField>(f, {pick(rng), 1});
    auto t = pow_mod(shift, (p - 1) / 2, g) - DensePoly<PrimeField>::constant(f, 1);
    if (t.is_zero()) continue;
    auto s = gcd(g, t);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      split_roots(s, rng, out);
      split_roots(divrem(g, s).first, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> roots_mod_p(const DensePoly<PrimeField>& poly, std::uint64_t seed) {
  if (poly.is_zero()) throw UndefinedError("roots of the zero polynomial");
  const PrimeField& f = poly.domain();
  if (poly.degree() == 0) return {};
  auto fm = poly.monic();
  auto x = DensePoly<PrimeField>(f, {0, 1});
  // product of the distinct linear factors
  auto xp = pow_mod(x, f.prime(), fm);
  auto g = gcd(fm, xp - x);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::uint64_t> out;
  split_roots(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible_mod_p(const DensePoly<PrimeField>& poly) {
  if (poly.degree() < 1) return false;
  const PrimeField& f = poly.domain();
  auto fm = poly.monic();
  auto x = DensePoly<PrimeField>(f, {0, 1});
  auto power = x;
  for (int i = 1; i <= fm.degree() / 2; ++i) {
    power = pow_mod(power, f.prime(), fm);
    if (gcd(fm, power - x).degree() > 0) return false;
  }
  return true;
}

namespace {

mpz_class eval_mod(const std::vector<mpz_class>& c, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * x + c[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

}  // namespace

std::vector<mpq_class> rational_roots(const DensePoly<IntegerRing>& input) {
  if (input.is_zero()) throw UndefinedError("rational roots of the zero polynomial");
  std::vector<mpq_class> roots;
  std::vector<mpz_class> c = input.coeffs();
  // strip x^k
  std::size_t low = 0;
  while (low < c.size() && sgn(c[low]) == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  DensePoly<IntegerRing> f(IntegerRing{}, c);
  if (f.degree() >= 1) {
    auto sqf = exact_quotient(primitive_part(f), subresultant_gcd(f, f.derivative()));
    sqf = primitive_part(sqf);
    const auto& sc = sqf.coeffs();
    // every root a/b has b | lc and a | c0, so lc * root is an integer of size <= |lc * c0|
    mpz_class bound = abs(sc.back() * sc.front());
    std::uint64_t p = 0;
    PrimeField field;
    DensePoly<PrimeField> fp;
    for (std::uint64_t cand : primes_below(1ULL << 61, 64)) {
      PrimeField trial(cand);
      if (trial.from_mpz(sc.back()) == 0) continue;
      std::vector<std::uint64_t> red;
      for (const auto& x : sc) red.push_back(trial.from_mpz(x));
      DensePoly<PrimeField> candidate(trial, red);
      if (gcd(candidate, candidate.derivative()).degree() != 0) continue;
      p = cand;
      field = trial;
      fp = candidate;
      break;
    }
    if (p == 0) throw InternalConsistencyError("no good reduction prime for rational root search");
    std::vector<mpz_class> deriv_c = sqf.derivative().coeffs();
    for (std::uint64_t r0 : roots_mod_p(fp)) {
      mpz_class modulus(static_cast<unsigned long>(p));
      mpz_class r(static_cast<unsigned long>(r0));
      while (modulus <= 2 * bound) {
        modulus *= modulus;
        mpz_class fv = eval_mod(sc, r, modulus);
        mpz_class dv = eval_mod(deriv_c, r, modulus);
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), modulus.get_mpz_t()) == 0) break;
        r = r - fv * inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
      }
      mpz_class scaled = r * sc.back();
      mpz_mod(scaled.get_mpz_t(), scaled.get_mpz_t(), modulus.get_mpz_t());
      if (scaled * 2 > modulus) scaled -= modulus;
      mpq_class candidate(scaled, sc.back());
      candidate.canonicalize();
      mpq_class value = 0;
      for (std::size_t i = sc.size(); i-- > 0;) value = value * candidate + sc[i];
      if (sgn(value) == 0) roots.push_back(candidate);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<mpq_class> rational_roots(const DensePoly<RationalField>& f) {
  if (f.is_zero()) throw UndefinedError("rational roots of the zero polynomial");
  mpz_class lcm = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : f.coeffs()) {
    mpq_class scaled = c * lcm;
    ints.push_back(scaled.get_num());
  }
  return rational_roots(DensePoly<IntegerRing>(IntegerRing{}, std::move(ints)));
}

}  // namespace k3disc
