#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "k3disc/poly.hpp"

namespace k3disc::testing {

/// Random sparse integer polynomial with small coefficients.
inline MultiPoly<IntegerRing> random_int_poly(const RingPtr<IntegerRing>& ring, std::mt19937_64& rng, int max_terms = 6,
                                              int max_exp = 3, int coeff_range = 9) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::vector<MultiPoly<IntegerRing>::Term> terms;
  int count = nterms(rng);
  for (int i = 0; i < count; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < ring->nvars(); ++v) m.set(v, static_cast<std::uint32_t>(exp(rng)));
    terms.push_back({m, mpz_class(coeff(rng))});
  }
  return MultiPoly<IntegerRing>::from_terms(ring, std::move(terms));
}

inline MultiPoly<IntegerRing> random_nonzero_int_poly(const RingPtr<IntegerRing>& ring, std::mt19937_64& rng, int max_terms = 6,
                                                      int max_exp = 3) {
  while (true) {
    auto p = random_int_poly(ring, rng, max_terms, max_exp);
    if (!p.is_zero()) return p;
  }
}

inline MultiPoly<IntegerRing> parse_z(const RingPtr<IntegerRing>& ring, const std::string& text) { return parse_poly(ring, text); }

}  // namespace k3disc::testing
