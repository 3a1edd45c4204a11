#include <gtest/gtest.h>

#include <random>

#include "k3disc/dense.hpp"
#include "k3disc/poly.hpp"
#include "support.hpp"

using namespace k3disc;
using k3disc::testing::parse_z;
using k3disc::testing::random_int_poly;
using k3disc::testing::random_nonzero_int_poly;

namespace {

constexpr int kIterations = 200;

RingPtr<IntegerRing> xyz() { return make_ring(IntegerRing{}, {"x", "y", "z"}); }

}  // namespace

TEST(PolyArith, DifferenceOfSquares) {
  auto r = make_ring(IntegerRing{}, {"x"});
  auto x = MultiPoly<IntegerRing>::variable(r, "x");
  auto one = MultiPoly<IntegerRing>::from_int(r, 1);
  EXPECT_EQ(to_string((x + one) * (x - one)), "x^2 - 1");
}

TEST(PolyArith, AdditiveIdentity) {
  auto r = xyz();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto p = random_int_poly(r, rng);
    EXPECT_EQ(p + MultiPoly<IntegerRing>(r), p);
  }
}

// Oracle: binomial expansion of (u - b)^6 (u + 6b), computed with plain integers.
TEST(PolyArith, NonRdpSexticTimesLinearMatchesBinomialOracle) {
  auto r = make_ring(IntegerRing{}, {"u", "b"});
  auto u = MultiPoly<IntegerRing>::variable(r, "u");
  auto b = MultiPoly<IntegerRing>::variable(r, "b");
  auto six = MultiPoly<IntegerRing>::from_int(r, 6);
  auto product = (u - b).pow(6) * (u + six * b);

  long binom[7] = {1, 6, 15, 20, 15, 6, 1};
  // coefficient of u^(7-k) b^k
  long expected[8] = {0};
  for (int k = 0; k <= 6; ++k) {
    long c = binom[k] * ((k % 2) ? -1 : 1);  // u^(6-k) (-b)^k
    expected[k] += c;                        // times u
    expected[k + 1] += 6 * c;                // times 6b
  }
  std::vector<MultiPoly<IntegerRing>::Term> terms;
  for (int k = 0; k <= 7; ++k) {
    Monomial m;
    m.set(0, static_cast<std::uint32_t>(7 - k));
    m.set(1, static_cast<std::uint32_t>(k));
    terms.push_back({m, mpz_class(expected[k])});
  }
  EXPECT_EQ(product, MultiPoly<IntegerRing>::from_terms(r, terms));
  EXPECT_EQ(product, parse_z(r, "u^7 - 21*b^2*u^5 + 70*b^3*u^4 - 105*b^4*u^3 + 84*b^5*u^2 - 35*b^6*u + 6*b^7"));
  EXPECT_EQ(expected[1], 0);  // no u^6 term
}

TEST(PolyArith, MismatchedContextsThrow) {
  auto r1 = make_ring(IntegerRing{}, {"x"});
  auto r2 = make_ring(IntegerRing{}, {"y"});
  auto x = MultiPoly<IntegerRing>::variable(r1, "x");
  auto y = MultiPoly<IntegerRing>::variable(r2, "y");
  EXPECT_THROW(x + y, ContextError);
  EXPECT_THROW(x * y, ContextError);
  EXPECT_THROW(MultiPoly<IntegerRing>::variable(r1, "q"), ContextError);
}

TEST(PolyEval, PointEvaluation) {
  auto r = make_ring(IntegerRing{}, {"x"});
  auto p = parse_z(r, "x^2 - 1");
  auto v = evaluate(p, {{"x", mpz_class(3)}});
  EXPECT_TRUE(v.is_constant());
  EXPECT_EQ(v.constant_value(), 8);
}

TEST(PolyEval, WeightedCurveThroughGenericPoint) {
  auto r = xyz();
  auto p = parse_z(r, "x^7 + y^3 + z^2");
  EXPECT_TRUE(evaluate(p, {{"x", mpz_class(0)}, {"y", mpz_class(-1)}, {"z", mpz_class(1)}}).is_zero());
}

TEST(PolyEval, UnknownVariableThrows) {
  auto r = make_ring(IntegerRing{}, {"x"});
  auto p = parse_z(r, "x + 1");
  EXPECT_THROW(evaluate(p, {{"w", mpz_class(1)}}), ContextError);
}

TEST(PolyEval, SubstitutionIsRingHomomorphism) {
  auto r = xyz();
  std::mt19937_64 rng(7);
  for (int i = 0; i < kIterations / 4; ++i) {
    auto p = random_int_poly(r, rng, 4, 2);
    auto q = random_int_poly(r, rng, 4, 2);
    std::map<std::string, MultiPoly<IntegerRing>> sigma{{"x", random_int_poly(r, rng, 3, 2)}, {"z", random_int_poly(r, rng, 3, 2)}};
    EXPECT_EQ(substitute(p * q, sigma), substitute(p, sigma) * substitute(q, sigma));
    EXPECT_EQ(substitute(p + q, sigma), substitute(p, sigma) + substitute(q, sigma));
  }
}

TEST(PolyDiv, ExactQuotient) {
  auto r = make_ring(IntegerRing{}, {"x"});
  EXPECT_EQ(exact_div(parse_z(r, "x^2 - 1"), parse_z(r, "x - 1")), parse_z(r, "x + 1"));
  EXPECT_THROW(exact_div(parse_z(r, "x^2 + 1"), parse_z(r, "x - 1")), NotDivisibleError);
  EXPECT_THROW(exact_div(parse_z(r, "x"), MultiPoly<IntegerRing>(r)), UndefinedError);
}

TEST(PolyDiv, MultiplicityBookkeeping) {
  auto r = make_ring(IntegerRing{}, {"a", "b", "s"});
  auto line = parse_z(r, "a - b");
  auto s = parse_z(r, "s + a*b + 1");
  auto p = line.pow(4) * s;
  auto cur = p;
  for (int i = 0; i < 4; ++i) cur = exact_div(cur, line);
  EXPECT_EQ(cur, s);
  EXPECT_FALSE(try_exact_div(cur, line).has_value());
}

TEST(PolyDiv, ExactDivOfProductRecoversFactor) {
  auto r = xyz();
  std::mt19937_64 rng(11);
  for (int i = 0; i < kIterations; ++i) {
    auto a = random_int_poly(r, rng);
    auto b = random_nonzero_int_poly(r, rng);
    EXPECT_EQ(exact_div(a * b, b), a);
  }
}

TEST(PolyDeriv, Examples) {
  auto r = make_ring(IntegerRing{}, {"x", "c", "u"});
  EXPECT_EQ(derivative(parse_z(r, "x^3"), "x"), parse_z(r, "3*x^2"));
  EXPECT_EQ(derivative(parse_z(r, "u^7 + c"), "u"), parse_z(r, "7*u^6"));
  auto h = parse_z(r, "4*x^3") + parse_z(r, "27").scaled(1) * parse_z(r, "x + c").pow(2);
  EXPECT_EQ(derivative(h, "x"), parse_z(r, "12*x^2") + parse_z(r, "54*x + 54*c"));
}

TEST(PolyDeriv, LeibnizRule) {
  auto r = xyz();
  std::mt19937_64 rng(13);
  for (int i = 0; i < kIterations; ++i) {
    auto p = random_int_poly(r, rng);
    auto q = random_int_poly(r, rng);
    EXPECT_EQ(derivative(p * q, "y"), derivative(p, "y") * q + p * derivative(q, "y"));
  }
}

TEST(PolyCanonical, AddSubtractAndUnit) {
  auto r = xyz();
  std::mt19937_64 rng(17);
  auto one = MultiPoly<IntegerRing>::from_int(r, 1);
  for (int i = 0; i < kIterations; ++i) {
    auto p = random_int_poly(r, rng);
    auto q = random_int_poly(r, rng);
    auto back = p + q - q;
    ASSERT_EQ(back.num_terms(), p.num_terms());
    EXPECT_EQ(back, p);
    EXPECT_EQ(p * one, p);
    for (const auto& t : (p * q).terms()) EXPECT_NE(sgn(t.coeff), 0);
  }
}

TEST(PolyModular, ReductionCommutesWithArithmetic) {
  auto r = xyz();
  auto rp = make_ring(PrimeField(1000003), {"x", "y", "z"});
  std::mt19937_64 rng(19);
  for (int i = 0; i < kIterations; ++i) {
    auto p = random_int_poly(r, rng, 6, 3, 5000000);
    auto q = random_int_poly(r, rng, 6, 3, 5000000);
    EXPECT_EQ(reduce_mod(p * q, rp), reduce_mod(p, rp) * reduce_mod(q, rp));
    EXPECT_EQ(reduce_mod(p - q, rp), reduce_mod(p, rp) - reduce_mod(q, rp));
  }
}

TEST(PolyText, RoundTripIsBitExact) {
  auto r = xyz();
  std::mt19937_64 rng(23);
  for (int i = 0; i < kIterations; ++i) {
    auto p = random_int_poly(r, rng);
    auto text = to_string(p);
    auto back = parse_poly(r, text);
    EXPECT_EQ(back, p);
    EXPECT_EQ(to_string(back), text);
  }
}

TEST(PolyText, WhitespaceInsensitiveAndErrors) {
  auto r = make_ring(IntegerRing{}, {"b", "u"});
  EXPECT_EQ(to_string(parse_poly(r, "  -21 * b ^2*u^5+70*b^3 *u^4 ")), "70*b^3*u^4 - 21*b^2*u^5");
  EXPECT_EQ(to_string(parse_poly(r, "0")), "0");
  EXPECT_EQ(to_string(parse_poly(r, "-1 + u - u")), "-1");
  EXPECT_THROW(parse_poly(r, "u +"), ParseError);
  EXPECT_THROW(parse_poly(r, "u u"), ParseError);
  EXPECT_THROW(parse_poly(r, "q^2"), ContextError);
  EXPECT_THROW(parse_poly(r, "1/2*u"), ParseError);
  auto rq = make_ring(RationalField{}, {"u"});
  EXPECT_EQ(to_string(parse_poly(rq, "1/2*u - 3/4")), "1/2*u - 3/4");
}

TEST(PolyText, GrevlexOrdering) {
  auto r = make_ring(IntegerRing{}, {"x", "y", "z"});
  // degree first, then smaller exponent in the last variable wins
  EXPECT_EQ(to_string(parse_z(r, "z^2 + x*y + y^2 + x^2 + x*z + y*z")), "x^2 + x*y + y^2 + x*z + y*z + z^2");
  EXPECT_EQ(to_string(parse_z(r, "1 + x + x^3")), "x^3 + x + 1");
}

TEST(UnivariateGcd, Examples) {
  auto r = make_ring(IntegerRing{}, {"x"});
  EXPECT_EQ(univariate_gcd(parse_z(r, "x^2 - 1"), parse_z(r, "x - 1"), "x"), parse_z(r, "x - 1"));
  EXPECT_EQ(univariate_gcd(parse_z(r, "x^2"), parse_z(r, "x^3"), "x"), parse_z(r, "x^2"));
  EXPECT_EQ(univariate_gcd(parse_z(r, "6*x^2 - 6"), parse_z(r, "4*x + 4"), "x"), parse_z(r, "x + 1"));
  EXPECT_THROW(univariate_gcd(MultiPoly<IntegerRing>(r), MultiPoly<IntegerRing>(r), "x"), UndefinedError);
  auto rp = make_ring(PrimeField(101), {"x"});
  EXPECT_EQ(univariate_gcd(parse_poly(rp, "3*x^2 - 3"), parse_poly(rp, "2*x - 2"), "x"), parse_poly(rp, "x - 1"));
}

TEST(UnivariateGcd, SubresultantMatchesFieldGcdOnRandomCommonFactors) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> c(-20, 20);
  for (int i = 0; i < kIterations; ++i) {
    auto rand_poly = [&](int deg) {
      std::vector<mpz_class> v;
      for (int k = 0; k <= deg; ++k) v.emplace_back(c(rng));
      if (sgn(v.back()) == 0) v.back() = 1;
      return DensePoly<IntegerRing>(IntegerRing{}, v);
    };
    auto common = primitive_part(rand_poly(2));
    auto a = common * rand_poly(3);
    auto b = common * rand_poly(2);
    auto g = gcd(a, b);
    // g must be divisible by the planted factor and divide both inputs
    EXPECT_NO_THROW(exact_quotient(g, common));
    EXPECT_NO_THROW(exact_quotient(a, g));
    EXPECT_NO_THROW(exact_quotient(b, g));
  }
}

TEST(DenseRoots, RootsModPAndRationalRoots) {
  PrimeField f(1000003);
  // (x - 2)(x - 5)^2 (x^2 + 1): 1000003 = 3 mod 4, so x^2 + 1 has no roots
  auto lin = [&](std::uint64_t a) { return DensePoly<PrimeField>::linear_root(f, a); };
  auto p = lin(2) * lin(5) * lin(5) * DensePoly<PrimeField>(f, {1, 0, 1});
  EXPECT_EQ(roots_mod_p(p), (std::vector<std::uint64_t>{2, 5}));
  EXPECT_EQ(order_at(p, std::uint64_t{5}), 2);
  EXPECT_EQ(order_at(p, std::uint64_t{3}), 0);

  // 6x^3 - 11x^2 + 6x - 1 = (x - 1)(2x - 1)(3x - 1), times x^2 + 7
  DensePoly<IntegerRing> q(IntegerRing{}, {-1, 6, -11, 6});
  q = q * DensePoly<IntegerRing>(IntegerRing{}, {7, 0, 1});
  auto roots = rational_roots(q);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], mpq_class(1, 3));
  EXPECT_EQ(roots[1], mpq_class(1, 2));
  EXPECT_EQ(roots[2], mpq_class(1));
  EXPECT_TRUE(rational_roots(DensePoly<IntegerRing>(IntegerRing{}, {2, 0, 1})).empty());
  auto big = DensePoly<IntegerRing>(IntegerRing{}, {mpz_class("-123456789012345678901234567890"), mpz_class("987654321")});
  auto big_roots = rational_roots(big);
  ASSERT_EQ(big_roots.size(), 1u);
  EXPECT_EQ(big_roots[0] * mpq_class(mpz_class("987654321")), mpq_class(mpz_class("123456789012345678901234567890")));
}

TEST(DenseRoots, IrreducibilityModP) {
  PrimeField f(1000003);
  EXPECT_TRUE(is_irreducible_mod_p(DensePoly<PrimeField>(f, {1, 0, 1})));
  EXPECT_FALSE(is_irreducible_mod_p(DensePoly<PrimeField>(f, {f.from_int(-1), 0, 1})));
  // (x^2 + 1)^2 has no roots but is reducible
  auto sq = DensePoly<PrimeField>(f, {1, 0, 1}) * DensePoly<PrimeField>(f, {1, 0, 1});
  EXPECT_FALSE(is_irreducible_mod_p(sq));
}
