#include <gtest/gtest.h>

#include <random>

#include "k3disc/kodaira.hpp"

using namespace k3disc;

namespace {

const PrimeField kField(kDefaultPrime);
constexpr int kInf = kInfiniteOrder;

KodairaType type(const char* name) { return KodairaType::parse(name); }

auto nonzero_draw(std::mt19937_64& rng, const PrimeField& f) {
  return [&rng, f]() {
    std::uniform_int_distribution<std::uint64_t> el(1, f.prime() - 1);
    return el(rng);
  };
}

FamilyPoint<PrimeField> random_point(std::mt19937_64& rng) {
  FamilyPoint<PrimeField> pt(kField);
  auto draw = nonzero_draw(rng, kField);
  for (auto& x : pt.t) x = draw();
  return pt;
}

}  // namespace

TEST(Classify, TableRows) {
  EXPECT_EQ(classify({0, 0, 0}), type("I0"));
  EXPECT_EQ(classify({0, 0, 1}), type("I1"));
  EXPECT_EQ(classify({0, 0, 2}), type("I2"));
  EXPECT_EQ(classify({1, 1, 2}), type("II"));
  EXPECT_EQ(classify({3, 1, 2}), type("II"));
  EXPECT_EQ(classify({1, 2, 3}), type("III"));
  EXPECT_EQ(classify({1, 5, 3}), type("III"));
  EXPECT_EQ(classify({2, 2, 4}), type("IV"));
  EXPECT_EQ(classify({5, 2, 4}), type("IV"));
  EXPECT_EQ(classify({2, 3, 6}), type("I0*"));
  EXPECT_EQ(classify({3, 3, 6}), type("I0*"));
  EXPECT_EQ(classify({2, 4, 6}), type("I0*"));
  EXPECT_EQ(classify({2, 3, 9}), type("I3*"));
  EXPECT_EQ(classify({3, 4, 8}), type("IV*"));
  EXPECT_EQ(classify({3, 5, 9}), type("III*"));
  EXPECT_EQ(classify({4, 5, 10}), type("II*"));
  EXPECT_EQ(classify({kInf, 5, 10}), type("II*"));
  EXPECT_EQ(classify({4, 6, 12}), type("NonMinimal"));
  EXPECT_EQ(classify({4, 7, 12}), type("NonMinimal"));
  EXPECT_EQ(classify({kInf, 6, 12}), type("NonMinimal"));
  EXPECT_EQ(classify({0, 3, 0}), type("I0"));
}

TEST(Classify, InconsistentTriplesRejected) {
  EXPECT_THROW(classify({1, 1, 3}), InconsistentOrdersError);  // d must equal min(3, 2)
  EXPECT_THROW(classify({0, 1, 1}), InconsistentOrdersError);
  EXPECT_THROW(classify({2, 3, 5}), InconsistentOrdersError);  // below the bound
  EXPECT_THROW(classify({0, 0, kInf}), InconsistentOrdersError);
}

TEST(Classify, EulerNumberEqualsDiscriminantOrder) {
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 8; ++b) {
      for (int d = 0; d <= 16; ++d) {
        KodairaType t;
        try {
          t = classify({a, b, d});
        } catch (const InconsistentOrdersError&) {
          continue;
        }
        if (t.tag == KodairaTag::NonMinimal) {
          EXPECT_FALSE(t.euler().has_value());
          continue;
        }
        EXPECT_EQ(t.euler(), d) << a << "," << b << "," << d;
      }
    }
  }
}

TEST(KodairaNames, ParseRoundTrip) {
  for (const char* n : {"I0", "I1", "I17", "II", "III", "IV", "I0*", "I4*", "IV*", "III*", "II*", "NonMinimal"}) {
    EXPECT_EQ(type(n).name(), n);
  }
  EXPECT_EQ(type("II*").euler(), 10);
  EXPECT_EQ(type("I4*").euler(), 10);
  EXPECT_THROW(type("V"), ParseError);
  EXPECT_THROW(type("I01"), ParseError);
}

TEST(Scan, RandomPointsHaveTypeIIStarAtInfinity) {
  std::mt19937_64 rng(109);
  for (int i = 0; i < 300; ++i) {
    auto scan = scan_fibers(weierstrass(random_point(rng)));
    EXPECT_EQ(scan.infinity().type, type("II*"));
    EXPECT_EQ(scan.infinity().orders, (OrderTriple{4, 5, 10}));
    int sum = scan.residual;
    for (std::size_t j = 0; j + 1 < scan.places.size(); ++j) sum += scan.places[j].orders.d;
    EXPECT_EQ(sum, kDegreeHInU);
    for (std::size_t j = 0; j + 1 < scan.places.size(); ++j) EXPECT_EQ(scan.places[j].type, type("I1"));
  }
}

TEST(Scan, VanishingLeadingParameterKeepsIIStar) {
  FamilyPoint<PrimeField> pt(kField);
  pt[42] = 5;
  auto scan = scan_fibers(weierstrass(pt));
  EXPECT_EQ(scan.infinity().orders, (OrderTriple{kInf, 5, 10}));
  EXPECT_EQ(scan.infinity().type, type("II*"));
}

TEST(Scan, ConstructedD1PointGivesI2) {
  std::mt19937_64 rng(113);
  for (int i = 0; i < 50; ++i) {
    auto c = construct_d1_point(kField, nonzero_draw(rng, kField));
    auto wd = weierstrass(c.point);
    auto scan = scan_fibers(wd);
    auto it = std::find_if(scan.places.begin(), scan.places.end(), [&](const auto& p) { return p.u && *p.u == c.u0; });
    ASSERT_NE(it, scan.places.end());
    EXPECT_EQ(it->type, type("I2"));
    EXPECT_EQ(k_value(wd), 0u);
    EXPECT_NE(r_value(wd), 0u);
  }
}

TEST(Scan, ConstructedD1PointOverRationals) {
  std::mt19937_64 rng(127);
  std::uniform_int_distribution<int> el(1, 9);
  auto draw = [&]() { return mpq_class(el(rng)); };
  auto c = construct_d1_point(RationalField{}, draw);
  auto wd = weierstrass(c.point);
  auto scan = scan_fibers(wd);
  auto it = std::find_if(scan.places.begin(), scan.places.end(), [&](const auto& p) { return p.u && *p.u == c.u0; });
  ASSERT_NE(it, scan.places.end());
  EXPECT_EQ(it->type, type("I2"));
  EXPECT_EQ(k_value(wd), 0);
  EXPECT_NE(r_value(wd), 0);
}

TEST(Scan, ConstructedD2PointGivesII) {
  std::mt19937_64 rng(131);
  for (int i = 0; i < 50; ++i) {
    auto c = construct_d2_point(kField, nonzero_draw(rng, kField));
    auto wd = weierstrass(c.point);
    auto scan = scan_fibers(wd);
    ASSERT_TRUE(scan.places.front().u.has_value());
    EXPECT_EQ(*scan.places.front().u, 0u);
    EXPECT_EQ(scan.places.front().orders, (OrderTriple{1, 1, 2}));
    EXPECT_EQ(scan.places.front().type, type("II"));
    EXPECT_EQ(r_value(wd), 0u);
    EXPECT_EQ(k_value(wd), 0u);
  }
}

TEST(Scan, EulerSumOverSplittingPrime) {
  FamilyPoint<RationalField> pt;
  pt[28] = -3;  // h = 27 (u^14 - 4)
  auto p = find_splitting_prime(pt);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(*p, 631u);
  auto scan = scan_fibers(weierstrass(reduce_point(pt, PrimeField(*p))));
  EXPECT_EQ(scan.residual, 0);
  EXPECT_EQ(scan.places.size(), 15u);
  EXPECT_EQ(scan.euler_sum(), 24);
  // over the rationals the roots are irrational: everything lands in the residual
  auto q = scan_fibers(weierstrass(pt));
  EXPECT_EQ(q.residual, 14);
  EXPECT_EQ(q.euler_sum(), 10);
}

TEST(Scan, NonRdpPointIsNonMinimal) {
  auto pt = nonrdp_param(RationalField{}, mpq_class(2), mpq_class(1));
  auto scan = scan_fibers(weierstrass(pt));
  // h = (u - 1)^12 (32 + 27 (u + 6)^2): only u = 1 is rational
  ASSERT_EQ(scan.places.size(), 2u);
  EXPECT_EQ(*scan.places[0].u, 1);
  EXPECT_EQ(scan.places[0].orders, (OrderTriple{4, 6, 12}));
  EXPECT_EQ(scan.places[0].type, type("NonMinimal"));
  EXPECT_EQ(scan.residual, 2);
}

TEST(Scan, JsonShape) {
  FamilyPoint<RationalField> pt;
  pt[4] = 1;
  auto j = scan_to_json(scan_fibers(weierstrass(pt)), RationalField{});
  EXPECT_EQ(j["places"].size(), 2u);
  EXPECT_EQ(j["places"][0]["place"], "0");
  // g2 = u^4, g3 = u^7: the b = 0 end of the non-RDP locus
  EXPECT_EQ(j["places"][0]["orders"], nlohmann::json::parse("[4, 7, 12]"));
  EXPECT_EQ(j["places"][0]["type"], "NonMinimal");
  EXPECT_TRUE(j["places"][0]["euler"].is_null());
  EXPECT_EQ(j["places"][1]["place"], "infinity");
  EXPECT_EQ(j["residual"], 2);
}
