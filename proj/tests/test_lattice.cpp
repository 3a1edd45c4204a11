#include <gtest/gtest.h>

#include <random>

#include "k3disc/errors.hpp"
#include "k3disc/lattice.hpp"

using namespace k3disc;

namespace {

GramMatrix from_ints(std::initializer_list<std::initializer_list<int>> rows) {
  GramMatrix g;
  for (const auto& r : rows) {
    std::vector<mpz_class> row;
    for (int v : r) row.emplace_back(v);
    g.push_back(std::move(row));
  }
  return g;
}

}  // namespace

TEST(Diagram, SingleNode) {
  DynkinDiagram d{1, {}};
  EXPECT_EQ(gram_from_diagram(d), from_ints({{-2}}));
}

TEST(Diagram, TwoJoinedNodes) {
  auto d = DynkinDiagram::parse("2: 0-1");
  EXPECT_EQ(gram_from_diagram(d), from_ints({{-2, 1}, {1, -2}}));
}

TEST(Diagram, T237Adjacency) {
  auto d = t237_diagram();
  ASSERT_EQ(d.nodes, 10);
  auto g = gram_from_diagram(d);
  std::vector<int> valence(10, 0);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(g[i][i], -2);
    for (int j = 0; j < 10; ++j) {
      EXPECT_EQ(g[i][j], g[j][i]);
      if (i != j && g[i][j] == 1) ++valence[i];
    }
  }
  // one trivalent node (third on the path), three leaves
  EXPECT_EQ(valence[2], 3);
  EXPECT_EQ(std::count(valence.begin(), valence.end(), 1), 3);
  EXPECT_EQ(g[2][9], 1);
  EXPECT_EQ(g[8][9], 0);
}

TEST(Diagram, ParseRoundTrip) {
  auto d = t237_diagram();
  auto again = DynkinDiagram::parse(d.to_string());
  EXPECT_EQ(again.nodes, d.nodes);
  EXPECT_EQ(again.edges, d.edges);
  auto commented = DynkinDiagram::parse("# a comment\n3\n0-1 # inline\n1-2\n");
  EXPECT_EQ(commented.edges.size(), 2u);
}

TEST(Diagram, Errors) {
  EXPECT_THROW(gram_from_diagram(DynkinDiagram::parse("2: 1-1")), InvalidDiagramError);
  EXPECT_THROW(gram_from_diagram(DynkinDiagram::parse("2: 0-2")), InvalidDiagramError);
  EXPECT_THROW(gram_from_diagram(DynkinDiagram::parse("2: 0-1, 1-0")), InvalidDiagramError);
  EXPECT_THROW(DynkinDiagram::parse(""), ParseError);
  EXPECT_THROW(DynkinDiagram::parse("x: 0-1"), ParseError);
  EXPECT_THROW(DynkinDiagram::parse("3: 0-"), ParseError);
  EXPECT_THROW(DynkinDiagram::parse("3: 0-1a"), ParseError);
}

TEST(Lattice, T237IsEvenUnimodularOfSignature1_9) {
  auto inv = lattice_invariants(gram_from_diagram(t237_diagram()));
  EXPECT_EQ(inv.determinant, -1);
  EXPECT_EQ(inv.positive, 1);
  EXPECT_EQ(inv.negative, 9);
  EXPECT_EQ(inv.radical, 0);
  EXPECT_TRUE(inv.even);
}

TEST(Lattice, E8IsNegativeDefinite) {
  auto inv = lattice_invariants(gram_from_diagram(e8_diagram()));
  EXPECT_EQ(inv.determinant, 1);
  EXPECT_EQ(inv.positive, 0);
  EXPECT_EQ(inv.negative, 8);
  EXPECT_TRUE(inv.even);
}

TEST(Lattice, AffineE8IsDegenerate) {
  // T_{2,3,6}: the extended E8 diagram, with a one-dimensional radical
  auto inv = lattice_invariants(gram_from_diagram(branched_path(8, 2)));
  EXPECT_EQ(inv.determinant, 0);
  EXPECT_EQ(inv.positive, 0);
  EXPECT_EQ(inv.negative, 8);
  EXPECT_EQ(inv.radical, 1);
}

TEST(Lattice, AnDeterminants) {
  // A_n with the -2 convention: det = (-1)^n (n + 1)
  for (int n = 1; n <= 8; ++n) {
    DynkinDiagram d{n, {}};
    for (int i = 0; i + 1 < n; ++i) d.edges.emplace_back(i, i + 1);
    auto inv = lattice_invariants(gram_from_diagram(d));
    EXPECT_EQ(inv.determinant, (n % 2 ? -1 : 1) * (n + 1));
    EXPECT_EQ(inv.negative, n);
  }
}

TEST(Lattice, HyperbolicPlaneNeedsOffDiagonalPivot) {
  auto inv = lattice_invariants(from_ints({{0, 1}, {1, 0}}));
  EXPECT_EQ(inv.determinant, -1);
  EXPECT_EQ(inv.positive, 1);
  EXPECT_EQ(inv.negative, 1);
  EXPECT_TRUE(inv.even);
  auto odd = lattice_invariants(from_ints({{1, 0, 0}, {0, 0, 0}, {0, 0, -3}}));
  EXPECT_EQ(odd.positive, 1);
  EXPECT_EQ(odd.negative, 1);
  EXPECT_EQ(odd.radical, 1);
  EXPECT_FALSE(odd.even);
}

TEST(Lattice, NonSymmetricRejected) {
  EXPECT_THROW(lattice_invariants(from_ints({{0, 1}, {2, 0}})), InvalidDiagramError);
}

TEST(Lattice, InvariantsStableUnderUnimodularChange) {
  std::mt19937_64 rng(20261018);
  auto g = gram_from_diagram(t237_diagram());
  auto base = lattice_invariants(g);
  for (int trial = 0; trial < 20; ++trial) {
    auto u = random_unimodular(10, rng);
    auto du = determinant(u);
    ASSERT_TRUE(du == 1 || du == -1);
    auto inv = lattice_invariants(congruent(g, u));
    EXPECT_EQ(inv.determinant, base.determinant);
    EXPECT_EQ(inv.positive, base.positive);
    EXPECT_EQ(inv.negative, base.negative);
    EXPECT_EQ(inv.even, base.even);
  }
}
