#pragma once

#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace k3disc {

/// Simple graph on nodes 0..nodes-1.
struct DynkinDiagram {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;

  /// Edge-list text: a node count followed by edges "a-b", separated by
  /// whitespace or commas, e.g. "3: 0-1, 1-2". Lines starting with # are comments.
  static DynkinDiagram parse(std::string_view text);
  std::string to_string() const;
};

using GramMatrix = std::vector<std::vector<mpz_class>>;

/// G[i][i] = -2, G[i][j] = 1 on edges and 0 otherwise. Self-loops, repeated
/// edges and out-of-range nodes raise InvalidDiagramError.
GramMatrix gram_from_diagram(const DynkinDiagram& d);

/// A path of `length` nodes with one extra node attached to path node `branch` (0-based).
DynkinDiagram branched_path(int length, int branch);
/// T_{2,3,7}: path of 9 nodes, extra node on the third.
DynkinDiagram t237_diagram();
/// E8 = T_{2,3,5}: path of 7 nodes, extra node on the third.
DynkinDiagram e8_diagram();

struct LatticeInvariants {
  mpz_class determinant;
  int positive = 0;
  int negative = 0;
  int radical = 0;  // rank deficiency (nonzero only for degenerate forms)
  bool even = false;
};

/// Exact determinant (fraction-free), signature by rational congruence
/// diagonalization, and parity of the diagonal.
LatticeInvariants lattice_invariants(const GramMatrix& g);

mpz_class determinant(const GramMatrix& m);

/// Random matrix in GL_n(Z) built from elementary row operations and swaps.
GramMatrix random_unimodular(int n, std::mt19937_64& rng, int steps = 40);
/// U^T G U.
GramMatrix congruent(const GramMatrix& g, const GramMatrix& u);

std::string gram_to_string(const GramMatrix& g);

}  // namespace k3disc
