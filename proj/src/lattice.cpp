#include "k3disc/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "k3disc/errors.hpp"

namespace k3disc {

DynkinDiagram DynkinDiagram::parse(std::string_view text) {
  std::string cleaned;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == ':') c = ' ';
    }
    cleaned += line + " ";
  }
  std::istringstream in(cleaned);
  DynkinDiagram d;
  std::string token;
  if (!(in >> token)) throw ParseError("empty diagram");
  try {
    std::size_t used = 0;
    d.nodes = std::stoi(token, &used);
    if (used != token.size() || d.nodes < 0) throw std::invalid_argument("count");
  } catch (const std::logic_error&) {
    throw ParseError("diagram must start with a node count, got '" + token + "'");
  }
  while (in >> token) {
    auto dash = token.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == token.size()) throw ParseError("bad edge '" + token + "'");
    try {
      std::size_t ua = 0, ub = 0;
      std::string sa = token.substr(0, dash), sb = token.substr(dash + 1);
      int a = std::stoi(sa, &ua);
      int b = std::stoi(sb, &ub);
      if (ua != sa.size() || ub != sb.size()) throw std::invalid_argument("edge");
      d.edges.emplace_back(a, b);
    } catch (const std::logic_error&) {
      throw ParseError("bad edge '" + token + "'");
    }
  }
  return d;
}

std::string DynkinDiagram::to_string() const {
  std::string out = std::to_string(nodes) + ":";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out += (i ? ", " : " ") + std::to_string(edges[i].first) + "-" + std::to_string(edges[i].second);
  }
  return out;
}

GramMatrix gram_from_diagram(const DynkinDiagram& d) {
  if (d.nodes < 0) throw InvalidDiagramError("negative node count");
  const auto n = static_cast<std::size_t>(d.nodes);
  GramMatrix g(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = -2;
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : d.edges) {
    if (a == b) throw InvalidDiagramError("self-loop at node " + std::to_string(a));
    if (a < 0 || b < 0 || a >= d.nodes || b >= d.nodes) throw InvalidDiagramError("edge " + std::to_string(a) + "-" + std::to_string(b) + " leaves the diagram");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw InvalidDiagramError("repeated edge " + std::to_string(a) + "-" + std::to_string(b));
    g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    g[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
  }
  return g;
}

DynkinDiagram branched_path(int length, int branch) {
  DynkinDiagram d;
  d.nodes = length + 1;
  for (int i = 0; i + 1 < length; ++i) d.edges.emplace_back(i, i + 1);
  d.edges.emplace_back(branch, length);
  return d;
}

DynkinDiagram t237_diagram() { return branched_path(9, 2); }
DynkinDiagram e8_diagram() { return branched_path(7, 2); }

mpz_class determinant(const GramMatrix& input) {
  GramMatrix m = input;
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(m[r], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

LatticeInvariants lattice_invariants(const GramMatrix& g) {
  const std::size_t n = g.size();
  for (const auto& row : g) {
    if (row.size() != n) throw InvalidDiagramError("Gram matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (g[i][j] != g[j][i]) throw InvalidDiagramError("Gram matrix is not symmetric");
    }
  }
  LatticeInvariants out;
  out.determinant = determinant(g);
  out.even = std::all_of(g.begin(), g.end(), [&, i = std::size_t{0}](const auto& row) mutable {
    bool ok = mpz_even_p(row[i].get_mpz_t()) != 0;
    ++i;
    return ok;
  });
  // symmetric elimination over Q: A <- E A E^T keeps the signature
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g[i][j];
  }
  std::size_t k = 0;
  for (; k < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      // bring a nonzero diagonal entry to position k, or create one
      std::size_t r = k + 1;
      while (r < n && sgn(a[r][r]) == 0) ++r;
      if (r < n) {
        std::swap(a[r], a[k]);
        for (auto& row : a) std::swap(row[r], row[k]);
      } else {
        std::size_t c = k + 1;
        while (c < n && sgn(a[k][c]) == 0) ++c;
        if (c == n) {
          // row k is zero in the remaining block: move it to the end
          bool all_zero = true;
          for (std::size_t i = k; i < n && all_zero; ++i) {
            for (std::size_t j = k; j < n; ++j) {
              if (sgn(a[i][j]) != 0) {
                all_zero = false;
                break;
              }
            }
          }
          if (all_zero) break;
          std::size_t nz = k + 1;
          while (sgn(a[nz][nz]) == 0) {
            bool found = false;
            for (std::size_t j = k; j < n; ++j) {
              if (sgn(a[nz][j]) != 0) {
                found = true;
                break;
              }
            }
            if (found) break;
            ++nz;
          }
          std::swap(a[nz], a[k]);
          for (auto& row : a) std::swap(row[nz], row[k]);
          --k;
          continue;
        }
        // e_k <- e_k + e_c gives diagonal 2 a[k][c] + a[c][c] = 2 a[k][c] (a[c][c] = 0 here)
        for (std::size_t j = 0; j < n; ++j) a[k][j] += a[c][j];
        for (std::size_t i = 0; i < n; ++i) a[i][k] += a[i][c];
      }
    }
    const mpq_class pivot = a[k][k];
    if (sgn(pivot) > 0) ++out.positive;
    else ++out.negative;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a[i][k]) == 0) continue;
      mpq_class f = a[i][k] / pivot;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      for (std::size_t j = k; j < n; ++j) a[j][i] = a[i][j];
    }
  }
  out.radical = static_cast<int>(n) - out.positive - out.negative;
  return out;
}

GramMatrix random_unimodular(int n, std::mt19937_64& rng, int steps) {
  const auto size = static_cast<std::size_t>(n);
  GramMatrix u(size, std::vector<mpz_class>(size, 0));
  for (std::size_t i = 0; i < size; ++i) u[i][i] = 1;
  if (n < 2) return u;
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int s = 0; s < steps; ++s) {
    auto i = static_cast<std::size_t>(idx(rng));
    auto j = static_cast<std::size_t>(idx(rng));
    if (i == j) continue;
    if (s % 7 == 6) {
      std::swap(u[i], u[j]);
      continue;
    }
    int m = mult(rng);
    for (std::size_t c = 0; c < size; ++c) u[i][c] += m * u[j][c];
  }
  return u;
}

GramMatrix congruent(const GramMatrix& g, const GramMatrix& u) {
  const std::size_t n = g.size();
  GramMatrix gu(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(g[i][k]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) gu[i][j] += g[i][k] * u[k][j];
    }
  }
  GramMatrix out(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(u[k][i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += u[k][i] * gu[k][j];
    }
  }
  return out;
}

std::string gram_to_string(const GramMatrix& g) {
  std::string out;
  for (const auto& row : g) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += " ";
      out += row[j].get_str();
    }
    out += "\n";
  }
  return out;
}

}  // namespace k3disc
