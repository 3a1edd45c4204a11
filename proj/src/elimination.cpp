#include "k3disc/elimination.hpp"

#include <algorithm>

namespace k3disc {

std::vector<std::uint64_t> interpolate_at_nodes(std::span<const std::uint64_t> nodes, std::span<const std::uint64_t> values,
                                                std::uint64_t prime) {
  if (nodes.size() != values.size()) throw SamplingError("node and value counts differ");
  const std::size_t n = nodes.size();
  if (n == 0) return {};
  std::vector<std::uint64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = nodes[i] % prime;
  {
    auto sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw SamplingError("duplicate interpolation node");
  }
  // Newton divided differences
  std::vector<std::uint64_t> c(values.begin(), values.end());
  for (auto& v : c) v %= prime;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      std::uint64_t num = sub_mod(c[i], c[i - 1], prime);
      std::uint64_t den = sub_mod(x[i], x[i - j], prime);
      c[i] = mul_mod(num, inv_mod(den, prime), prime);
      if (i == j) break;
    }
  }
  // expand the Newton form into monomial coefficients
  std::vector<std::uint64_t> poly(1, c[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<std::uint64_t> next(poly.size() + 1, 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] = add_mod(next[k + 1], poly[k], prime);
      next[k] = sub_mod(next[k], mul_mod(poly[k], x[i], prime), prime);
    }
    next[0] = add_mod(next[0], c[i], prime);
    poly = std::move(next);
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

std::vector<std::uint64_t> interpolate_consecutive(std::span<const std::uint64_t> values, std::uint64_t prime) {
  const std::size_t n = values.size();
  if (n == 0) return {};
  if (n > prime) throw SamplingError("more consecutive nodes than field elements");
  // divided differences over nodes 0..n-1 only need inverses of 1..n-1
  std::vector<std::uint64_t> inv(n, 1);
  for (std::size_t j = 1; j < n; ++j) inv[j] = inv_mod(j, prime);
  std::vector<std::uint64_t> c(values.begin(), values.end());
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      c[i] = mul_mod(sub_mod(c[i], c[i - 1], prime), inv[j], prime);
      if (i == j) break;
    }
  }
  std::vector<std::uint64_t> poly(n, 0);
  std::size_t len = 1;
  poly[0] = c[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    // poly <- poly * (x - i) + c[i]
    for (std::size_t k = len; k-- > 0;) {
      poly[k + 1] = add_mod(poly[k + 1], poly[k], prime);
      poly[k] = mul_mod(poly[k], (prime - i % prime) % prime, prime);
    }
    ++len;
    poly[0] = add_mod(poly[0], c[i], prime);
  }
  return poly;
}

MultiPoly<PrimeField> interp_univariate(const std::function<std::uint64_t(std::uint64_t)>& f, int degree_bound,
                                        const RingPtr<PrimeField>& ring, const std::string& var) {
  if (degree_bound < 0) throw SamplingError("negative degree bound");
  const std::uint64_t p = ring->domain().prime();
  if (static_cast<std::uint64_t>(degree_bound) >= p) throw SamplingError("degree bound exceeds the number of distinct nodes");
  std::vector<std::uint64_t> values(static_cast<std::size_t>(degree_bound) + 1);
  for (std::size_t s = 0; s < values.size(); ++s) values[s] = f(s) % p;
  auto coeffs = interpolate_consecutive(values, p);
  return from_dense(DensePoly<PrimeField>(ring->domain(), std::move(coeffs)), ring, var);
}

namespace detail {

mpz_class one_norm(const MultiPoly<IntegerRing>& p) {
  mpz_class s = 0;
  for (const auto& t : p.terms()) s += abs(t.coeff);
  return s;
}

void tensor_interpolate(std::vector<std::uint64_t>& grid, const std::vector<int>& bounds, std::uint64_t prime) {
  const std::size_t dims = bounds.size();
  std::vector<std::size_t> stride(dims, 1);
  for (std::size_t k = dims; k-- > 1;) stride[k - 1] = stride[k] * static_cast<std::size_t>(bounds[k] + 1);
  std::vector<std::uint64_t> line;
  for (std::size_t axis = 0; axis < dims; ++axis) {
    const std::size_t len = static_cast<std::size_t>(bounds[axis] + 1);
    if (len == 1) continue;
    line.resize(len);
    for (std::size_t base = 0; base < grid.size(); ++base) {
      // visit each line once: the axis coordinate of `base` must be 0
      if ((base / stride[axis]) % len != 0) continue;
      for (std::size_t i = 0; i < len; ++i) line[i] = grid[base + i * stride[axis]];
      auto coeffs = interpolate_consecutive(line, prime);
      coeffs.resize(len, 0);
      for (std::size_t i = 0; i < len; ++i) grid[base + i * stride[axis]] = coeffs[i];
    }
  }
}

}  // namespace detail

}  // namespace k3disc
