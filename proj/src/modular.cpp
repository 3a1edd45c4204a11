#include "k3disc/modular.hpp"

#include <stdexcept>

namespace k3disc {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("inverse of zero modulo p");
  return pow_mod(a, p - 2, p);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_below(std::uint64_t below, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = below - 1; out.size() < count && n >= 2; --n) {
    if (is_prime_u64(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> primes_from(std::uint64_t from, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = from; out.size() < count; ++n) {
    if (is_prime_u64(n)) out.push_back(n);
  }
  return out;
}

}  // namespace k3disc
