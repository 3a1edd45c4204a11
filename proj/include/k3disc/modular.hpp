#pragma once

#include <cstdint>
#include <vector>

namespace k3disc {

/// 2^61 - 1, the default working prime.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Inverse of a nonzero residue modulo a prime.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// The `count` largest primes strictly below `below`, descending.
std::vector<std::uint64_t> primes_below(std::uint64_t below, std::size_t count);

/// The first `count` primes that are >= `from`, ascending.
std::vector<std::uint64_t> primes_from(std::uint64_t from, std::size_t count);

}  // namespace k3disc
