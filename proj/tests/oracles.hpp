// Independent brute-force reference implementations, used only by tests to
// cross-check the library. Deliberately naive and separate from src/.

#ifndef RESORDER_TESTS_ORACLES_HPP
#define RESORDER_TESTS_ORACLES_HPP

#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

namespace test_oracle {

// Plain full-array sieve, nothing segmented.
inline std::vector<std::uint64_t> simple_sieve(std::uint64_t x) {
  std::vector<char> is_prime(x + 1, 1);
  is_prime[0] = 0;
  if (x >= 1) is_prime[1] = 0;
  for (std::uint64_t i = 2; i * i <= x; ++i)
    if (is_prime[i])
      for (std::uint64_t j = i * i; j <= x; j += i) is_prime[j] = 0;
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= x; ++i)
    if (is_prime[i]) out.push_back(i);
  return out;
}

inline bool trial_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Order of a mod p by scanning successive powers; O(p).
inline std::uint64_t scan_order(std::uint64_t a, std::uint64_t p) {
  const std::uint64_t r = a % p;
  std::uint64_t cur = r;
  std::uint64_t t = 1;
  while (cur != 1) {
    cur = cur * r % p;  // p < 2^32 in all uses, no overflow
    ++t;
  }
  return t;
}

struct BruteCensus {
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t excluded = 0;
  std::uint64_t total = 0;
};

inline BruteCensus brute_census(std::uint64_t a, std::uint64_t x) {
  BruteCensus out;
  for (std::uint64_t p : simple_sieve(x)) {
    ++out.total;
    if (p == 2 || a % p == 0) {
      ++out.excluded;
      continue;
    }
    ++out.counts[scan_order(a, p) % 4];
  }
  return out;
}

// Perfect-power test through the factorization route: a is a perfect power
// iff the gcd of its exponents is >= 2.
inline bool gcd_exponent_perfect_power(std::uint64_t a) {
  if (a < 4) return false;
  std::uint64_t g = 0;
  std::uint64_t m = a;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    std::uint64_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    g = std::gcd(g, e);
  }
  if (m > 1) g = std::gcd(g, std::uint64_t{1});
  return g >= 2;
}

}  // namespace test_oracle

#endif  // RESORDER_TESTS_ORACLES_HPP
