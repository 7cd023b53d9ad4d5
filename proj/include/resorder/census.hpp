#ifndef RESORDER_CENSUS_HPP
#define RESORDER_CENSUS_HPP

#include <array>
#include <cstdint>

#include "resorder/arithmetic.hpp"

namespace resorder {

// Counts of primes p <= x by residue class of the order of a mod p.
// counts[0..3] + excluded_count == total_primes (pi(x)); primes dividing 2a
// are excluded from the classes but kept in the denominator.
struct OrderCensus {
  std::uint64_t a = 0;
  std::uint64_t x = 0;
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t excluded_count = 0;  // primes <= x dividing 2a (always >= 1: p=2)
  std::uint64_t total_primes = 0;    // pi(x)

  friend bool operator==(const OrderCensus&, const OrderCensus&) = default;
};

// Least t >= 1 with a^t = 1 (mod p), for an odd prime p with p not dividing a.
// p_minus_1 must be the factorization of p-1. Starts at t = p-1 and strips
// each prime q | p-1 while a^(t/q) stays 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p,
                                   const FactoredNat& p_minus_1);

inline unsigned classify_mod4(std::uint64_t order) {
  return static_cast<unsigned>(order & 3);
}

// Full census over all primes <= x. Deterministic and independent of the
// worker count (contiguous prime blocks, counts merged by addition).
OrderCensus census(std::uint64_t a, std::uint64_t x, unsigned workers = 1);

double empirical_density(const OrderCensus& c, unsigned l);

}  // namespace resorder

#endif  // RESORDER_CENSUS_HPP
