#include "resorder/census.hpp"

#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "resorder/errors.hpp"

namespace resorder {

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p,
                                   const FactoredNat& p_minus_1) {
  const std::uint64_t r = a % p;
  if (r == 0)
    throw domain_error("multiplicative_order: p=" + std::to_string(p) + " divides a");
  if (r == 1) return 1;
  std::uint64_t t = p - 1;
  for (const auto& [q, e] : p_minus_1.factors) {
    while (t % q == 0 && pow_mod(r, t / q, p) == 1) t /= q;
  }
  return t;
}

namespace {

// Deterministic ~1% sample selector (splitmix64 finalizer on p).
bool spot_check_selected(std::uint64_t p) {
  std::uint64_t z = p + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z % 100 == 0;
}

// Defining property of the order: a^t = 1, a^(t/q) != 1 for every q | t,
// and t | p-1. Throws if the computed order fails it.
void assert_order_valid(std::uint64_t a, std::uint64_t p, std::uint64_t t,
                        const SpfTable& spf) {
  const std::uint64_t r = a % p;
  bool ok = (p - 1) % t == 0 && pow_mod(r, t, p) == 1;
  if (ok && t > 1) {
    for (const auto& [q, e] : factor(t, spf).factors)
      if (pow_mod(r, t / q, p) == 1) ok = false;
  }
  if (!ok)
    throw std::logic_error("order self-check failed at p=" + std::to_string(p));
}

struct BlockResult {
  std::array<std::uint64_t, 4> counts{};
  std::uint64_t excluded = 0;
  std::exception_ptr error;
};

void census_block(std::uint64_t a, const std::vector<std::uint64_t>& primes,
                  std::size_t begin, std::size_t end, const SpfTable& spf,
                  BlockResult& out) {
  try {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t p = primes[i];
      if (p == 2 || a % p == 0) {
        ++out.excluded;
        continue;
      }
      const FactoredNat pm1 = factor(p - 1, spf);
      const std::uint64_t t = multiplicative_order(a, p, pm1);
      if (spot_check_selected(p)) assert_order_valid(a, p, t, spf);
      ++out.counts[classify_mod4(t)];
    }
  } catch (...) {
    out.error = std::current_exception();
  }
}

}  // namespace

OrderCensus census(std::uint64_t a, std::uint64_t x, unsigned workers) {
  if (a < 2) throw precondition_error("census requires a >= 2");
  if (x < 3) throw precondition_error("census requires x >= 3");
  if (workers < 1) throw precondition_error("census requires workers >= 1");

  const std::vector<std::uint64_t> primes = sieve_primes(x);
  const SpfTable spf(x);  // factors p-1 for every p <= x

  const std::size_t n = primes.size();
  const std::size_t nblocks = std::min<std::size_t>(workers, n);
  std::vector<BlockResult> results(nblocks);

  if (nblocks <= 1) {
    census_block(a, primes, 0, n, spf, results[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::size_t begin = n * b / nblocks;
      const std::size_t end = n * (b + 1) / nblocks;
      pool.emplace_back(census_block, a, std::cref(primes), begin, end,
                        std::cref(spf), std::ref(results[b]));
    }
    for (auto& t : pool) t.join();
  }

  OrderCensus out;
  out.a = a;
  out.x = x;
  out.total_primes = n;
  for (const BlockResult& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    for (int l = 0; l < 4; ++l) out.counts[l] += r.counts[l];
    out.excluded_count += r.excluded;
  }
  return out;
}

double empirical_density(const OrderCensus& c, unsigned l) {
  if (l > 3) throw precondition_error("empirical_density: l must be in 0..3");
  return static_cast<double>(c.counts[l]) / static_cast<double>(c.total_primes);
}

}  // namespace resorder
