#ifndef RESORDER_SERIES_HPP
#define RESORDER_SERIES_HPP

#include <cstdint>
#include <utility>

#include "resorder/arithmetic.hpp"
#include "resorder/density.hpp"

namespace resorder {

// Truncation bounds for the infinite sums and products of this module.
struct TruncationParams {
  std::uint64_t prime_bound = 1'000'000;  // Euler products
  std::uint64_t k_bound = 10'000;         // odd series indices / k values
  unsigned f_max = 12;                    // two-power exponent range
  std::uint64_t n_bound = 10'000;         // squarefree n sum
  double tolerance = 5e-3;

  void validate() const;
};

// Truncated Euler product with a rigorous bound on the log-scale tail.
struct EulerProductValue {
  double value = 0.0;
  std::uint64_t prime_bound = 0;
  double tail_bound = 0.0;
};

// C = prod over primes p = 3 (mod 4) of (1 - 2p/((p^2+1)(p-1))), truncated at
// prime_bound. tail_bound = 2/prime_bound covers the omitted factors: each
// log-factor is at most 2/(p-1)^2 in magnitude and the p-1 values are
// distinct integers = 2 (mod 4) beyond prime_bound - 1.
EulerProductValue constant_c(std::uint64_t prime_bound);

// Two families of series indices: k = 2^f*(4l+1) and k' = 2^f*(4l+3).
enum class KVariant { kForm, kPrimeForm };

struct SeriesIndex {
  unsigned f = 1;
  std::uint64_t l = 0;
  KVariant variant = KVariant::kForm;
  std::uint64_t k = 2;   // 2^f * (4l+1) or 2^f * (4l+3)
  std::uint64_t k0 = 2;  // radical of k (always even)

  static SeriesIndex make(unsigned f, std::uint64_t l, KVariant variant);
};

// Degree of the composite extension indexed by (k, n, d) over the rationals:
// n*k*2^(f+1)*phi(lcm(odd(n), odd(k)*odd(d))), halved when the case condition
// tied to a1 holds. k enters with its full two-power; the extra 2^(f+1) is
// the totient of the two-part of the cyclotomic conductor. d is normally a
// divisor of k0 but the formula is evaluated for any d >= 1.
BigInt extension_degree(const SeriesIndex& idx, std::uint64_t n, std::uint64_t d,
                        const SquarefreeDecomposition& a);

// 0/1 coefficient deciding whether the (k, n, d) term contributes to the
// density series for order class l_class (1 or 3). Zero for every even d.
int c_coeff(int l_class, const SeriesIndex& idx, std::uint64_t n, std::uint64_t d,
            const SquarefreeDecomposition& a);

// Truncated evaluation of the reduced I-sum for the given class: 2^-f times
// the sum over odd m = l_class (mod 4), m <= k_bound, of
//   prod_{q^e || m} (q+1)/q^(2e+1) * prod_{odd p <= prime_bound, p != q_i}
//   (1 - 1/(p(p-1))).
// The class pair satisfies i_sum(f,1) + i_sum(f,3) -> 2^-f.
double i_sum(unsigned f, int l_class, const TruncationParams& t);

// Exact closed form of the constrained J-sum as alpha + beta*C:
//   s = 1                      -> (1 +/- C)/2^(f+1)
//   some p | s, p = 1 (mod 4)  -> 0
//   all p | s, p = 3 (mod 4)   -> +/- C/2^(f+1) * prod -2p/(p^3-p^2-p-1)
// (upper signs for class 1, lower for class 3). s must be odd and squarefree.
CTerm j_closed(unsigned f, std::uint64_t s, int l_class);

// Direct truncated evaluation of the same J-sum, keeping the constrained
// squarefree n-sum raw: for each admissible odd m the divisor sum over d is
// collapsed to its product form and the n-sum runs over squarefree n <= n_bound
// with (s/z) | n, z = gcd(s, k0). Converges to j_closed evaluated at C.
double j_raw(unsigned f, std::uint64_t s, int l_class, const TruncationParams& t);

// Brute truncated evaluation of the two density series (order class 1 and 3):
// sums over f <= f_max, both index families with k <= k_bound, all d | k0 and
// squarefree n <= n_bound, using the degree formula and coefficient table for
// every term. Returns (delta_1, delta_3).
std::pair<double, double> delta_raw(const SquarefreeDecomposition& a,
                                    const TruncationParams& t);

// Numeric estimate of the neglected n-tail sum_{n > n_bound} 1/(n*phi(n)),
// reported alongside verification results.
double n_tail_estimate(std::uint64_t n_bound);

}  // namespace resorder

#endif  // RESORDER_SERIES_HPP
