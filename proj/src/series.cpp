#include "resorder/series.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "resorder/errors.hpp"

namespace resorder {

void TruncationParams::validate() const {
  if (prime_bound < 2 || k_bound < 2 || n_bound < 2)
    throw precondition_error("truncation bounds must be >= 2");
  if (f_max < 1) throw precondition_error("f_max must be >= 1");
  if (!(tolerance > 0.0)) throw precondition_error("tolerance must be > 0");
}

EulerProductValue constant_c(std::uint64_t prime_bound) {
  if (prime_bound < 3) throw precondition_error("constant_c requires prime_bound >= 3");
  double log_sum = 0.0;
  for (std::uint64_t p : sieve_primes(prime_bound)) {
    if ((p & 3) != 3) continue;
    const double pd = static_cast<double>(p);
    log_sum += std::log1p(-2.0 * pd / ((pd * pd + 1.0) * (pd - 1.0)));
  }
  return {std::exp(log_sum), prime_bound, 2.0 / static_cast<double>(prime_bound)};
}

SeriesIndex SeriesIndex::make(unsigned f, std::uint64_t l, KVariant variant) {
  if (f < 1) throw precondition_error("SeriesIndex requires f >= 1");
  if (f >= 63) throw precondition_error("SeriesIndex: f too large");
  const std::uint64_t odd = 4 * l + (variant == KVariant::kForm ? 1 : 3);
  if (odd > (UINT64_MAX >> f)) throw precondition_error("SeriesIndex: k overflows");
  SeriesIndex idx;
  idx.f = f;
  idx.l = l;
  idx.variant = variant;
  idx.k = odd << f;
  idx.k0 = 2;
  for (const auto& [p, e] : factor_trial(odd).factors) idx.k0 *= p;
  return idx;
}

namespace {

// lcm of the odd parts of n and k*d, the modulus whose totient drives both
// the degree formula and the coefficient table.
std::uint64_t odd_lcm_modulus(const SeriesIndex& idx, std::uint64_t n, std::uint64_t d) {
  const std::uint64_t n_odd = odd_part(n);
  const unsigned __int128 kd =
      static_cast<unsigned __int128>(odd_part(idx.k)) * odd_part(d);
  if (kd > UINT64_MAX) throw precondition_error("odd part of k*d overflows");
  const std::uint64_t kd64 = static_cast<std::uint64_t>(kd);
  const std::uint64_t g = std::gcd(n_odd, kd64);
  const unsigned __int128 l = static_cast<unsigned __int128>(n_odd / g) * kd64;
  if (l > UINT64_MAX) throw precondition_error("lcm overflows");
  return static_cast<std::uint64_t>(l);
}

// The divisor whose presence in the modulus triggers both the degree halving
// and the coefficient branch: a1 itself when a1 is odd, a1' when a1 is even.
std::uint64_t case_divisor(const SquarefreeDecomposition& a) {
  return (a.a1 & 3) == 2 ? *a.a1_prime : a.a1;
}

}  // namespace

BigInt extension_degree(const SeriesIndex& idx, std::uint64_t n, std::uint64_t d,
                        const SquarefreeDecomposition& a) {
  if (n < 1 || d < 1) throw precondition_error("extension_degree requires n, d >= 1");
  if (moebius(factor_trial(n)) == 0)
    throw precondition_error("extension_degree requires squarefree n");
  const std::uint64_t modulus = odd_lcm_modulus(idx, n, d);
  const BigInt phi = euler_phi(factor_trial(modulus));
  BigInt degree = BigInt(n) * idx.k * (BigInt(1) << (idx.f + 1)) * phi;
  if (modulus % case_divisor(a) == 0) degree /= 2;
  return degree;
}

int c_coeff(int l_class, const SeriesIndex& idx, std::uint64_t n, std::uint64_t d,
            const SquarefreeDecomposition& a) {
  if (l_class != 1 && l_class != 3)
    throw precondition_error("c_coeff: l_class must be 1 or 3");
  if (n < 1 || d < 1) throw precondition_error("c_coeff requires n, d >= 1");
  if ((d & 1) == 0) return 0;

  const std::uint64_t modulus = odd_lcm_modulus(idx, n, d);
  switch (a.a1 & 3) {
    case 1:
      return 1;
    case 3:
      if (modulus % a.a1 != 0) return 1;
      return idx.f >= 2 ? 1 : 0;
    default: {  // a1 = 2 (mod 4)
      const std::uint64_t a1p = *a.a1_prime;
      if (modulus % a1p != 0) return 1;
      if (idx.f >= 3) return 1;
      if (idx.f == 2) return 0;
      // f = 1: the only rows where the two classes disagree.
      if ((a1p & 3) == 1) return l_class == 1 ? 0 : 1;
      return l_class == 1 ? 1 : 0;
    }
  }
}

namespace {

// prod over odd primes p <= bound of (1 - 1/(p(p-1))), accumulated in logs.
double odd_prime_product(std::uint64_t bound) {
  double log_sum = 0.0;
  for (std::uint64_t p : sieve_primes(bound)) {
    if (p == 2) continue;
    const double pd = static_cast<double>(p);
    log_sum += std::log1p(-1.0 / (pd * (pd - 1.0)));
  }
  return std::exp(log_sum);
}

struct SquarefreeEntry {
  std::uint32_t n;
  std::int8_t mu;
  double inv_n;
  double f_prod;  // prod over odd primes p | n of (p - 1)
};

// Squarefree n <= bound with their Moebius values; n with mu(n) = 0 are
// dropped at generation time instead of being filtered in the sums.
std::vector<SquarefreeEntry> make_squarefree_table(std::uint64_t bound) {
  std::vector<std::int8_t> mu(bound + 1, 1);
  std::vector<double> f_prod(bound + 1, 1.0);
  std::vector<char> composite(bound + 1, 0);
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t j = 2 * p; j <= bound; j += p) composite[j] = 1;
    for (std::uint64_t j = p; j <= bound; j += p) {
      mu[j] = static_cast<std::int8_t>(-mu[j]);
      if (p > 2) f_prod[j] *= static_cast<double>(p - 1);
    }
    if (p * p <= bound)
      for (std::uint64_t j = p * p; j <= bound; j += p * p) mu[j] = 0;
  }
  std::vector<SquarefreeEntry> table;
  table.reserve(static_cast<std::size_t>(0.61 * static_cast<double>(bound)) + 8);
  for (std::uint64_t n = 1; n <= bound; ++n)
    if (mu[n] != 0)
      table.push_back({static_cast<std::uint32_t>(n), mu[n],
                       1.0 / static_cast<double>(n), f_prod[n]});
  return table;
}

void require_odd_squarefree(std::uint64_t s, const char* who) {
  if (s < 1 || (s & 1) == 0)
    throw precondition_error(std::string(who) + " requires odd s >= 1");
  if (moebius(factor_trial(s)) == 0)
    throw precondition_error(std::string(who) + " requires squarefree s");
}

void require_class(int l_class) {
  if (l_class != 1 && l_class != 3)
    throw precondition_error("l_class must be 1 or 3");
}

}  // namespace

double i_sum(unsigned f, int l_class, const TruncationParams& t) {
  if (f < 1) throw precondition_error("i_sum requires f >= 1");
  require_class(l_class);
  t.validate();

  const double base_product = odd_prime_product(t.prime_bound);
  const SpfTable spf(t.k_bound);

  double sum = 0.0;
  for (std::uint64_t m = (l_class == 1 ? 1 : 3); m <= t.k_bound; m += 4) {
    double term = base_product;
    for (const auto& [q, e] : factor(m, spf).factors) {
      const double qd = static_cast<double>(q);
      double qpow = qd;  // q^(2e+1)
      for (unsigned i = 0; i < 2 * e; ++i) qpow *= qd;
      term *= (qd + 1.0) / qpow;
      if (q <= t.prime_bound) term /= 1.0 - 1.0 / (qd * (qd - 1.0));
    }
    sum += term;
  }
  return std::ldexp(sum, -static_cast<int>(f));
}

CTerm j_closed(unsigned f, std::uint64_t s, int l_class) {
  if (f < 1 || f > 62) throw precondition_error("j_closed requires 1 <= f <= 62");
  require_class(l_class);
  require_odd_squarefree(s, "j_closed");

  const BigInt half_scale = BigInt(1) << (f + 1);
  if (s == 1) {
    const Rational a(BigInt(1), half_scale);
    return {a, l_class == 1 ? a : Rational(-a)};
  }
  Rational prod = 1;
  for (const auto& [p, e] : factor_trial(s).factors) {
    if ((p & 3) == 1) return {Rational(0), Rational(0)};
    const BigInt q = p;
    prod *= Rational(-2 * q, q * q * q - q * q - q - 1);
  }
  Rational beta = prod / half_scale;
  if (l_class == 3) beta = -beta;
  return {Rational(0), beta};
}

double j_raw(unsigned f, std::uint64_t s, int l_class, const TruncationParams& t) {
  if (f < 1) throw precondition_error("j_raw requires f >= 1");
  require_class(l_class);
  require_odd_squarefree(s, "j_raw");
  t.validate();

  const std::vector<SquarefreeEntry> table = make_squarefree_table(t.n_bound);
  const SpfTable spf(t.k_bound);
  std::vector<std::uint64_t> s_primes;
  for (const auto& [p, e] : factor_trial(s).factors) s_primes.push_back(p);

  double total = 0.0;
  for (std::uint64_t m = (l_class == 1 ? 1 : 3); m <= t.k_bound; m += 4) {
    const auto fac = factor(m, spf).factors;

    // k0/phi(k0) * 1/(2^f m) * prod (q+1)/q^(e+1): the collapsed divisor sum.
    double outer = 2.0;
    for (const auto& [q, e] : fac) {
      const double qd = static_cast<double>(q);
      outer *= qd / (qd - 1.0);
      double qpow = qd;  // q^(e+1)
      for (unsigned i = 0; i < e; ++i) qpow *= qd;
      outer *= (qd + 1.0) / qpow;
    }
    outer /= std::ldexp(static_cast<double>(m), static_cast<int>(f));

    // The constraint on n keeps only the part of s prime to m.
    std::uint64_t s_rem = 1;
    for (std::uint64_t p : s_primes)
      if (m % p != 0) s_rem *= p;

    double n_sum = 0.0;
    for (const SquarefreeEntry& entry : table) {
      if (entry.n % s_rem != 0) continue;
      double denom = entry.f_prod;
      for (const auto& [q, e] : fac)
        if (entry.n % q == 0) denom /= static_cast<double>(q - 1);
      n_sum += static_cast<double>(entry.mu) * entry.inv_n / denom;
    }
    total += outer * n_sum;
  }
  return total;
}

std::pair<double, double> delta_raw(const SquarefreeDecomposition& a,
                                    const TruncationParams& t) {
  t.validate();

  const std::vector<SquarefreeEntry> table = make_squarefree_table(t.n_bound);
  const SpfTable spf(t.k_bound);

  const std::uint64_t cond_div = case_divisor(a);
  std::vector<std::uint64_t> cond_primes;
  for (const auto& [p, e] : factor_trial(cond_div).factors) cond_primes.push_back(p);

  const unsigned a1_mod4 = static_cast<unsigned>(a.a1 & 3);
  const unsigned a1p_mod4 =
      a1_mod4 == 2 ? static_cast<unsigned>(*a.a1_prime & 3) : 0;

  // Coefficient pair (class 1, class 3) when the case divisor divides the
  // modulus; off-condition terms always carry (1, 1).
  auto on_condition_pair = [&](unsigned f) -> std::pair<int, int> {
    switch (a1_mod4) {
      case 1: return {1, 1};
      case 3: return f >= 2 ? std::pair<int, int>{1, 1} : std::pair<int, int>{0, 0};
      default:
        if (f >= 3) return {1, 1};
        if (f == 2) return {0, 0};
        return a1p_mod4 == 1 ? std::pair<int, int>{0, 1} : std::pair<int, int>{1, 0};
    }
  };

  std::vector<std::uint8_t> cond_flag(table.size());
  std::vector<double> weight(table.size());

  double delta1 = 0.0, delta3 = 0.0;
  for (unsigned f = 1; f <= t.f_max; ++f) {
    const std::uint64_t pow2f = std::uint64_t(1) << f;
    if (pow2f > t.k_bound) break;
    const auto [c1_on, c3_on] = on_condition_pair(f);
    // 1/(2^f * 2^(f+1)): the two-power part of every degree at this level.
    const double inv_two = std::ldexp(1.0, -static_cast<int>(2 * f + 1));

    for (KVariant variant : {KVariant::kForm, KVariant::kPrimeForm}) {
      const std::uint64_t residue = variant == KVariant::kForm ? 1 : 3;
      for (std::uint64_t m = residue; m * pow2f <= t.k_bound; m += 4) {
        const auto fac = factor(m, spf).factors;

        // Case-divisor primes not already inside m; the condition on a term
        // is that n supplies all of them. An odd 64-bit value has at most 15
        // distinct prime factors.
        std::uint64_t missing[15];
        std::size_t n_missing = 0;
        for (std::uint64_t p : cond_primes)
          if (m % p != 0) missing[n_missing++] = p;

        for (std::size_t i = 0; i < table.size(); ++i) {
          const SquarefreeEntry& entry = table[i];
          bool cond = true;
          for (std::size_t j = 0; j < n_missing; ++j)
            if (entry.n % missing[j] != 0) {
              cond = false;
              break;
            }
          double denom = entry.f_prod;  // phi contribution of primes of n off m
          for (const auto& [q, e] : fac)
            if (entry.n % q == 0) denom /= static_cast<double>(q - 1);
          cond_flag[i] = cond;
          // mu(n)/n divided by the n-part of phi; doubled when the degree halves.
          weight[i] = static_cast<double>(entry.mu) * entry.inv_n / denom *
                      (cond ? 2.0 : 1.0);
        }

        double core_over_phi = 2.0;  // k0/phi(k0)
        for (const auto& [q, e] : fac)
          core_over_phi *= static_cast<double>(q) / static_cast<double>(q - 1);

        // All divisors d of k0 = 2 * rad(m): odd subsets and their doubles.
        const std::size_t r = fac.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
          std::uint64_t d_odd = 1;
          double phi_md = 1.0;
          int mu_d = 1;
          for (std::size_t b = 0; b < r; ++b) {
            const auto& [q, e] = fac[b];
            const bool in = (mask >> b) & 1;
            if (in) {
              d_odd *= q;
              mu_d = -mu_d;
            }
            double qpow = 1.0;  // q^(e + eps - 1)
            for (unsigned i = 1; i < e + (in ? 1u : 0u); ++i)
              qpow *= static_cast<double>(q);
            phi_md *= static_cast<double>(q - 1) * qpow;
          }
          for (std::uint64_t d : {d_odd, 2 * d_odd}) {
            if ((d & 1) == 0) continue;  // even d: coefficient 0 for every term
            const double scale = core_over_phi * static_cast<double>(mu_d) /
                                 (static_cast<double>(d) * phi_md *
                                  static_cast<double>(m)) *
                                 inv_two;
            double acc1 = 0.0, acc3 = 0.0;
            for (std::size_t i = 0; i < table.size(); ++i) {
              const double w = weight[i];
              if (cond_flag[i]) {
                acc1 += w * c1_on;
                acc3 += w * c3_on;
              } else {
                acc1 += w;
                acc3 += w;
              }
            }
            if (variant == KVariant::kForm) {
              delta1 += scale * acc1;
              delta3 += scale * acc3;
            } else {
              // The primed family contributes with the classes crossed.
              delta1 += scale * acc3;
              delta3 += scale * acc1;
            }
          }
        }
      }
    }
  }
  return {delta1, delta3};
}

double n_tail_estimate(std::uint64_t n_bound) {
  const std::uint64_t hi = n_bound * 8;
  std::vector<std::uint32_t> phi(hi + 1);
  for (std::uint64_t i = 0; i <= hi; ++i) phi[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t p = 2; p <= hi; ++p) {
    if (phi[p] != p) continue;  // p prime
    for (std::uint64_t j = p; j <= hi; j += p) phi[j] -= phi[j] / p;
  }
  auto block = [&](std::uint64_t lo, std::uint64_t up) {
    double s = 0.0;
    for (std::uint64_t n = lo + 1; n <= up; ++n)
      s += 1.0 / (static_cast<double>(n) * static_cast<double>(phi[n]));
    return s;
  };
  const double s1 = block(n_bound, 2 * n_bound);
  const double s2 = block(2 * n_bound, 4 * n_bound);
  const double s3 = block(4 * n_bound, 8 * n_bound);
  const double ratio = s3 / s2;  // ~1/2 per doubling
  return s1 + s2 + s3 + s3 * ratio / (1.0 - ratio);
}

}  // namespace resorder
