#include "resorder/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "resorder/errors.hpp"

namespace resorder {

namespace {

std::string budget_hint(std::uint64_t requested) {
  return "requested bound " + std::to_string(requested) + " exceeds the cap " +
         std::to_string(kSpfTableCap) + "; lower x or rebuild with a larger cap";
}

}  // namespace

SpfTable::SpfTable(std::uint64_t bound) : bound_(bound) {
  if (bound < 2) throw precondition_error("SpfTable bound must be >= 2");
  if (bound > kSpfTableCap) throw resource_error(budget_hint(bound));
  spf_.assign(bound + 1, 0);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (spf_[i] == 0) {
      for (std::uint64_t j = i; j <= bound; j += i)
        if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
}

std::uint32_t SpfTable::spf(std::uint64_t m) const {
  if (m < 2 || m > bound_)
    throw precondition_error("SpfTable lookup out of range: " + std::to_string(m));
  return spf_[m];
}

// Segmented sieve after the usual Eratosthenes pattern: base primes up to
// sqrt(x), then fixed-size odd segments.
std::vector<std::uint64_t> sieve_primes(std::uint64_t x) {
  if (x < 2) throw precondition_error("sieve_primes requires x >= 2");
  if (x > kSpfTableCap) throw resource_error(budget_hint(x));

  const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x))) + 1;
  std::vector<char> base(root + 1, 1);
  base[0] = base[1] = 0;
  for (std::uint64_t i = 2; i * i <= root; ++i)
    if (base[i])
      for (std::uint64_t j = i * i; j <= root; j += i) base[j] = 0;
  std::vector<std::uint64_t> base_primes;
  for (std::uint64_t i = 3; i <= root; ++i)
    if (base[i]) base_primes.push_back(i);

  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(x / (std::log(static_cast<double>(x)) + 1e-9) * 1.15) + 16);
  primes.push_back(2);

  constexpr std::uint64_t kSegment = 1u << 16;
  std::vector<char> seg(kSegment);
  for (std::uint64_t low = 3; low <= x; low += kSegment) {
    const std::uint64_t high = std::min(low + kSegment - 1, x);
    std::fill(seg.begin(), seg.end(), 1);
    for (std::uint64_t p : base_primes) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
      for (std::uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
    }
    for (std::uint64_t n = low | 1; n <= high; n += 2)
      if (seg[n - low]) primes.push_back(n);
  }
  return primes;
}

FactoredNat factor(std::uint64_t m, const SpfTable& table) {
  if (m < 1 || m > table.bound())
    throw precondition_error("factor: m out of table range: " + std::to_string(m));
  FactoredNat out;
  out.value = m;
  while (m > 1) {
    const std::uint64_t p = table.spf(m);
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  return out;
}

FactoredNat factor_trial(std::uint64_t m) {
  if (m < 1) throw precondition_error("factor_trial requires m >= 1");
  FactoredNat out;
  out.value = m;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
  if (modulus < 2) throw precondition_error("pow_mod modulus must be >= 2");
  if (modulus >= (std::uint64_t{1} << 63))
    throw precondition_error("pow_mod modulus must be < 2^63");
  std::uint64_t result = 1 % modulus;
  std::uint64_t b = base % modulus;
  while (exp) {
    if (exp & 1)
      result = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(result) * b) % modulus);
    b = static_cast<std::uint64_t>((static_cast<unsigned __int128>(b) * b) % modulus);
    exp >>= 1;
  }
  return result;
}

std::uint64_t odd_part(std::uint64_t m) {
  if (m == 0) throw precondition_error("odd_part requires m >= 1");
  while ((m & 1) == 0) m >>= 1;
  return m;
}

std::uint64_t euler_phi(const FactoredNat& n) {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : n.factors) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

int moebius(const FactoredNat& n) {
  for (const auto& pp : n.factors)
    if (pp.exponent >= 2) return 0;
  return n.factors.size() % 2 == 0 ? 1 : -1;
}

namespace {

// floor(a^(1/h)) by rounding the floating estimate and correcting exactly.
std::uint64_t integer_root(std::uint64_t a, unsigned h) {
  auto pow_checked = [](std::uint64_t r, unsigned h) -> std::uint64_t {
    // 0 signals overflow; callers only compare against a >= 2.
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < h; ++i) {
      if (r != 0 && acc > UINT64_MAX / r) return 0;
      acc *= r;
    }
    return acc;
  };
  std::uint64_t r = static_cast<std::uint64_t>(
      std::llround(std::pow(static_cast<double>(a), 1.0 / h)));
  while (r > 1) {
    std::uint64_t v = pow_checked(r, h);
    if (v != 0 && v <= a) break;
    --r;
  }
  while (true) {
    std::uint64_t v = pow_checked(r + 1, h);
    if (v == 0 || v > a) break;
    ++r;
  }
  return r;
}

}  // namespace

bool is_perfect_power(std::uint64_t a) {
  if (a < 4) return false;
  const unsigned max_h = static_cast<unsigned>(std::log2(static_cast<double>(a))) + 1;
  for (unsigned h = 2; h <= max_h; ++h) {
    const std::uint64_t r = integer_root(a, h);
    if (r < 2) continue;
    std::uint64_t v = 1;
    for (unsigned i = 0; i < h; ++i) v *= r;
    if (v == a) return true;
  }
  return false;
}

const char* case_tag_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::kA1Mod4Eq1: return "a1=1 mod 4";
    case CaseTag::kA1Mod4Eq3: return "a1=3 mod 4";
    case CaseTag::kTwoTimesSquare: return "a1'=1";
    case CaseTag::kA1PrimeMod4Eq1WithSplitPrime: return "a1'=1 mod 4, has p=1 mod 4";
    case CaseTag::kA1PrimeMod4Eq1AllInert: return "a1'=1 mod 4, all p=3 mod 4";
    case CaseTag::kA1PrimeMod4Eq3WithSplitPrime: return "a1'=3 mod 4, has p=1 mod 4";
    case CaseTag::kA1PrimeMod4Eq3AllInert: return "a1'=3 mod 4, all p=3 mod 4";
  }
  return "?";
}

SquarefreeDecomposition decompose(std::uint64_t a) {
  if (a < 2) throw precondition_error("decompose requires a >= 2");
  if (is_perfect_power(a))
    throw domain_error("a=" + std::to_string(a) +
                       " is a perfect power; the density case analysis "
                       "requires a non-power base");

  SquarefreeDecomposition d;
  d.a = a;
  d.a1 = 1;
  d.a2 = 1;
  for (const auto& [p, e] : factor_trial(a).factors) {
    if (e & 1) d.a1 *= p;
    for (unsigned i = 0; i < e / 2; ++i) d.a2 *= p;
  }

  const unsigned a1_mod4 = static_cast<unsigned>(d.a1 & 3);
  if (a1_mod4 == 1) {
    d.case_tag = CaseTag::kA1Mod4Eq1;
    return d;
  }
  if (a1_mod4 == 3) {
    d.case_tag = CaseTag::kA1Mod4Eq3;
    return d;
  }

  // a1 = 2 (mod 4): classify by a1' = a1/2.
  const std::uint64_t a1p = d.a1 / 2;
  d.a1_prime = a1p;
  bool has_split = false;  // some p | a1' with p = 1 (mod 4)
  for (const auto& [p, e] : factor_trial(a1p).factors) {
    d.a1_prime_factors.push_back({p, static_cast<unsigned>(p & 3)});
    if ((p & 3) == 1) has_split = true;
  }
  if (a1p == 1) {
    d.case_tag = CaseTag::kTwoTimesSquare;
  } else if ((a1p & 3) == 1) {
    d.case_tag = has_split ? CaseTag::kA1PrimeMod4Eq1WithSplitPrime
                           : CaseTag::kA1PrimeMod4Eq1AllInert;
  } else {
    d.case_tag = has_split ? CaseTag::kA1PrimeMod4Eq3WithSplitPrime
                           : CaseTag::kA1PrimeMod4Eq3AllInert;
  }
  return d;
}

}  // namespace resorder
