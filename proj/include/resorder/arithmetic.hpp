#ifndef RESORDER_ARITHMETIC_HPP
#define RESORDER_ARITHMETIC_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace resorder {

// Largest bound accepted by SpfTable / sieve_primes (32-bit entries, ~400 MB).
inline constexpr std::uint64_t kSpfTableCap = 100'000'000;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// An integer together with its full prime factorization (ascending primes).
// value == product of prime^exponent; value == 1 iff factors is empty.
struct FactoredNat {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;
};

// Smallest-prime-factor table for 2..bound; spf(m) == m iff m is prime.
class SpfTable {
 public:
  explicit SpfTable(std::uint64_t bound);

  std::uint64_t bound() const { return bound_; }
  std::uint32_t spf(std::uint64_t m) const;
  bool is_prime(std::uint64_t m) const { return m >= 2 && spf(m) == m; }

 private:
  std::uint64_t bound_;
  std::vector<std::uint32_t> spf_;
};

// All primes <= x, ascending (segmented sieve, O(sqrt x + segment) memory).
std::vector<std::uint64_t> sieve_primes(std::uint64_t x);

// Factor m (1 <= m <= table.bound()) by repeated SPF lookup.
FactoredNat factor(std::uint64_t m, const SpfTable& table);

// Factor m >= 1 by trial division; for small inputs that need no table.
FactoredNat factor_trial(std::uint64_t m);

// base^exp mod modulus with double-width intermediates; modulus in [2, 2^63).
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);

std::uint64_t odd_part(std::uint64_t m);
std::uint64_t euler_phi(const FactoredNat& n);
int moebius(const FactoredNat& n);

// True iff a == r^h for some h >= 2 (exact integer h-th roots for each h).
bool is_perfect_power(std::uint64_t a);

// Which branch of the density case analysis the base a falls into.
enum class CaseTag {
  kA1Mod4Eq1,      // a1 = 1 (mod 4)
  kA1Mod4Eq3,      // a1 = 3 (mod 4)
  kTwoTimesSquare, // a1 = 2, i.e. a1' = 1
  kA1PrimeMod4Eq1WithSplitPrime,  // a1' = 1 (mod 4), some p | a1' with p = 1 (mod 4)
  kA1PrimeMod4Eq1AllInert,        // a1' = 1 (mod 4), all p | a1' with p = 3 (mod 4)
  kA1PrimeMod4Eq3WithSplitPrime,  // a1' = 3 (mod 4), some p | a1' with p = 1 (mod 4)
  kA1PrimeMod4Eq3AllInert,        // a1' = 3 (mod 4), all p | a1' with p = 3 (mod 4)
};

const char* case_tag_name(CaseTag tag);

struct PrimeResidue {
  std::uint64_t prime = 0;
  unsigned residue_mod4 = 0;
  friend bool operator==(const PrimeResidue&, const PrimeResidue&) = default;
};

// a = a1 * a2^2 with a1 squarefree, plus the case bookkeeping driven by a1.
// Only defined for a >= 2 that is not a perfect power.
struct SquarefreeDecomposition {
  std::uint64_t a = 0;
  std::uint64_t a1 = 0;  // squarefree part
  std::uint64_t a2 = 0;  // largest square divisor root
  std::optional<std::uint64_t> a1_prime;  // a1/2, present iff a1 = 2 (mod 4)
  CaseTag case_tag = CaseTag::kA1Mod4Eq1;
  std::vector<PrimeResidue> a1_prime_factors;  // odd primes of a1' with residues mod 4
};

SquarefreeDecomposition decompose(std::uint64_t a);

}  // namespace resorder

#endif  // RESORDER_ARITHMETIC_HPP
