#include "resorder/density.hpp"

#include <sstream>

#include "resorder/errors.hpp"

namespace resorder {

double evaluate(const CTerm& t, double c_value) {
  return t.alpha.convert_to<double>() + t.beta.convert_to<double>() * c_value;
}

std::string exact_form_string(const CTerm& t) {
  auto frac = [](const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
  };
  if (t.beta == 0) return frac(t.alpha);

  const Rational mag = t.beta < 0 ? Rational(-t.beta) : t.beta;
  std::ostringstream os;
  if (numerator(mag) != 1) os << numerator(mag);
  os << 'C';
  if (denominator(mag) != 1) os << '/' << denominator(mag);
  const std::string cpart = os.str();

  if (t.alpha == 0) return (t.beta < 0 ? "-" : "") + cpart;
  return frac(t.alpha) + (t.beta < 0 ? " - " : " + ") + cpart;
}

// The product over odd primes q | a1' of -2q/(q^3 - q^2 - q - 1), exact.
// Each factor is negative, so the sign is (-1)^(number of prime factors).
static Rational inert_prime_product(const SquarefreeDecomposition& d) {
  Rational prod = 1;
  for (const PrimeResidue& pr : d.a1_prime_factors) {
    const BigInt q = pr.prime;
    prod *= Rational(-2 * q, q * q * q - q * q - q - 1);
  }
  return prod;
}

DensityProfile theoretical_profile(const SquarefreeDecomposition& d) {
  DensityProfile out;
  out.a = d.a;
  out.case_tag = d.case_tag;

  const Rational third(1, 3), sixth(1, 6);
  CTerm& d0 = out.deltas[0];
  CTerm& d1 = out.deltas[1];
  CTerm& d2 = out.deltas[2];
  CTerm& d3 = out.deltas[3];

  // delta_0 and delta_2 carry no C term in any case.
  if (d.case_tag == CaseTag::kTwoTimesSquare) {
    d0.alpha = Rational(5, 12);
    d2.alpha = Rational(7, 24);
  } else {
    d0.alpha = third;
    d2.alpha = third;
  }

  switch (d.case_tag) {
    case CaseTag::kA1Mod4Eq1:
    case CaseTag::kA1Mod4Eq3:
    case CaseTag::kA1PrimeMod4Eq1WithSplitPrime:
    case CaseTag::kA1PrimeMod4Eq3WithSplitPrime:
      d1.alpha = sixth;
      d3.alpha = sixth;
      break;
    case CaseTag::kTwoTimesSquare:
      // The vacuous product must not be applied here: a1' = 1 gets its own
      // constants, not the empty-product limit of the next case.
      d1 = {Rational(7, 48), Rational(-1, 8)};
      d3 = {Rational(7, 48), Rational(1, 8)};
      break;
    case CaseTag::kA1PrimeMod4Eq1AllInert: {
      const Rational coeff = inert_prime_product(d) / 8;
      d1 = {sixth, -coeff};
      d3 = {sixth, coeff};
      break;
    }
    case CaseTag::kA1PrimeMod4Eq3AllInert: {
      const Rational coeff = inert_prime_product(d) / 8;
      d1 = {sixth, coeff};
      d3 = {sixth, -coeff};
      break;
    }
  }
  return out;
}

std::array<double, 4> evaluate(const DensityProfile& profile, double c_value) {
  if (!(c_value > 0.0 && c_value < 1.0))
    throw precondition_error("evaluate requires 0 < c_value < 1");
  std::array<double, 4> out{};
  for (int l = 0; l < 4; ++l) out[l] = evaluate(profile.deltas[l], c_value);
  return out;
}

}  // namespace resorder
