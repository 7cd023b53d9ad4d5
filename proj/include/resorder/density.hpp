#ifndef RESORDER_DENSITY_HPP
#define RESORDER_DENSITY_HPP

#include <array>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "resorder/arithmetic.hpp"

namespace resorder {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// A density value alpha + beta*C, exact in both coefficients. C is the
// quadratic-residue Euler constant evaluated elsewhere; keeping it symbolic
// lets tables be regenerated at any C precision without recomputation.
struct CTerm {
  Rational alpha;
  Rational beta;

  friend bool operator==(const CTerm&, const CTerm&) = default;
};

double evaluate(const CTerm& t, double c_value);

// Canonical rendering: "1/6", "7/48 - C/8", "1/6 + 3C/56", "0".
std::string exact_form_string(const CTerm& t);

// The four exact densities delta_0..delta_3 for a base a.
// Invariants: sum of alphas == 1, sum of betas == 0, beta_0 == beta_2 == 0,
// beta_1 == -beta_3 and beta_1 <= 0.
struct DensityProfile {
  std::uint64_t a = 0;
  CaseTag case_tag = CaseTag::kA1Mod4Eq1;
  std::array<CTerm, 4> deltas;
};

DensityProfile theoretical_profile(const SquarefreeDecomposition& d);

// delta_l = alpha_l + beta_l * c_value, as reals. Requires 0 < c_value < 1.
std::array<double, 4> evaluate(const DensityProfile& profile, double c_value);

}  // namespace resorder

#endif  // RESORDER_DENSITY_HPP
