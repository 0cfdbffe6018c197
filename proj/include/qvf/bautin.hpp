#pragma once

#include "qvf/symbolic.hpp"

#include <vector>

namespace qvf::bautin {

using symbolic::ParamPoly;
using symbolic::QuasiTrigPoly;

// Jet of the return map at the origin for lambda1 = 0: P(x) - x = sum a_j x^j.
// a[0] is unused; a[1] = 1 and a[2] = 0 exactly.
struct JetCoefficients {
  std::vector<ParamPoly> a;  // size 8, indices 1..7 meaningful
};

// The published decomposition cofactors, transcribed verbatim as exact
// polynomials (pi symbolic). alpha0 = -2pi, beta0 = -2pi/3, gamma0 = -5pi/4.
struct AppendixCofactors {
  ParamPoly alpha0, beta0, beta1, gamma0, gamma1, gamma2;
};

struct DecompositionReport {
  // Identity residuals, all required to be the zero polynomial:
  //   residual3 = a3 - alpha0 g2
  //   residual5 = a5 - (beta0 g3 + beta1 g2)
  //   residual7 = a7 - (gamma0 g4 + gamma1 g3 + gamma2 g2)
  ParamPoly residual3, residual5, residual7;
  // Ideal-membership remainders of a4 and a6 modulo (g2, g3, g4); the
  // corresponding cofactors are not published, so only remainder = 0 is
  // checked and the recovered cofactors are reported.
  ParamPoly remainder4, remainder6;
  std::vector<ParamPoly> cofactors4, cofactors6;  // vs (g2, g3, g4)
  bool identities_pass = false;

  // Numeric constants of the 7-jet bounds, evaluated at high precision.
  double B1 = 0, C1 = 0, C2 = 0;
  bool B1_pass = false;  // B1 < 500
  bool C1_pass = false;  // C1 < 500
  bool C2_pass = false;  // C2 in [4e4, 1e5]

  // Sup of |g_j| over the union of the three normalized cells: dense grid
  // value, analytic triangle-inequality cap, and the claimed bound.
  struct Sup {
    double grid = 0;
    double cap = 0;
    double claimed = 0;
    bool pass = false;  // grid <= claimed (cap reported alongside)
  };
  Sup sup_g2, sup_g3, sup_g4;
  bool constants_filled = false;
};

struct SplittingReport {
  double alpha = 0, beta = 0, eps = 0;
  double lhs_alpha = 0, rhs_alpha = 0;  // alpha (1 + B1/|beta0|) <= beta/2
  bool alpha_pass = false;
  double lhs_beta = 0, rhs_beta = 0;  // beta (1 + C2/|gamma0|) <= 1/2
  bool beta_pass = false;
  double m2 = 0, m3 = 0, m4 = 0;  // 2pi a e^3, (2pi/3)(b/2) e^5, (5pi/8) e^7
  bool ordering_pass = false;     // m2 > m3 > m4
  double m4_floor = 2e-23;        // claimed floor; reported, not asserted
  bool m4_above_floor = false;
};

// R_1 = 0 (lambda1 = 0) and R_i = (-1)^i f g^{i-2} for i >= 2, where f, g are
// the angular coefficients of the radial equation.
QuasiTrigPoly radial_coefficient(int i);

// v_1..v_n of the series w(theta) = sum v_i(theta) x^i solving
// dw/dtheta = sum R_i w^i with v_1 = 1 and v_i(0) = 0 for i >= 2.
// Returned vector has size n + 1 with index 0 unused.
std::vector<QuasiTrigPoly> variational_coefficients(int n);

// a_j = v_j(2pi) for j = 1..7.
JetCoefficients jet();

const AppendixCofactors& appendix_cofactors();

// Identity residuals for j = 3, 5, 7 against the transcribed cofactors plus
// membership remainders for j = 4, 6. Throws NumericalError with code
// "TranscriptionMismatch" carrying the offending residual if any identity
// fails.
DecompositionReport verify_appendix();

// Fills B1/C1/C2 (50-digit evaluation) and the grid/cap sup estimates of
// |g2|, |g3|, |g4| over the three normalized cells into the report.
void verify_constant_bounds(DecompositionReport& report);

SplittingReport verify_splitting_constants(double alpha = 2e-8,
                                           double beta = 1e-5,
                                           double eps = 5e-4);

}  // namespace qvf::bautin
