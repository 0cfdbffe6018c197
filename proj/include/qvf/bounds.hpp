#pragma once

#include "qvf/bigfloat.hpp"

#include <array>
#include <complex>

namespace qvf::bounds {

using Cplx = std::complex<double>;

// A magnitude X so large that only ln ln X is representable. linear_correction
// stores additive ln-scale terms (such as ln|ln sigma|) that are negligible
// against lnln but reported separately.
struct LogLogMagnitude {
  BigFloat lnln;
  double linear_correction = 0;
};

// Lexicographic: by lnln, then by linear_correction. Returns -1, 0 or 1.
int compare(const LogLogMagnitude& a, const LogLogMagnitude& b);

// Growth-and-zeros estimate ln(M/m) e^{2D/eps}. The first factor is the
// Bernstein index of a function with sup M on the ambient domain and sup m on
// the inner compact; D is the intrinsic diameter, eps the gap.
// Throws InputError("DomainError") unless M >= m > 0, D > 0, eps > 0.
double zero_bound(double M, double m, double D, double eps);

// Lower bound for the maximal displacement on the inner compact:
// 1e-26 sigma for lambda1 <= 0.1 (closed interval), else 10^{-26/delta}.
double lower_m(double lambda1, double delta, double sigma);

// beta = delta^14 kappa / 1e10.
double beta(double delta, double kappa);

// kappa' = delta^12 kappa / (1e6 * 24 sqrt 2).
double kappa_prime(double delta, double kappa);

// ln eps for the gap eps = (beta delta / 32) e^{-2 pi L}, L = 6145 delta^-3
// beta^-2. Returned in ln scale: the gap itself underflows every float.
double gap_eps(double delta, double beta);

// ln of the geometric factor cap: (1e5 - 1) delta^-3 beta^-2.
double geom_exponent(double delta, double beta);

// Bernstein index cap ln 2 - ln delta + (26/delta) ln 10 - ln sigma.
double bernstein_cap(double delta, double sigma);

// Final count: lnln = 1e25 delta^-31 kappa^-2, correction ln|ln sigma|.
LogLogMagnitude hilbert_bound(double delta, double sigma, double kappa);

// Real homogeneous cubic form in (cos theta, sin theta); c[k] multiplies
// cos^{3-k} sin^k.
struct TrigCubic {
  std::array<double, 4> c{};

  double eval(double theta) const;
  // Unnormalized L2 norm over [0, 2pi], computed by Parseval.
  double l2_norm() const;
};

// The cubic Im(conj(mu) (b e^{-i theta} + c e^{-3 i theta})) of the strip
// machinery.
TrigCubic strip_cubic(Cplx mu, Cplx b, Cplx c);

// H(theta) = A prod_j sin(theta - theta_j); theta_j complex in conjugate
// pairs when the tangent cubic has complex roots, pi/2 entries when its
// degree drops. Throws InputError("ZeroPolynomial") on the zero form.
struct TrigFactorization {
  double A = 0;
  std::array<Cplx, 3> theta{};
};
TrigFactorization trig_roots(const TrigCubic& H);

struct TrigMinBound {
  double lower_bound = 0;    // (alpha^3 / 24) l2_norm
  double empirical_min = 0;  // min |H| over sampled real theta alpha-far from roots
};

// Samples 1e4 points of [0, 2pi); a point qualifies when its complex distance
// to every root (modulo pi) is at least alpha. Throws
// NumericalError("EmptyRegion") when no sample qualifies.
TrigMinBound trig_min_bound(const TrigCubic& H, double alpha);

// Root separation radius delta^4 / 100.
double root_distance_threshold(double delta);

// Cartesian delta-distance converted to complex polar coordinates: (2/3) delta^2.
double polar_distance_floor(double delta);

struct BoundReport {
  double eps_lambda = 0;      // admissible radius at lambda1
  double L_cap = 0;           // 6145 delta^-3 beta^-2
  double m_lower = 0;
  double beta = 0;
  double kappa_prime = 0;
  double gap_eps = 0;         // ln scale
  double geom_exponent = 0;   // ln scale
  double bernstein_cap = 0;
  LogLogMagnitude H;
};

BoundReport bound_report(double lambda1, double delta, double sigma, double kappa);

}  // namespace qvf::bounds
