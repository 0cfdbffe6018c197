#pragma once

#include "qvf/bigfloat.hpp"
#include "qvf/field.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qvf::poincare {

using field::Cplx;
using field::FieldParams;

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double guard = 1e-6;     // abort when |1 + w g| drops below this
  double escape_cap = 1e3;  // abort when |w| exceeds this
};

struct TrajectorySample {
  double theta;
  Cplx w;
};

// Solution of dw/dtheta = w (lambda1 + w f(theta)) / (1 + w g(theta)) over
// [0, 2pi]; samples at accepted steps, theta strictly increasing, first
// sample at 0 and last at 2pi.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  long steps = 0;
  long rejected = 0;
  double min_denominator = 0;  // min |1 + w g| seen along the way
};

// Errors (NumericalError codes): "SingularCrossing" when |1 + wg| < guard,
// "Escape" when |w| > escape_cap, "StepFailure" when the step underflows.
Trajectory integrate(const FieldParams& f, Cplx w0,
                     const IntegratorOptions& opt = {});

// w(2pi) with w(0) = x.
Cplx poincare_map(const FieldParams& f, Cplx x, const IntegratorOptions& opt = {});

// P(x) - x for real x > 0; real by the reality of the equation.
double displacement(const FieldParams& f, double x, const IntegratorOptions& opt = {});

// High-precision displacement for jet-remainder studies: integrates in
// BigFloat arithmetic at the current global precision with the given local
// tolerances (absolute values; pass e.g. 1e-25/1e-30 for x ~ 1e-3).
BigFloat displacement_hp(const FieldParams& f, const BigFloat& x,
                         double rel_tol, double abs_tol);

// eps(lambda): 0.0005 for lambda1 <= 0.1, else 0.005 e^{-4 lambda1 pi}.
double admissible_radius(const FieldParams& f);

// Lipschitz constant used by the coarse a-priori estimates: 0.2 for
// lambda1 <= 0.1, else 2 lambda1.
double lipschitz_L(const FieldParams& f);

struct LimitCycleRecord {
  double x_star = 0;       // fixed point of P on the positive x-semiaxis
  double residual = 0;     // |P(x_star) - x_star|
  int stability = 0;       // sign of d(displacement)/dx; -1 = attracting
  bool tame = false;       // max_radius <= 1/delta and min_singular_distance >= delta
  double min_singular_distance = 0;
  double max_radius = 0;
};

struct IntegrationHole {
  double x_lo = 0, x_hi = 0;
  std::string reason;
};

struct CycleSearchResult {
  std::vector<LimitCycleRecord> cycles;
  std::vector<IntegrationHole> holes;  // subintervals where integration failed
  // Grid intervals where the displacement sits below the numeric noise floor
  // (center-like behavior); no roots are reported inside them.
  std::vector<std::pair<double, double>> degenerate_intervals;
  double a_lambda = 0;     // largest tame x_star
  bool a_defined = false;  // false when no tame cycle was found
};

// Samples the displacement on a geometric-then-uniform grid over
// [x_min, 1/delta], brackets sign changes, bisects to relative tolerance
// 1e-10, deduplicates roots closer than 1e-8 and classifies each.
CycleSearchResult find_cycles(const FieldParams& f, double delta,
                              double x_min = 1e-6, int grid_points = 2048);

struct TameClassification {
  bool tame = false;
  double min_singular_distance = 0;
  double max_radius = 0;
};

// Integrates the orbit through (x_star, theta = 0) and checks every sample
// against the deleted neighborhood structure of B(lambda, delta).
TameClassification classify_tame(const FieldParams& f, double delta, double x_star);

// K-descriptor: segment [0, a] on the real axis plus the circle |w| = eps;
// a <= 0 means the segment is absent (no tame cycle found).
struct KRegion {
  double a_lambda = 0;
};
// U-descriptor: circle |w| = radius (boundary sampling is enough for the
// maximum of a holomorphic function).
struct URegion {
  double radius = 0;
};

struct DisplacementMax {
  double value = 0;
  int samples = 0;
};

DisplacementMax max_displacement(const FieldParams& f, const KRegion& region,
                                 int samples = 256);
DisplacementMax max_displacement(const FieldParams& f, const URegion& region,
                                 int samples = 256);

struct GronwallReport {
  double sup_actual = 0;
  double bound = 0;  // |w0| e^{2 pi L}
};

// Contract: sup_actual <= bound for |w0| <= eps(lambda).
GronwallReport gronwall_check(const FieldParams& f, Cplx w0);

struct DivergenceReport {
  double actual = 0;  // max_theta |w_{lambda1}(theta) - w_0(theta)|
  double bound = 0;   // 2 pi Delta e^{2 pi L}, Delta = lambda1/96
};

// Compares the trajectory of f against the same field with lambda1 = 0.
DivergenceReport divergence_check(const FieldParams& f, Cplx w0);

struct GapReport {
  double beta = 0;
  double S_est = 0;          // min field slope |dr/dtheta| on the lower strip edge
  double s_est = 0;          // max curve slope |(1/g)'| on its theta-projection
  double minH_on_gamma = 0;  // min |H| over the sampled arc
  double H_l2 = 0;           // unnormalized L2 norm over [0, 2pi]
  double H_l2_threshold = 0; // (|mu|/sqrt 2) kappa
  bool empty_arc = false;    // lower edge never meets B(lambda, delta)
  int sample_count = 0;
  bool pass = false;  // H_l2 >= threshold and S_est > s_est (when arc nonempty)
};

// Lower-strip no-contact verification: beta = delta^14 kappa / 1e10; the
// lower edge is r = -1/g(theta) - beta where g < 0, restricted to
// B(lambda, delta). Requires A = 1 and kappa-distance >= kappa.
GapReport strip_gap_check(const FieldParams& f, double delta, double kappa);

}  // namespace qvf::poincare
