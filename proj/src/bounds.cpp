#include "qvf/bounds.hpp"

#include "qvf/errors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace qvf::bounds {

int compare(const LogLogMagnitude& a, const LogLogMagnitude& b) {
  if (a.lnln != b.lnln) return a.lnln < b.lnln ? -1 : 1;
  if (a.linear_correction != b.linear_correction)
    return a.linear_correction < b.linear_correction ? -1 : 1;
  return 0;
}

double zero_bound(double M, double m, double D, double eps) {
  if (!(m > 0) || M < m) throw InputError("DomainError", "need M >= m > 0");
  if (!(D > 0) || !(eps > 0)) throw InputError("DomainError", "need D, eps > 0");
  return std::log(M / m) * std::exp(2 * D / eps);
}

double lower_m(double lambda1, double delta, double sigma) {
  if (lambda1 <= 0.1) return 1e-26 * sigma;
  return std::pow(10.0, -26.0 / delta);
}

double beta(double delta, double kappa) {
  return std::pow(delta, 14) * kappa / 1e10;
}

double kappa_prime(double delta, double kappa) {
  return std::pow(delta, 12) * kappa / (1e6 * 24 * std::sqrt(2.0));
}

double gap_eps(double delta, double beta) {
  double L = 6145 * std::pow(delta, -3) * std::pow(beta, -2);
  return std::log(beta * delta / 32) - 2 * M_PI * L;
}

double geom_exponent(double delta, double beta) {
  return (1e5 - 1) * std::pow(delta, -3) * std::pow(beta, -2);
}

double bernstein_cap(double delta, double sigma) {
  return std::log(2.0) - std::log(delta) + (26.0 / delta) * std::log(10.0) -
         std::log(sigma);
}

LogLogMagnitude hilbert_bound(double delta, double sigma, double kappa) {
  LogLogMagnitude h;
  BigFloat d(delta), k(kappa);
  h.lnln = pow(BigFloat(10), 25) / (pow(d, 31) * k * k);
  h.linear_correction = std::log(std::abs(std::log(sigma)));
  return h;
}

double TrigCubic::eval(double theta) const {
  double co = std::cos(theta), si = std::sin(theta);
  return ((c[3] * si + c[2] * co) * si + c[1] * co * co) * si + c[0] * co * co * co;
}

double TrigCubic::l2_norm() const {
  double p1 = (3 * c[0] + c[2]) / 4, q1 = (c[1] + 3 * c[3]) / 4;
  double p3 = (c[0] - c[2]) / 4, q3 = (c[1] - c[3]) / 4;
  return std::sqrt(M_PI * (p1 * p1 + q1 * q1 + p3 * p3 + q3 * q3));
}

TrigCubic strip_cubic(Cplx mu, Cplx b, Cplx c) {
  Cplx mb = std::conj(mu) * b, mc = std::conj(mu) * c;
  double p = mb.real(), q = mb.imag(), s = mc.real(), t = mc.imag();
  return {{q + t, -(p + 3 * s), q - 3 * t, -p + s}};
}

TrigFactorization trig_roots(const TrigCubic& H) {
  // H = cos^3(theta) P(tan theta), P(t) = c0 + c1 t + c2 t^2 + c3 t^3; each
  // vanished leading coefficient trades a finite tangent root for one at pi/2.
  double scale = std::max({std::abs(H.c[0]), std::abs(H.c[1]), std::abs(H.c[2]),
                           std::abs(H.c[3])});
  if (!(scale > 0)) throw InputError("ZeroPolynomial", "zero form has no factorization");
  int deg = 3;
  while (deg > 0 && std::abs(H.c[deg]) <= 1e-12 * scale) --deg;

  TrigFactorization fac;
  int nfinite = deg;
  if (deg > 0) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -H.c[i] / H.c[deg];
    Eigen::VectorXcd ev = comp.eigenvalues();
    for (int i = 0; i < deg; ++i) fac.theta[i] = std::atan(Cplx(ev(i)));
  }
  for (int i = nfinite; i < 3; ++i) fac.theta[i] = Cplx(M_PI / 2, 0);

  // Fix A by matching at the sample angle where the product is largest.
  double best = -1, best_theta = 0;
  Cplx best_prod;
  for (int k = 0; k < 16; ++k) {
    double th = 2 * M_PI * (k + 0.37) / 16;
    Cplx prod(1, 0);
    for (const auto& tj : fac.theta) prod *= std::sin(th - tj);
    if (std::abs(prod) > best) {
      best = std::abs(prod);
      best_theta = th;
      best_prod = prod;
    }
  }
  fac.A = H.eval(best_theta) / best_prod.real();
  return fac;
}

TrigMinBound trig_min_bound(const TrigCubic& H, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw InputError("DomainError", "alpha must lie in (0,1)");
  TrigFactorization fac = trig_roots(H);
  TrigMinBound out;
  out.lower_bound = alpha * alpha * alpha / 24 * H.l2_norm();

  const int n = 10000;
  double emp = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double th = 2 * M_PI * i / n;
    bool far = true;
    for (const auto& tj : fac.theta) {
      // sin(theta - tj) repeats modulo pi; measure against the nearest copy.
      double d = std::remainder(th - tj.real(), M_PI);
      if (std::hypot(d, tj.imag()) < alpha) {
        far = false;
        break;
      }
    }
    if (far) emp = std::min(emp, std::abs(H.eval(th)));
  }
  if (!std::isfinite(emp))
    throw NumericalError("EmptyRegion", "no sample point is alpha-far from the roots");
  out.empirical_min = emp;
  return out;
}

double root_distance_threshold(double delta) {
  return std::pow(delta, 4) / 100;
}

double polar_distance_floor(double delta) {
  return 2.0 / 3.0 * delta * delta;
}

BoundReport bound_report(double lambda1, double delta, double sigma, double kappa) {
  BoundReport r;
  r.eps_lambda = lambda1 <= 0.1 ? 0.0005 : 0.005 * std::exp(-4 * lambda1 * M_PI);
  r.beta = beta(delta, kappa);
  r.kappa_prime = kappa_prime(delta, kappa);
  r.L_cap = 6145 * std::pow(delta, -3) * std::pow(r.beta, -2);
  r.m_lower = lower_m(lambda1, delta, sigma);
  r.gap_eps = gap_eps(delta, r.beta);
  r.geom_exponent = geom_exponent(delta, r.beta);
  r.bernstein_cap = bernstein_cap(delta, sigma);
  r.H = hilbert_bound(delta, sigma, kappa);
  return r;
}

}  // namespace qvf::bounds
