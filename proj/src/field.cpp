#include "qvf/field.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>

namespace qvf::field {

namespace {

bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kCellSlack = 1.0 + 1e-12;

}  // namespace

const char* form_name(Form f) {
  switch (f) {
    case Form::N1: return "N1";
    case Form::N2: return "N2";
    case Form::N3: return "N3";
    default: return "Linear";
  }
}

FieldParams make_field(double lambda1, Cplx A, Cplx B, Cplx C, Form form) {
  if (!std::isfinite(lambda1) || !finite(A) || !finite(B) || !finite(C))
    throw InputError("NonFinite", "field coefficients must be finite");
  if (lambda1 < 0) throw InputError("NegativeLambda1", "lambda1 must be >= 0");
  auto check = [](bool ok, const char* what) {
    if (!ok) throw InputError("FormMismatch", what);
  };
  switch (form) {
    case Form::N1:
      check(A == Cplx(1, 0), "form N1 requires A = 1");
      check(std::abs(B) <= 2 * kCellSlack, "form N1 requires |B| <= 2");
      check(std::abs(C) <= 1 * kCellSlack, "form N1 requires |C| <= 1");
      break;
    case Form::N2:
      check(B == Cplx(2, 0), "form N2 requires B = 2");
      check(std::abs(A) <= 1 * kCellSlack, "form N2 requires |A| <= 1");
      check(std::abs(C) <= 1 * kCellSlack, "form N2 requires |C| <= 1");
      break;
    case Form::N3:
      check(C == Cplx(1, 0), "form N3 requires C = 1");
      check(std::abs(A) <= 1 * kCellSlack, "form N3 requires |A| <= 1");
      check(std::abs(B) <= 2 * kCellSlack, "form N3 requires |B| <= 2");
      break;
    case Form::Linear:
      check(A == Cplx() && B == Cplx() && C == Cplx(), "form Linear requires A = B = C = 0");
      break;
  }
  return FieldParams{lambda1, A, B, C, form};
}

NormalizeResult normalize(Cplx mu_raw, Cplx A_raw, Cplx B_raw, Cplx C_raw) {
  if (!finite(mu_raw) || !finite(A_raw) || !finite(B_raw) || !finite(C_raw))
    throw InputError("NonFinite", "field coefficients must be finite");
  double q = mu_raw.imag();
  if (q == 0.0)
    throw InputError("ZeroImaginaryPart", "Im(mu) = 0: not a focus of the assumed form");

  // Stage 1: time scale to Im(mu) = 1.
  double c_prime = 1.0 / q;
  Cplx mu = mu_raw * c_prime;
  Cplx A = A_raw * c_prime, B = B_raw * c_prime, C = C_raw * c_prime;

  // Stage 2: force lambda1 >= 0 by simultaneous time reversal + conjugation,
  // which maps (mu, A, B, C) -> (-conj mu, -conj A, -conj B, -conj C).
  bool flip = mu.real() < 0;
  if (flip) {
    mu = -std::conj(mu);
    A = -std::conj(A);
    B = -std::conj(B);
    C = -std::conj(C);
  }

  // Stage 3: z-scale into the cell with the largest of (|A|, |B|/2, |C|);
  // ties resolve N1 > N2 > N3. The scale preserves mu (time factor 1).
  double ma = std::abs(A), mb = std::abs(B) / 2, mc = std::abs(C);
  double top = std::max({ma, mb, mc});
  Form form;
  Cplx c3;
  if (top == 0.0) {
    form = Form::Linear;
    c3 = 1.0;
  } else if (ma >= mb && ma >= mc) {
    form = Form::N1;
    c3 = std::conj(A) / std::norm(A);  // modulus 1/|A|, phase -arg A
  } else if (mb >= mc) {
    form = Form::N2;
    c3 = 2.0 * B / std::norm(B);  // modulus 2/|B|, phase +arg B
  } else {
    form = Form::N3;
    c3 = std::polar(1.0 / mc, std::arg(C) / 3.0);
  }
  Cplx cc = std::conj(c3);
  A *= c3;
  B *= cc;
  C *= cc * cc / c3;
  // Snap the pinned coefficient (exact by the phase choice, up to rounding).
  if (form == Form::N1) A = Cplx(1, 0);
  if (form == Form::N2) B = Cplx(2, 0);
  if (form == Form::N3) C = Cplx(1, 0);

  // Flush negative zeros so equal fields serialize identically.
  auto canon = [](Cplx z) { return Cplx(z.real() + 0.0, z.imag() + 0.0); };
  A = canon(A);
  B = canon(B);
  C = canon(C);

  NormalizeTransform tr;
  tr.c_prime = c_prime;
  tr.conjugated = flip;
  tr.time_reversed = flip;
  // The recorded transform applies the scale first, then the flags; moving the
  // stage-3 scale across the conjugation replaces c3 by its conjugate.
  tr.c = canon(flip ? std::conj(c3) : c3);

  NormalizeResult res;
  res.transform = tr;
  res.field = make_field(mu.real(), A, B, C, form);
  return res;
}

CenterResiduals center_residuals(const FieldParams& f) {
  Cplx A = f.A, B = f.B, C = f.C;
  Cplx Bc = std::conj(B);
  CenterResiduals r;
  r.g1 = f.lambda1;
  r.g2 = (A * B).imag();
  r.g3 = ((2.0 * A + Bc) * (A - 2.0 * Bc) * Bc * C).imag();
  r.g4 = ((2.0 * A + Bc) * (std::norm(B) - std::norm(C)) * Bc * Bc * C).imag();
  return r;
}

double sigma_distance(const FieldParams& f) {
  CenterResiduals r = center_residuals(f);
  return std::abs(r.g1) + std::abs(r.g2) + std::abs(r.g3) + std::abs(r.g4);
}

SingularDecomposition singular_decomposition(const FieldParams& f) {
  if (!(f.A == Cplx(1, 0)))
    throw InputError("FormMismatch", "singular decomposition requires A = 1");
  Cplx mu = f.mu();
  SingularDecomposition d;
  d.b = f.B - mu / std::conj(mu);
  d.c = f.C;
  d.kappa_distance = std::sqrt(std::norm(d.b) + std::norm(d.c));
  return d;
}

namespace {

// q(u,v) = c20 u^2 + c11 uv + c02 v^2 + c10 u + c01 v (both equations vanish
// at the origin, so there is no constant term).
struct Conic {
  Cplx c20, c11, c02, c10, c01;

  Conic rotated(double co, double si) const {
    Conic r;
    r.c20 = c20 * co * co + c11 * co * si + c02 * si * si;
    r.c11 = 2.0 * (c02 - c20) * co * si + c11 * (co * co - si * si);
    r.c02 = c20 * si * si - c11 * co * si + c02 * co * co;
    r.c10 = c10 * co + c01 * si;
    r.c01 = -c10 * si + c01 * co;
    return r;
  }
};

using Poly = std::array<Cplx, 5>;  // ascending degree, degree <= 4

Poly pmul(const Poly& a, const Poly& b, int da, int db) {
  Poly r{};
  for (int i = 0; i <= da; ++i)
    for (int j = 0; j <= db; ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Resultant in u of two quadratics-in-u whose coefficients are polynomials in
// v, with a parallel magnitude bound used for the identically-zero test.
void resultant_u(const Conic& e1, const Conic& e2, Poly& res, Poly& bound) {
  // e: a2 u^2 + a1(v) u + a0(v), a1 = c11 v + c10, a0 = c02 v^2 + c01 v.
  auto a2 = [](const Conic& e) { return Poly{e.c20}; };
  auto a1 = [](const Conic& e) { return Poly{e.c10, e.c11}; };
  auto a0 = [](const Conic& e) { return Poly{Cplx(0), e.c01, e.c02}; };
  auto comb = [&](const Poly& x, const Poly& y, int dx, int dy, bool minus) {
    Poly r{};
    for (int i = 0; i <= std::max(dx, dy); ++i) r[i] = minus ? x[i] - y[i] : x[i] + y[i];
    return r;
  };
  auto mag = [](const Poly& p) {
    Poly r{};
    for (int i = 0; i < 5; ++i) r[i] = std::abs(p[i]);
    return r;
  };

  Poly m1 = comb(pmul(a2(e1), a0(e2), 0, 2), pmul(a0(e1), a2(e2), 2, 0), 2, 2, true);
  Poly m2 = comb(pmul(a2(e1), a1(e2), 0, 1), pmul(a1(e1), a2(e2), 1, 0), 1, 1, true);
  Poly m3 = comb(pmul(a1(e1), a0(e2), 1, 2), pmul(a0(e1), a1(e2), 2, 1), 3, 3, true);
  res = comb(pmul(m1, m1, 2, 2), pmul(m2, m3, 1, 3), 4, 4, true);

  Poly n1 = comb(mag(pmul(a2(e1), a0(e2), 0, 2)), mag(pmul(a0(e1), a2(e2), 2, 0)), 2, 2, false);
  Poly n2 = comb(mag(pmul(a2(e1), a1(e2), 0, 1)), mag(pmul(a1(e1), a2(e2), 1, 0)), 1, 1, false);
  Poly n3 = comb(mag(pmul(a1(e1), a0(e2), 1, 2)), mag(pmul(a0(e1), a1(e2), 2, 1)), 3, 3, false);
  bound = comb(pmul(n1, n1, 2, 2), pmul(n2, n3, 1, 3), 4, 4, false);
}

std::vector<Cplx> poly_roots(const Poly& p, double scale) {
  int deg = 4;
  while (deg > 0 && std::abs(p[deg]) <= 1e-10 * scale) --deg;
  std::vector<Cplx> roots;
  if (deg == 0) return roots;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p[i] / p[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion);
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

std::vector<Cplx> quadratic_roots(Cplx a2, Cplx a1, Cplx a0, double scale) {
  std::vector<Cplx> roots;
  if (std::abs(a2) > 1e-12 * scale) {
    Cplx d = std::sqrt(a1 * a1 - 4.0 * a2 * a0);
    // Stable split: the larger-magnitude root first, the other via Vieta.
    Cplx q = (std::abs(a1 - d) > std::abs(a1 + d)) ? (a1 - d) : (a1 + d);
    if (std::abs(q) > 0) {
      Cplx r1 = -q / (2.0 * a2);
      roots.push_back(r1);
      if (std::abs(r1) > 0) roots.push_back(a0 / (a2 * r1));
    } else {
      roots.push_back(Cplx(0));
    }
  } else if (std::abs(a1) > 1e-12 * scale) {
    roots.push_back(-a0 / a1);
  }
  return roots;
}

struct System {
  Cplx mu, A, B, C;
  Cplx f1(Cplx u, Cplx v) const { return mu * u + A * u * u + B * u * v + C * v * v; }
  Cplx f2(Cplx u, Cplx v) const {
    return std::conj(mu) * v + std::conj(A) * v * v + std::conj(B) * u * v +
           std::conj(C) * u * u;
  }
  bool newton(Cplx& u, Cplx& v) const {
    for (int it = 0; it < 80; ++it) {
      Cplx r1 = f1(u, v), r2 = f2(u, v);
      if (std::abs(r1) + std::abs(r2) < 1e-15 * (1 + std::norm(u) + std::norm(v))) return true;
      Cplx j11 = mu + 2.0 * A * u + B * v;
      Cplx j12 = B * u + 2.0 * C * v;
      Cplx j21 = std::conj(B) * v + 2.0 * std::conj(C) * u;
      Cplx j22 = std::conj(mu) + 2.0 * std::conj(A) * v + std::conj(B) * u;
      Cplx det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-14) return false;
      Cplx du = (r1 * j22 - r2 * j12) / det;
      Cplx dv = (r2 * j11 - r1 * j21) / det;
      u -= du;
      v -= dv;
      if (std::abs(u) + std::abs(v) > 1e8) return false;
    }
    return true;  // slow (multiple root) convergence still acceptable; residual checked by caller
  }
};

}  // namespace

SingularPointSet singular_points(const FieldParams& f, double tol) {
  if (!(tol > 0)) throw InputError("BadTolerance", "tol must be positive");
  SingularPointSet out;
  if (f.A == Cplx() && f.B == Cplx() && f.C == Cplx()) return out;  // only the origin

  System sys{f.mu(), f.A, f.B, f.C};
  Conic e1{f.A, f.B, f.C, sys.mu, Cplx(0)};
  Conic e2{std::conj(f.C), std::conj(f.B), std::conj(f.A), Cplx(0), std::conj(sys.mu)};

  double coef_scale =
      std::max({std::abs(f.A), std::abs(f.B), std::abs(f.C), std::abs(sys.mu)});

  // Rotate to generic position so both equations are honestly quadratic in u.
  constexpr std::array<double, 3> angles = {0.0, 0.9282736251, 2.1598274098};
  double best = -1, bco = 1, bsi = 0;
  Conic r1 = e1, r2 = e2;
  for (double phi : angles) {
    double co = std::cos(phi), si = std::sin(phi);
    Conic t1 = e1.rotated(co, si), t2 = e2.rotated(co, si);
    double lead = std::min(std::abs(t1.c20), std::abs(t2.c20));
    if (lead > best) {
      best = lead;
      r1 = t1;
      r2 = t2;
      bco = co;
      bsi = si;
    }
  }

  Poly res, bound;
  resultant_u(r1, r2, res, bound);

  bool all_zero = true;
  double res_scale = 0;
  for (int d = 0; d < 5; ++d) {
    res_scale = std::max(res_scale, std::abs(res[d]));
    if (std::abs(res[d]) > 1e-11 * (std::abs(bound[d]) + 1e-300)) all_zero = false;
  }
  if (all_zero) {
    out.degenerate = true;
    return out;
  }

  std::vector<std::pair<Cplx, Cplx>> candidates;
  for (Cplx vr : poly_roots(res, res_scale)) {
    Cplx a2 = r1.c20;
    Cplx a1 = r1.c11 * vr + r1.c10;
    Cplx a0 = r1.c02 * vr * vr + r1.c01 * vr;
    double s = coef_scale * (1 + std::norm(vr));
    for (Cplx ur : quadratic_roots(a2, a1, a0, s)) {
      Cplx res2 = r2.c20 * ur * ur + r2.c11 * ur * vr + r2.c02 * vr * vr + r2.c10 * ur +
                  r2.c01 * vr;
      if (std::abs(res2) > 1e-4 * s * (1 + std::abs(ur))) continue;  // paired with other branch
      candidates.emplace_back(bco * ur - bsi * vr, bsi * ur + bco * vr);
    }
  }

  for (auto [u, v] : candidates) {
    if (!sys.newton(u, v)) continue;
    double size = 1 + std::abs(u) + std::abs(v);
    if (std::abs(sys.f1(u, v)) + std::abs(sys.f2(u, v)) > tol * size) continue;
    if (std::abs(u) + std::abs(v) < 1e-6) continue;  // the origin
    bool dup = false;
    for (const auto& p : out.points)
      dup = dup || (std::abs(p.u - u) + std::abs(p.v - v) < 1e-7 * size);
    if (dup) continue;
    SingularPoint sp;
    sp.u = u;
    sp.v = v;
    sp.is_real = std::abs(v - std::conj(u)) <= tol;
    out.points.push_back(sp);
  }
  std::sort(out.points.begin(), out.points.end(), [](const SingularPoint& a, const SingularPoint& b) {
    return std::tuple(a.u.real(), a.u.imag(), a.v.real(), a.v.imag()) <
           std::tuple(b.u.real(), b.u.imag(), b.v.real(), b.v.imag());
  });
  return out;
}

bool in_tame_region(const FieldParams& f, double delta, Cplx z) {
  if (!(delta > 0 && delta < 1)) throw InputError("BadDelta", "delta must lie in (0,1)");
  if (std::abs(z) > 1.0 / delta) return false;
  if (z == Cplx()) return true;  // the origin is never deleted

  SingularPointSet sp = singular_points(f, 1e-9);
  if (sp.degenerate) {
    // Singular-field case: the non-origin singular set is the real line
    // a z + conj(a z) + 1 = 0 with a = A/mu; keep the disc constraint plus
    // distance to that line when it is recoverable.
    Cplx mu = f.mu();
    Cplx a = f.A / mu;
    bool line_ok = std::abs(f.C) <= 1e-9 &&
                   std::abs(f.B - mu * std::conj(a)) <= 1e-9 && std::abs(a) > 1e-12;
    if (!line_ok) return true;
    double dist = std::abs(2.0 * (a * z).real() + 1.0) / (2.0 * std::abs(a));
    return dist >= delta;
  }
  Cplx zb = std::conj(z);
  for (const auto& p : sp.points) {
    double d2 = std::norm(z - p.u) + std::norm(zb - p.v);
    if (d2 < delta * delta) return false;
  }
  return true;
}

PolarData polar_data(const FieldParams& f, double theta) {
  Cplx e1 = std::polar(1.0, theta);
  Cplx em1 = std::conj(e1);
  Cplx em3 = em1 * em1 * em1;
  PolarData p;
  p.h = f.A * e1 + f.B * em1 + f.C * em3;
  p.f = p.h.real();
  p.g = p.h.imag();
  return p;
}

bool lambda1_gate(const FieldParams& f, double delta) {
  if (!(delta > 0 && delta < 1)) throw InputError("BadDelta", "delta must lie in (0,1)");
  return f.lambda1 <= 4.0 / delta;
}

}  // namespace qvf::field
