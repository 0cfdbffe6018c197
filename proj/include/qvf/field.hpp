#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qvf/errors.hpp"

namespace qvf::field {

using Cplx = std::complex<double>;

enum class Form { N1, N2, N3, Linear };

const char* form_name(Form f);

// Quadratic field  dz/dt = mu z + A z^2 + B z conj(z) + C conj(z)^2,
// mu = lambda1 + i, in one of the normalized cells (or Linear for numeric tests).
struct FieldParams {
  double lambda1 = 0;
  Cplx A, B, C;
  Form form = Form::Linear;

  Cplx mu() const { return {lambda1, 1.0}; }
};

// Validates invariants (lambda1 >= 0, cell bounds with a small rounding slack,
// pinned coefficient exact). Throws InputError on violation.
FieldParams make_field(double lambda1, Cplx A, Cplx B, Cplx C, Form form);

struct NormalizeTransform {
  Cplx c{1.0, 0.0};
  double c_prime = 1.0;
  bool conjugated = false;
  bool time_reversed = false;
};

struct NormalizeResult {
  FieldParams field;
  NormalizeTransform transform;
};

// Canonical representative of the orbit of (mu, A, B, C) under
// z -> cz, t -> c't, plus time reversal + conjugation to force lambda1 >= 0.
// Applying the transform in that order to the input reproduces the output
// (up to IEEE rounding of the scale factors).
NormalizeResult normalize(Cplx mu_raw, Cplx A_raw, Cplx B_raw, Cplx C_raw);

struct CenterResiduals {
  double g1 = 0, g2 = 0, g3 = 0, g4 = 0;
};

// Focal residuals whose simultaneous vanishing characterizes a center.
CenterResiduals center_residuals(const FieldParams& f);

// Sum of |g_j|; the field is sigma-distant from the center set iff >= sigma.
double sigma_distance(const FieldParams& f);

struct SingularDecomposition {
  Cplx b, c;
  double kappa_distance = 0;
};

// Splits an A = 1 field into the singular part (1, mu/conj(mu), 0) plus the
// remainder u = b z conj(z) + c conj(z)^2; kappa_distance = sqrt(|b|^2+|c|^2).
SingularDecomposition singular_decomposition(const FieldParams& f);

struct SingularPoint {
  Cplx u, v;
  bool is_real = false;  // v == conj(u) within tolerance
};

struct SingularPointSet {
  std::vector<SingularPoint> points;  // origin excluded
  bool degenerate = false;            // non-isolated singular set
};

// Non-origin solutions of the complexified pair
//   mu u + A u^2 + B uv + C v^2 = 0,  conj(mu) v + conj(A) v^2 + conj(B) uv + conj(C) u^2 = 0.
SingularPointSet singular_points(const FieldParams& f, double tol);

// Disc |z| <= 1/delta minus open delta-neighborhoods of the non-origin
// singular points (Euclidean distance on C^2 with z embedded as (z, conj z)).
// Degenerate singular sets fall back to disc + real singular line distance.
bool in_tame_region(const FieldParams& f, double delta, Cplx z);

struct PolarData {
  Cplx h;
  double f = 0, g = 0;
};

// h(θ) = A e^{iθ} + B e^{-iθ} + C e^{-3iθ}; f = Re h, g = Im h. The polar form
// of the field is  dr/dt = r(lambda1 + r f),  dθ/dt = 1 + r g.
PolarData polar_data(const FieldParams& f, double theta);

// True iff lambda1 <= 4/delta (larger lambda1 admits no tame cycles).
bool lambda1_gate(const FieldParams& f, double delta);

}  // namespace qvf::field
