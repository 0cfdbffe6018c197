#include "qvf/bautin.hpp"

#include "qvf/bigfloat.hpp"
#include "qvf/errors.hpp"
#include "qvf/field.hpp"
#include "qvf/parallel.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <span>

namespace qvf::bautin {

using symbolic::FG;
using symbolic::GaussRational;
using symbolic::Monomial;
using symbolic::build_fg;
using symbolic::gen_g2;
using symbolic::gen_g3;
using symbolic::gen_g4;
using symbolic::pp_reduce;
using symbolic::qt_eval_2pi;
using symbolic::qt_integrate;
using symbolic::qt_mul;

namespace {

QuasiTrigPoly qt_one() { return QuasiTrigPoly::constant(ParamPoly(GaussRational(1))); }

}  // namespace

QuasiTrigPoly radial_coefficient(int i) {
  if (i < 1) throw InputError("BadOrder", "radial coefficient index must be >= 1");
  if (i == 1) return QuasiTrigPoly();  // lambda1 = 0
  FG fg = build_fg();
  QuasiTrigPoly r = fg.f;
  for (int k = 0; k < i - 2; ++k) r = qt_mul(r, fg.g);
  if (i & 1) r = r * GaussRational(-1);
  return r;
}

std::vector<QuasiTrigPoly> variational_coefficients(int n) {
  if (n < 1 || n > 7) throw InputError("BadOrder", "order must lie in 1..7");
  FG fg = build_fg();

  std::vector<QuasiTrigPoly> R(n + 1);
  QuasiTrigPoly gpow = qt_one();
  for (int i = 2; i <= n; ++i) {
    QuasiTrigPoly t = qt_mul(fg.f, gpow);
    if (i & 1) t = t * GaussRational(-1);
    R[i] = std::move(t);
    if (i < n) gpow = qt_mul(gpow, fg.g);
  }

  // W[i][m] = [x^m] w(x)^i for w = sum_j v_j x^j; the x^m coefficient of w^i
  // only involves v_1..v_{m-i+1}, so the table fills in step order.
  std::vector<QuasiTrigPoly> v(n + 1);
  std::vector<std::vector<QuasiTrigPoly>> W(n + 1, std::vector<QuasiTrigPoly>(n + 1));
  v[1] = qt_one();
  W[1][1] = v[1];
  for (int m = 2; m <= n; ++m) {
    for (int i = 2; i <= m; ++i) {
      QuasiTrigPoly acc;
      for (int j = 1; j + i - 1 <= m; ++j)
        if (!W[i - 1][m - j].is_zero()) acc += qt_mul(v[j], W[i - 1][m - j]);
      W[i][m] = std::move(acc);
    }
    QuasiTrigPoly rhs;
    for (int i = 2; i <= m; ++i) rhs += qt_mul(R[i], W[i][m]);
    v[m] = qt_integrate(rhs);
    W[1][m] = v[m];
  }
  return v;
}

JetCoefficients jet() {
  std::vector<QuasiTrigPoly> v = variational_coefficients(7);
  JetCoefficients j;
  j.a.resize(8);
  for (int i = 1; i <= 7; ++i) j.a[i] = qt_eval_2pi(v[i]);
  return j;
}

namespace {

// One printed term: integer coefficient and exponents of (a1,a2,b1,b2,c1,c2,pi).
struct TermSpec {
  long k;
  std::array<std::uint8_t, symbolic::NVARS> e;
};

ParamPoly from_table(std::span<const TermSpec> terms, long num, long den) {
  ParamPoly inner;
  for (const TermSpec& t : terms) {
    Monomial m;
    m.e = t.e;
    inner.add_term(m, GaussRational(t.k));
  }
  // Overall factor (num/den) pi applied to the printed sum.
  return inner * ParamPoly::term(Monomial::var(symbolic::VPI), GaussRational(num, den));
}

AppendixCofactors build_cofactors() {
  using T = TermSpec;
  AppendixCofactors cf;
  cf.alpha0 = ParamPoly::term(Monomial::var(symbolic::VPI), GaussRational(-2));
  cf.beta0 = ParamPoly::term(Monomial::var(symbolic::VPI), GaussRational(-2, 3));
  cf.gamma0 = ParamPoly::term(Monomial::var(symbolic::VPI), GaussRational(-5, 4));

  //                 a1 a2 b1 b2 c1 c2 pi
  static const T beta1_terms[] = {
      {9,    {0, 2, 0, 0, 0, 0, 0}},  //  9 a2^2
      {-9,   {0, 1, 0, 1, 0, 0, 0}},  // -9 b2 a2
      {-6,   {0, 1, 0, 0, 0, 1, 0}},  // -6 c2 a2
      {-27,  {0, 1, 1, 0, 0, 0, 1}},  // -27 pi b1 a2
      {27,   {0, 0, 0, 2, 0, 0, 0}},  //  27 b2^2
      {21,   {0, 0, 0, 0, 0, 2, 0}},  //  21 c2^2
      {18,   {0, 0, 2, 0, 0, 0, 0}},  //  18 b1^2
      {20,   {0, 0, 0, 0, 2, 0, 0}},  //  20 c1^2
      {6,    {0, 0, 0, 1, 0, 1, 0}},  //   6 b2 c2
      {-27,  {1, 0, 0, 1, 0, 0, 1}},  // -27 b2 pi a1
      {-9,   {1, 0, 1, 0, 0, 0, 0}},  //  -9 a1 b1
  };
  cf.beta1 = from_table(beta1_terms, -2, 9);

  static const T gamma1_terms[] = {
      {300,  {0, 2, 0, 0, 0, 0, 0}},  //  300 a2^2
      {-558, {0, 1, 0, 1, 0, 0, 0}},  // -558 b2 a2
      {-240, {0, 1, 0, 0, 0, 1, 0}},  // -240 c2 a2
      {-384, {0, 1, 1, 0, 0, 0, 1}},  // -384 pi b1 a2
      {528,  {0, 0, 0, 2, 0, 0, 0}},  //  528 b2^2
      {204,  {0, 0, 0, 0, 0, 2, 0}},  //  204 c2^2
      {-36,  {2, 0, 0, 0, 0, 0, 0}},  //  -36 a1^2
      {288,  {0, 0, 2, 0, 0, 0, 0}},  //  288 b1^2
      {188,  {0, 0, 0, 0, 2, 0, 0}},  //  188 c1^2
      {168,  {0, 0, 0, 1, 0, 1, 0}},  //  168 b2 c2
      {-384, {1, 0, 0, 1, 0, 0, 1}},  // -384 b2 pi a1
      {-18,  {1, 0, 1, 0, 0, 0, 0}},  //  -18 a1 b1
      {48,   {1, 0, 0, 0, 1, 0, 0}},  //   48 a1 c1
      {24,   {0, 0, 1, 0, 1, 0, 0}},  //   24 b1 c1
  };
  cf.gamma1 = from_table(gamma1_terms, -1, 72);

  static const T gamma2_terms[] = {
      {2160,   {0, 4, 0, 0, 0, 0, 0}},  //  2160 a2^4
      {-360,   {0, 3, 0, 1, 0, 0, 0}},  // -360 b2 a2^3
      {-1296,  {0, 3, 0, 0, 0, 1, 0}},  // -1296 c2 a2^3
      {-25920, {0, 3, 1, 0, 0, 0, 1}},  // -25920 pi b1 a2^3
      {17100,  {0, 2, 0, 2, 0, 0, 0}},  //  17100 b2^2 a2^2
      {27864,  {0, 2, 0, 0, 0, 2, 0}},  //  27864 c2^2 a2^2
      {21600,  {0, 2, 2, 0, 0, 0, 2}},  //  21600 pi^2 b1^2 a2^2
      {10260,  {0, 2, 2, 0, 0, 0, 0}},  //  10260 b1^2 a2^2
      {24648,  {0, 2, 0, 0, 2, 0, 0}},  //  24648 c1^2 a2^2
      {7236,   {0, 2, 0, 1, 0, 1, 0}},  //  7236 b2 c2 a2^2
      {-25920, {1, 2, 0, 1, 0, 0, 1}},  // -25920 b2 pi a1 a2^2
      {-8280,  {1, 2, 1, 0, 0, 0, 0}},  // -8280 a1 b1 a2^2
      {34560,  {0, 2, 1, 1, 0, 0, 1}},  //  34560 b2 pi b1 a2^2
      {17280,  {0, 2, 1, 0, 0, 1, 1}},  //  17280 c2 pi b1 a2^2
      {-4752,  {1, 2, 0, 0, 1, 0, 0}},  // -4752 a1 c1 a2^2
      {-1740,  {0, 2, 1, 0, 1, 0, 0}},  // -1740 b1 c1 a2^2
      {-34200, {0, 1, 0, 3, 0, 0, 0}},  // -34200 b2^3 a2
      {-19824, {0, 1, 0, 0, 0, 3, 0}},  // -19824 c2^3 a2
      {-34560, {0, 1, 3, 0, 0, 0, 1}},  // -34560 pi b1^3 a2
      {-37368, {0, 1, 0, 1, 0, 2, 0}},  // -37368 b2 c2^2 a2
      {4680,   {2, 1, 0, 1, 0, 0, 0}},  //  4680 b2 a1^2 a2
      {-144,   {2, 1, 0, 0, 0, 1, 0}},  // -144 c2 a1^2 a2
      {-33480, {0, 1, 2, 1, 0, 0, 0}},  // -33480 b2 b1^2 a2
      {-9954,  {0, 1, 2, 0, 0, 1, 0}},  // -9954 c2 b1^2 a2
      {17280,  {1, 1, 2, 0, 0, 0, 1}},  //  17280 pi a1 b1^2 a2
      {-38472, {0, 1, 0, 1, 2, 0, 0}},  // -38472 b2 c1^2 a2
      {-20976, {0, 1, 0, 0, 2, 1, 0}},  // -20976 c2 c1^2 a2
      {-38400, {0, 1, 1, 0, 2, 0, 1}},  // -38400 pi b1 c1^2 a2
      {-22806, {0, 1, 0, 2, 0, 1, 0}},  // -22806 b2^2 c2 a2
      {34560,  {1, 1, 0, 2, 0, 0, 1}},  //  34560 b2^2 pi a1 a2
      {17280,  {1, 1, 0, 1, 0, 1, 1}},  //  17280 b2 c2 pi a1 a2
      {5040,   {1, 1, 1, 1, 0, 0, 0}},  //  5040 b2 a1 b1 a2
      {8280,   {1, 1, 1, 0, 0, 1, 0}},  //  8280 c2 a1 b1 a2
      {43200,  {1, 1, 1, 1, 0, 0, 2}},  //  43200 b2 pi^2 a1 b1 a2
      {-60480, {0, 1, 1, 2, 0, 0, 1}},  // -60480 b2^2 pi b1 a2
      {-41280, {0, 1, 1, 0, 0, 2, 1}},  // -41280 c2^2 pi b1 a2
      {-17280, {0, 1, 1, 1, 0, 1, 1}},  // -17280 b2 c2 pi b1 a2
      {-7608,  {1, 1, 0, 1, 1, 0, 0}},  // -7608 b2 a1 c1 a2
      {-1440,  {1, 1, 0, 0, 1, 1, 0}},  // -1440 c2 a1 c1 a2
      {-14628, {0, 1, 1, 1, 1, 0, 0}},  // -14628 b2 b1 c1 a2
      {-2112,  {0, 1, 1, 0, 1, 1, 0}},  // -2112 c2 b1 c1 a2
      {36900,  {0, 0, 0, 4, 0, 0, 0}},  //  36900 b2^4
      {13040,  {0, 0, 0, 0, 0, 4, 0}},  //  13040 c2^4
      {14580,  {0, 0, 4, 0, 0, 0, 0}},  //  14580 b1^4
      {11200,  {0, 0, 0, 0, 4, 0, 0}},  //  11200 c1^4
      {16152,  {0, 0, 0, 1, 0, 3, 0}},  //  16152 b2 c2^3
      {-9720,  {1, 0, 3, 0, 0, 0, 0}},  // -9720 a1 b1^3
      {2640,   {1, 0, 0, 0, 3, 0, 0}},  //  2640 a1 c1^3
      {1320,   {0, 0, 1, 0, 3, 0, 0}},  //  1320 b1 c1^3
      {70758,  {0, 0, 0, 2, 0, 2, 0}},  //  70758 b2^2 c2^2
      {-4140,  {2, 0, 0, 2, 0, 0, 0}},  // -4140 b2^2 a1^2
      {648,    {2, 0, 0, 0, 0, 2, 0}},  //  648 c2^2 a1^2
      {2124,   {2, 0, 0, 1, 0, 1, 0}},  //  2124 b2 c2 a1^2
      {21600,  {2, 0, 0, 2, 0, 0, 2}},  //  21600 b2^2 pi^2 a1^2
      {50760,  {0, 0, 2, 2, 0, 0, 0}},  //  50760 b2^2 b1^2
      {42498,  {0, 0, 2, 0, 0, 2, 0}},  //  42498 c2^2 b1^2
      {-1620,  {2, 0, 2, 0, 0, 0, 0}},  // -1620 a1^2 b1^2
      {-25596, {0, 0, 2, 1, 0, 1, 0}},  // -25596 b2 c2 b1^2
      {-34560, {1, 0, 2, 1, 0, 0, 1}},  // -34560 b2 pi a1 b1^2
      {67074,  {0, 0, 0, 2, 2, 0, 0}},  //  67074 b2^2 c1^2
      {24000,  {0, 0, 0, 0, 2, 2, 0}},  //  24000 c2^2 c1^2
      {120,    {2, 0, 0, 0, 2, 0, 0}},  //  120 a1^2 c1^2
      {41670,  {0, 0, 2, 0, 2, 0, 0}},  //  41670 b1^2 c1^2
      {15288,  {0, 0, 0, 1, 2, 1, 0}},  //  15288 b2 c2 c1^2
      {-38400, {1, 0, 0, 1, 2, 0, 1}},  // -38400 b2 pi a1 c1^2
      {-17400, {1, 0, 1, 0, 2, 0, 0}},  // -17400 a1 b1 c1^2
      {30996,  {0, 0, 0, 3, 0, 1, 0}},  //  30996 b2^3 c2
      {-60480, {1, 0, 0, 3, 0, 0, 1}},  // -60480 b2^3 pi a1
      {-41280, {1, 0, 0, 1, 0, 2, 1}},  // -41280 b2 c2^2 pi a1
      {-17280, {1, 0, 0, 2, 0, 1, 1}},  // -17280 b2^2 c2 pi a1
      {1080,   {3, 0, 1, 0, 0, 0, 0}},  //  1080 a1^3 b1
      {17280,  {2, 0, 1, 1, 0, 0, 1}},  //  17280 b2 pi a1^2 b1
      {-11880, {1, 0, 1, 2, 0, 0, 0}},  // -11880 b2^2 a1 b1
      {-19080, {1, 0, 1, 0, 0, 2, 0}},  // -19080 c2^2 a1 b1
      {540,    {1, 0, 1, 1, 0, 1, 0}},  //  540 b2 c2 a1 b1
      {-720,   {3, 0, 0, 0, 1, 0, 0}},  // -720 a1^3 c1
      {-11220, {0, 0, 3, 0, 1, 0, 0}},  // -11220 b1^3 c1
      {3690,   {1, 0, 2, 0, 1, 0, 0}},  //  3690 a1 b1^2 c1
      {1950,   {1, 0, 0, 2, 1, 0, 0}},  //  1950 b2^2 a1 c1
      {2448,   {1, 0, 0, 0, 1, 2, 0}},  //  2448 c2^2 a1 c1
      {1344,   {1, 0, 0, 1, 1, 1, 0}},  //  1344 b2 c2 a1 c1
      {44028,  {0, 0, 1, 2, 1, 0, 0}},  //  44028 b2^2 b1 c1
      {1224,   {0, 0, 1, 0, 1, 2, 0}},  //  1224 c2^2 b1 c1
      {1500,   {2, 0, 1, 0, 1, 0, 0}},  //  1500 a1^2 b1 c1
      {1368,   {0, 0, 1, 1, 1, 1, 0}},  //  1368 b2 c2 b1 c1
  };
  cf.gamma2 = from_table(gamma2_terms, -1, 1080);
  return cf;
}

}  // namespace

const AppendixCofactors& appendix_cofactors() {
  static const AppendixCofactors cf = build_cofactors();
  return cf;
}

DecompositionReport verify_appendix() {
  JetCoefficients J = jet();
  const AppendixCofactors& cf = appendix_cofactors();
  ParamPoly g2 = gen_g2(), g3 = gen_g3(), g4 = gen_g4();

  DecompositionReport rep;
  rep.residual3 = J.a[3] - cf.alpha0 * g2;
  rep.residual5 = J.a[5] - (cf.beta0 * g3 + cf.beta1 * g2);
  rep.residual7 = J.a[7] - (cf.gamma0 * g4 + cf.gamma1 * g3 + cf.gamma2 * g2);

  std::array<ParamPoly, 3> gens{g2, g3, g4};
  symbolic::ReduceResult r4 = pp_reduce(J.a[4], gens);
  symbolic::ReduceResult r6 = pp_reduce(J.a[6], gens);
  rep.remainder4 = r4.remainder;
  rep.cofactors4 = std::move(r4.cofactors);
  rep.remainder6 = r6.remainder;
  rep.cofactors6 = std::move(r6.cofactors);

  rep.identities_pass = rep.residual3.is_zero() && rep.residual5.is_zero() &&
                        rep.residual7.is_zero() && rep.remainder4.is_zero() &&
                        rep.remainder6.is_zero();
  if (!rep.identities_pass) {
    const ParamPoly* bad = !rep.residual3.is_zero()   ? &rep.residual3
                           : !rep.residual5.is_zero() ? &rep.residual5
                           : !rep.residual7.is_zero() ? &rep.residual7
                           : !rep.remainder4.is_zero() ? &rep.remainder4
                                                       : &rep.remainder6;
    throw NumericalError("TranscriptionMismatch",
                         "nonzero decomposition residual: " + bad->str());
  }
  return rep;
}

namespace {

struct CellSup {
  double g2 = 0, g3 = 0, g4 = 0;
};

// Residual magnitudes on a 0.05 grid over one normalized cell. `which` picks
// the pinned coefficient: 0 -> A = 1, 1 -> B = 2, 2 -> C = 1.
CellSup cell_grid_sup(int which) {
  using field::Cplx;
  const double step = 0.05;
  // Free parameters: two complex coefficients, each ranging over a disc.
  double r1 = (which == 0) ? 2.0 : 1.0;  // |B| <= 2 free in cell 0, else |A| <= 1
  double r2 = (which == 2) ? 2.0 : 1.0;  // |B| <= 2 free in cell 2, else |C| <= 1
  long n1 = std::lround(2 * r1 / step) + 1;
  long n2 = std::lround(2 * r2 / step) + 1;

  CellSup sup;
  std::mutex merge;
  parallel_for(n1 * n1, [&](long lo, long hi) {
    CellSup local;
    for (long idx = lo; idx < hi; ++idx) {
      long i = idx / n1, j = idx % n1;
      Cplx p1(-r1 + step * static_cast<double>(i), -r1 + step * static_cast<double>(j));
      if (std::norm(p1) > r1 * r1 + 1e-12) continue;
      for (long k = 0; k < n2; ++k)
        for (long l = 0; l < n2; ++l) {
          Cplx p2(-r2 + step * static_cast<double>(k), -r2 + step * static_cast<double>(l));
          if (std::norm(p2) > r2 * r2 + 1e-12) continue;
          Cplx A(1, 0), B, C;
          switch (which) {
            case 0: B = p1; C = p2; break;
            case 1: A = p1; B = Cplx(2, 0); C = p2; break;
            default: A = p2; B = p1; C = Cplx(1, 0); break;
          }
          field::FieldParams f{0.0, A, B, C, field::Form::N1};
          field::CenterResiduals g = field::center_residuals(f);
          local.g2 = std::max(local.g2, std::abs(g.g2));
          local.g3 = std::max(local.g3, std::abs(g.g3));
          local.g4 = std::max(local.g4, std::abs(g.g4));
        }
    }
    std::lock_guard<std::mutex> lock(merge);
    sup.g2 = std::max(sup.g2, local.g2);
    sup.g3 = std::max(sup.g3, local.g3);
    sup.g4 = std::max(sup.g4, local.g4);
  });
  return sup;
}

}  // namespace

void verify_constant_bounds(DecompositionReport& rep) {
  unsigned saved = precision_digits();
  if (saved < 50) set_precision_digits(50);
  {
    BigFloat pi = big_pi();
    BigFloat B1 = (2 * pi / 9) * (284 + 108 * pi);
    BigFloat C1 = (pi / 72) * (5816 + 1536 * pi);
    BigFloat C2 = pi * (5019144 + 2565120 * pi + 345600 * pi * pi) / 1080;
    rep.B1 = B1.convert_to<double>();
    rep.C1 = C1.convert_to<double>();
    rep.C2 = C2.convert_to<double>();
  }
  if (precision_digits() != saved) set_precision_digits(saved);
  rep.B1_pass = rep.B1 < 500;
  rep.C1_pass = rep.C1 < 500;
  rep.C2_pass = rep.C2 >= 4e4 && rep.C2 <= 1e5;

  CellSup sup;
  for (int cell = 0; cell < 3; ++cell) {
    CellSup s = cell_grid_sup(cell);
    sup.g2 = std::max(sup.g2, s.g2);
    sup.g3 = std::max(sup.g3, s.g3);
    sup.g4 = std::max(sup.g4, s.g4);
  }
  // Triangle-inequality caps over every cell: |A| <= 1, |B| <= 2, |C| <= 1.
  rep.sup_g2 = {sup.g2, 2.0, 2.0, sup.g2 <= 2.0 * (1 + 1e-12)};
  rep.sup_g3 = {sup.g3, 40.0, 30.0, sup.g3 <= 30.0 * (1 + 1e-12)};
  rep.sup_g4 = {sup.g4, 64.0, 36.0, sup.g4 <= 36.0 * (1 + 1e-12)};
  rep.constants_filled = true;
}

SplittingReport verify_splitting_constants(double alpha, double beta, double eps) {
  if (!(alpha > 0) || !(beta > 0) || !(eps > 0))
    throw InputError("BadSplitting", "alpha, beta, eps must be positive");
  SplittingReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.eps = eps;

  unsigned saved = precision_digits();
  if (saved < 50) set_precision_digits(50);
  {
    BigFloat pi = big_pi();
    BigFloat B1 = (2 * pi / 9) * (284 + 108 * pi);
    BigFloat C2 = pi * (5019144 + 2565120 * pi + 345600 * pi * pi) / 1080;
    BigFloat abs_beta0 = 2 * pi / 3;
    BigFloat abs_gamma0 = 5 * pi / 4;

    r.lhs_alpha = (alpha * (1 + B1 / abs_beta0)).convert_to<double>();
    r.rhs_alpha = beta / 2;
    r.alpha_pass = r.lhs_alpha <= r.rhs_alpha;

    r.lhs_beta = (beta * (1 + C2 / abs_gamma0)).convert_to<double>();
    r.rhs_beta = 0.5;
    r.beta_pass = r.lhs_beta <= r.rhs_beta;

    BigFloat e(eps);
    r.m2 = (2 * pi * alpha * e * e * e).convert_to<double>();
    r.m3 = (abs_beta0 * (beta / 2) * pow(e, 5)).convert_to<double>();
    r.m4 = ((abs_gamma0 / 2) * pow(e, 7)).convert_to<double>();
  }
  if (precision_digits() != saved) set_precision_digits(saved);

  r.ordering_pass = r.m2 > r.m3 && r.m3 > r.m4;
  r.m4_above_floor = r.m4 > r.m4_floor;
  return r;
}

}  // namespace qvf::bautin
