#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qvf/errors.hpp"
#include "qvf/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace qvf::field;
using qvf::InputError;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Applies the recorded transform to the raw input: scale first, then the
// simultaneous conjugation + time reversal.
struct RawField {
  Cplx mu, A, B, C;
};

RawField apply_transform(const RawField& in, const NormalizeTransform& t) {
  Cplx c = t.c, cc = std::conj(t.c);
  RawField out;
  out.mu = t.c_prime * in.mu;
  out.A = t.c_prime * c * in.A;
  out.B = t.c_prime * cc * in.B;
  out.C = t.c_prime * (cc * cc / c) * in.C;
  if (t.conjugated) {
    out.mu = -std::conj(out.mu);
    out.A = -std::conj(out.A);
    out.B = -std::conj(out.B);
    out.C = -std::conj(out.C);
  }
  return out;
}

void check_transform_reproduces(const RawField& in, const NormalizeResult& r,
                                double tol = 1e-12) {
  RawField got = apply_transform(in, r.transform);
  CHECK(std::abs(got.mu - r.field.mu()) <= tol);
  CHECK(std::abs(got.A - r.field.A) <= tol);
  CHECK(std::abs(got.B - r.field.B) <= tol);
  CHECK(std::abs(got.C - r.field.C) <= tol);
}

FieldParams raw_field(double lambda1, Cplx A, Cplx B, Cplx C) {
  FieldParams f;
  f.lambda1 = lambda1;
  f.A = A;
  f.B = B;
  f.C = C;
  f.form = Form::N1;
  return f;
}

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  Cplx cplx(double r) { return {real(-r, r), real(-r, r)}; }
};

}  // namespace

TEST_CASE("normalize scales a pure quadratic into the first cell") {
  NormalizeResult r = normalize({0, 1}, {2, 0}, {0, 0}, {0, 0});
  CHECK(r.field.form == Form::N1);
  CHECK(r.field.lambda1 == 0.0);
  CHECK(r.field.A == Cplx(1, 0));
  CHECK(r.field.B == Cplx(0, 0));
  CHECK(r.field.C == Cplx(0, 0));
  CHECK(r.transform.c == Cplx(0.5, 0));
  CHECK(r.transform.c_prime == 1.0);
  CHECK_FALSE(r.transform.conjugated);
  CHECK_FALSE(r.transform.time_reversed);
  check_transform_reproduces({{0, 1}, {2, 0}, {0, 0}, {0, 0}}, r);
}

TEST_CASE("normalize is the identity on an already normalized field") {
  NormalizeResult r = normalize({0, 1}, {1, 0}, {1, 0}, {0.5, 0});
  CHECK(r.field.form == Form::N1);
  CHECK(r.field.A == Cplx(1, 0));
  CHECK(r.field.B == Cplx(1, 0));
  CHECK(r.field.C == Cplx(0.5, 0));
  CHECK(r.transform.c == Cplx(1, 0));
  CHECK(r.transform.c_prime == 1.0);
  CHECK_FALSE(r.transform.conjugated);
}

TEST_CASE("normalize flips negative damping by conjugation plus time reversal") {
  RawField in{{-1, 1}, {1, 0}, {0, 0}, {0, 0}};
  NormalizeResult r = normalize(in.mu, in.A, in.B, in.C);
  CHECK(r.field.lambda1 == 1.0);
  CHECK(r.field.form == Form::N1);
  CHECK(r.field.A == Cplx(1, 0));
  CHECK(r.transform.conjugated);
  CHECK(r.transform.time_reversed);
  check_transform_reproduces(in, r);
}

TEST_CASE("normalize selects the dominant cell and pins its coefficient") {
  NormalizeResult n2 = normalize({0, 1}, {0.3, 0}, {0, 4}, {0, 0});
  CHECK(n2.field.form == Form::N2);
  CHECK(n2.field.B == Cplx(2, 0));
  CHECK(std::abs(n2.field.A - Cplx(0, 0.15)) <= 1e-15);
  check_transform_reproduces({{0, 1}, {0.3, 0}, {0, 4}, {0, 0}}, n2);

  NormalizeResult n3 = normalize({0, 1}, {0, 0}, {0, 0}, {0, 8});
  CHECK(n3.field.form == Form::N3);
  CHECK(n3.field.C == Cplx(1, 0));
  check_transform_reproduces({{0, 1}, {0, 0}, {0, 0}, {0, 8}}, n3);

  // Tie between the first two cells resolves to the first.
  NormalizeResult tie = normalize({0, 1}, {1, 0}, {2, 0}, {0, 0});
  CHECK(tie.field.form == Form::N1);

  NormalizeResult lin = normalize({0, 2}, {0, 0}, {0, 0}, {0, 0});
  CHECK(lin.field.form == Form::Linear);
  CHECK(lin.transform.c_prime == 0.5);
}

TEST_CASE("normalize rejects a real eigenvalue") {
  CHECK_THROWS_WITH_AS(normalize({1, 0}, {1, 0}, {0, 0}, {0, 0}),
                       doctest::Contains("Im(mu)"), InputError);
  try {
    normalize({1, 0}, {1, 0}, {0, 0}, {0, 0});
  } catch (const InputError& e) {
    CHECK(e.code() == "ZeroImaginaryPart");
  }
}

TEST_CASE("normalize is idempotent bit-exactly and transform always reproduces") {
  Rng rng(21);
  for (int it = 0; it < 500; ++it) {
    RawField in{{rng.real(-3, 3), rng.real(0.1, 3) * (it % 2 ? 1 : -1)},
                rng.cplx(3), rng.cplx(3), rng.cplx(3)};
    NormalizeResult r1 = normalize(in.mu, in.A, in.B, in.C);
    check_transform_reproduces(in, r1, 1e-10);

    NormalizeResult r2 = normalize(r1.field.mu(), r1.field.A, r1.field.B, r1.field.C);
    CHECK(r2.field.lambda1 == r1.field.lambda1);
    CHECK(r2.field.A == r1.field.A);
    CHECK(r2.field.B == r1.field.B);
    CHECK(r2.field.C == r1.field.C);
    CHECK(r2.field.form == r1.field.form);
  }
}

TEST_CASE("field validation enforces the cell invariants") {
  CHECK_NOTHROW(make_field(0, {1, 0}, {2, 0}, {1, 0}, Form::N1));
  CHECK_THROWS_AS(make_field(-1, {1, 0}, {0, 0}, {0, 0}, Form::N1), InputError);
  CHECK_THROWS_AS(make_field(0, {2, 0}, {0, 0}, {0, 0}, Form::N1), InputError);
  CHECK_THROWS_AS(make_field(0, {1, 0}, {2.5, 0}, {0, 0}, Form::N1), InputError);
  CHECK_THROWS_AS(make_field(0, {0.5, 0}, {1, 0}, {0, 0}, Form::N2), InputError);
  CHECK_THROWS_AS(make_field(0, {0.5, 0}, {0, 0}, {0.5, 0}, Form::N3), InputError);
  CHECK_THROWS_AS(make_field(0, {1, 0}, {0, 0}, {0, 0}, Form::Linear), InputError);
  double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(make_field(0, {inf, 0}, {0, 0}, {0, 0}, Form::N1), InputError);
}

TEST_CASE("center residuals: hand-computed values") {
  CenterResiduals z = center_residuals(make_field(0, {1, 0}, {2, 0}, {1, 0}, Form::N1));
  CHECK(z.g1 == 0.0);
  CHECK(z.g2 == 0.0);
  CHECK(z.g3 == 0.0);
  CHECK(z.g4 == 0.0);

  CenterResiduals f = center_residuals(make_field(0.5, {1, 0}, {0, 0}, {0, 0}, Form::N1));
  CHECK(f.g1 == 0.5);
  CHECK(f.g2 == 0.0);

  // A = i, B = 1, C = 1: (2A + conj B)(A - 2 conj B) = (1+2i)(-2+i) = -4-3i.
  CenterResiduals g = center_residuals(raw_field(0, {0, 1}, {1, 0}, {1, 0}));
  CHECK(g.g2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.g3 == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(g.g4 == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("residuals of real-coefficient zero-damping fields vanish exactly") {
  Rng rng(22);
  for (int it = 0; it < 200; ++it) {
    FieldParams f = raw_field(0, {rng.real(-1, 1), 0}, {rng.real(-2, 2), 0},
                              {rng.real(-1, 1), 0});
    CenterResiduals r = center_residuals(f);
    CHECK(r.g1 == 0.0);
    CHECK(r.g2 == 0.0);
    CHECK(r.g3 == 0.0);
    CHECK(r.g4 == 0.0);
  }
}

TEST_CASE("distance to the center set sums the residual magnitudes") {
  CHECK(sigma_distance(make_field(0, {1, 0}, {2, 0}, {1, 0}, Form::N1)) == 0.0);
  CHECK(sigma_distance(make_field(0.5, {1, 0}, {0, 0}, {0, 0}, Form::N1)) == 0.5);

  FieldParams f = raw_field(0, {0, 1}, {1, 0}, {1, 0});
  CenterResiduals r = center_residuals(f);
  CHECK(sigma_distance(f) ==
        doctest::Approx(std::abs(r.g2) + std::abs(r.g3) + std::abs(r.g4)).epsilon(1e-15));
  CHECK(sigma_distance(f) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("singular split: hand values and the pinned-coefficient requirement") {
  // B = mu / conj(mu) makes the quadratic part purely singular.
  FieldParams vs = make_field(0, {1, 0}, {-1, 0}, {0, 0}, Form::N1);
  SingularDecomposition d0 = singular_decomposition(vs);
  CHECK(std::abs(d0.b) == 0.0);
  CHECK(std::abs(d0.c) == 0.0);
  CHECK(d0.kappa_distance == 0.0);

  SingularDecomposition d1 =
      singular_decomposition(make_field(0, {1, 0}, {0, 0}, {0, 0}, Form::N1));
  CHECK(d1.b == Cplx(1, 0));
  CHECK(d1.kappa_distance == 1.0);

  // mu = 1+i: mu/conj(mu) = i, so b = 0.3 - i.
  SingularDecomposition d2 =
      singular_decomposition(make_field(1, {1, 0}, {0.3, 0}, {0, 0.4}, Form::N1));
  CHECK(std::abs(d2.b - Cplx(0.3, -1)) <= 1e-15);
  CHECK(d2.kappa_distance == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));

  CHECK_THROWS_AS(singular_decomposition(make_field(0, {0.5, 0}, {2, 0}, {0, 0}, Form::N2)),
                  InputError);
}

TEST_CASE("singular split reassembles the field") {
  Rng rng(23);
  for (int it = 0; it < 300; ++it) {
    double l1 = rng.real(0, 2);
    Cplx B = rng.cplx(2), C = rng.cplx(1);
    FieldParams f = raw_field(l1, {1, 0}, B, C);
    SingularDecomposition d = singular_decomposition(f);
    CHECK(d.c == C);
    Cplx s = f.mu() / std::conj(f.mu());
    // One rounding each way in the subtraction; |s| = 1, |B| <= 2sqrt2.
    CHECK(std::abs((d.b + s) - B) <= 1e-15);
    CHECK(d.kappa_distance ==
          doctest::Approx(std::sqrt(std::norm(d.b) + std::norm(C))).epsilon(1e-15));
  }
}

TEST_CASE("nontrivial singular points of the reference field") {
  FieldParams f = make_field(0, {1, 0}, {0, 0}, {0, 0}, Form::N1);
  SingularPointSet s = singular_points(f, 1e-9);
  CHECK_FALSE(s.degenerate);
  REQUIRE(s.points.size() == 3);

  auto has = [&](Cplx u, Cplx v, bool real_flag) {
    for (const auto& p : s.points)
      if (std::abs(p.u - u) <= 1e-8 && std::abs(p.v - v) <= 1e-8)
        return p.is_real == real_flag;
    return false;
  };
  CHECK(has({0, 0}, {0, 1}, false));
  CHECK(has({0, -1}, {0, 0}, false));
  CHECK(has({0, -1}, {0, 1}, true));
}

TEST_CASE("singular points satisfy both complexified equations") {
  Rng rng(24);
  const double tol = 1e-9;
  for (int it = 0; it < 100; ++it) {
    FieldParams f = raw_field(rng.real(0, 1), {1, 0}, rng.cplx(2), rng.cplx(1));
    SingularPointSet s = singular_points(f, tol);
    if (s.degenerate) continue;
    Cplx mu = f.mu();
    for (const auto& p : s.points) {
      Cplx r1 = mu * p.u + f.A * p.u * p.u + f.B * p.u * p.v + f.C * p.v * p.v;
      Cplx r2 = std::conj(mu) * p.v + std::conj(f.A) * p.v * p.v +
                std::conj(f.B) * p.u * p.v + std::conj(f.C) * p.u * p.u;
      CHECK(std::abs(r1) <= 10 * tol * std::max(1.0, std::norm(p.u) + std::norm(p.v)));
      CHECK(std::abs(r2) <= 10 * tol * std::max(1.0, std::norm(p.u) + std::norm(p.v)));
      CHECK(std::abs(p.u) + std::abs(p.v) > 1e-9);  // origin excluded
      CHECK(p.is_real == (std::abs(p.v - std::conj(p.u)) <= 10 * tol));
    }
  }
}

TEST_CASE("linear fields have no extra singular points") {
  FieldParams f = make_field(0.3, {0, 0}, {0, 0}, {0, 0}, Form::Linear);
  SingularPointSet s = singular_points(f, 1e-9);
  CHECK(s.points.empty());
  CHECK_FALSE(s.degenerate);
}

TEST_CASE("purely singular quadratic part yields a degenerate singular set") {
  FieldParams vs = make_field(0, {1, 0}, {-1, 0}, {0, 0}, Form::N1);
  SingularPointSet s = singular_points(vs, 1e-9);
  CHECK(s.degenerate);
}

TEST_CASE("tame region membership") {
  FieldParams f = make_field(0, {1, 0}, {0, 0}, {0, 0}, Form::N1);
  const double delta = 0.1;

  CHECK(in_tame_region(f, delta, {0, 0}));
  CHECK_FALSE(in_tame_region(f, delta, {2 / delta, 0}));
  CHECK_FALSE(in_tame_region(f, delta, {0, -0.95}));  // near the point at -i
  CHECK(in_tame_region(f, delta, {0.5, 0}));
  CHECK_THROWS_AS(in_tame_region(f, 0.0, {0, 0}), InputError);
  CHECK_THROWS_AS(in_tame_region(f, 1.0, {0, 0}), InputError);
}

TEST_CASE("tame region of a degenerate field falls back to the singular line") {
  FieldParams vs = make_field(0, {1, 0}, {-1, 0}, {0, 0}, Form::N1);
  // Singular line for this field is Im z = -1/2.
  CHECK(in_tame_region(vs, 0.1, {0, 0}));
  CHECK_FALSE(in_tame_region(vs, 0.1, {0, -0.45}));
  CHECK_FALSE(in_tame_region(vs, 0.1, {0, -0.55}));
  CHECK(in_tame_region(vs, 0.1, {0, 0.5}));
}

TEST_CASE("polar data at sample angles") {
  FieldParams f = raw_field(0, {0.5, 0}, {0.25, 0.25}, {0, -0.5});
  PolarData p0 = polar_data(f, 0);
  CHECK(std::abs(p0.h - (f.A + f.B + f.C)) <= 1e-15);
  CHECK(p0.f == p0.h.real());
  CHECK(p0.g == p0.h.imag());

  FieldParams e = make_field(0, {1, 0}, {0, 0}, {0, 0}, Form::N1);
  for (int j = 0; j < 8; ++j) {
    double th = 2 * kPi * j / 8;
    PolarData p = polar_data(e, th);
    CHECK(std::abs(p.h - std::exp(Cplx(0, th))) <= 1e-15);
    CHECK(p.f == doctest::Approx(std::cos(th)).epsilon(1e-14));
    CHECK(p.g == doctest::Approx(std::sin(th)).epsilon(1e-14));
  }
}

TEST_CASE("angular factor of normalized fields is bounded by four") {
  Rng rng(25);
  for (int it = 0; it < 1000; ++it) {
    RawField in{{rng.real(-2, 2), rng.real(0.1, 2) * (it % 2 ? 1 : -1)},
                rng.cplx(2), rng.cplx(2), rng.cplx(2)};
    if (std::abs(in.A) + std::abs(in.B) + std::abs(in.C) == 0.0) continue;
    NormalizeResult r = normalize(in.mu, in.A, in.B, in.C);
    double th = rng.real(0, 2 * kPi);
    CHECK(std::abs(polar_data(r.field, th).h) <= 4.0 + 1e-12);
  }
}

TEST_CASE("damping gate with inclusive boundary") {
  FieldParams slow = make_field(0, {1, 0}, {0, 0}, {0, 0}, Form::N1);
  CHECK(lambda1_gate(slow, 0.1));
  CHECK(lambda1_gate(slow, 0.99));

  FieldParams fast = make_field(41, {1, 0}, {0, 0}, {0, 0}, Form::N1);
  CHECK_FALSE(lambda1_gate(fast, 0.1));

  FieldParams edge = make_field(40, {1, 0}, {0, 0}, {0, 0}, Form::N1);
  CHECK(lambda1_gate(edge, 0.1));
}
