// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
#include "qvf/bautin.hpp"
#include "qvf/bigfloat.hpp"
#include "qvf/bounds.hpp"
#include "qvf/errors.hpp"
#include "qvf/field.hpp"
#include "qvf/parallel.hpp"
#include "qvf/poincare.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qvf;
using namespace qvf::symbolic;
using field::Cplx;
using field::FieldParams;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

struct Check {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rel_err(double value, const BigFloat& oracle) {
  return std::abs((BigFloat(value) / oracle - 1).convert_to<double>());
}

ParamPoly pvar(Var v) { return ParamPoly::variable(v); }

QuasiTrigPoly cos_term(int k, const ParamPoly& coeff) {
  QuasiTrigPoly q;
  q.add_term(k, 0, coeff * GaussRational(1, 2));
  q.add_term(-k, 0, coeff * GaussRational(1, 2));
  return q;
}

QuasiTrigPoly sin_term(int k, const ParamPoly& coeff) {
  GaussRational mi_half(mpq_class(0), mpq_class(-1, 2));
  QuasiTrigPoly q;
  q.add_term(k, 0, coeff * mi_half);
  q.add_term(-k, 0, coeff * (-mi_half));
  return q;
}

const bautin::JetCoefficients& shared_jet() {
  static bautin::JetCoefficients j = bautin::jet();
  return j;
}

template <typename T>
ParamPoint<T> field_point(const FieldParams& f, const T& pi_val) {
  return {T(f.A.real()), T(f.A.imag()), T(f.B.real()), T(f.B.imag()),
          T(f.C.real()), T(f.C.imag()), pi_val};
}

BigFloat jet_sum_hp(const FieldParams& f, const BigFloat& x) {
  ParamPoint<BigFloat> pt = field_point<BigFloat>(f, big_pi());
  BigFloat s = 0, xp = x * x * x;
  for (int j = 3; j <= 7; ++j) {
    s += shared_jet().a[size_t(j)].eval(pt).re * xp;
    xp *= x;
  }
  return s;
}

FieldParams random_n1(std::mt19937_64& rng, double lambda1_max,
                      double min_quadratic = 0.0) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    Cplx B(2 * u(rng), 2 * u(rng)), C(u(rng), u(rng));
    if (std::abs(B) > 2 || std::abs(C) > 1) continue;
    if (std::abs(B) + std::abs(C) < min_quadratic) continue;
    double l1 = lambda1_max * std::abs(u(rng));
    return field::make_field(l1, 1, B, C, field::Form::N1);
  }
}

// --- criteria ---------------------------------------------------------

Check criterion1() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  const bautin::JetCoefficients& j = shared_jet();
  c.require(j.a[1] == ParamPoly(GaussRational(1)), "a1 != 1");
  c.require(j.a[2].is_zero(), "a2 != 0");
  // Independent phrasing of the first identity: a3 + 2 pi g2 = 0 exactly.
  ParamPoly two_pi = ParamPoly::term(Monomial::var(VPI), GaussRational(2));
  c.require((j.a[3] + two_pi * gen_g2()).is_zero(), "a3 + 2 pi g2 != 0");

  bautin::DecompositionReport rep = bautin::verify_appendix();
  c.require(rep.residual3.is_zero(), "a3 residual nonzero");
  c.require(rep.residual5.is_zero(), "a5 residual nonzero");
  c.require(rep.residual7.is_zero(), "a7 residual nonzero");
  c.require(rep.remainder4.is_zero(), "a4 not in (g2,g3,g4)");
  c.require(rep.remainder6.is_zero(), "a6 not in (g2,g3,g4)");
  c.require(rep.identities_pass, "identity flag false");
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < 120.0, "exceeded 2 minute budget (" + fmt(secs) + "s)");
  c.note("exact over Q(i), " + fmt(secs) + "s");
  return c;
}

Check criterion2() {
  Check c;
  std::vector<QuasiTrigPoly> v = bautin::variational_coefficients(2);
  ParamPoly const_part =
      (pvar(VA2) * GaussRational(-3) + pvar(VB2) * GaussRational(3) + pvar(VC2)) *
      GaussRational(1, 3);
  QuasiTrigPoly closed = QuasiTrigPoly::constant(const_part);
  closed += cos_term(1, pvar(VA2));
  closed += cos_term(1, pvar(VB2) * GaussRational(-1));
  closed += cos_term(3, pvar(VC2) * GaussRational(-1, 3));
  closed += sin_term(1, pvar(VA1));
  closed += sin_term(1, pvar(VB1));
  closed += sin_term(3, pvar(VC1) * GaussRational(1, 3));
  c.require(v[2].str() == closed.str(), "serialized v2 differs from closed form");
  c.require(v[2] == closed, "v2 terms differ from closed form");
  return c;
}

Check criterion3() {
  Check c;
  set_precision_digits(50);
  BigFloat pi = big_pi();
  BigFloat B1o = (2 * pi / 9) * (284 + 108 * pi);
  BigFloat C1o = (pi / 72) * (5816 + 1536 * pi);
  BigFloat C2o = pi * (5019144 + 2565120 * pi + 345600 * pi * pi) / 1080;

  bautin::DecompositionReport rep = bautin::verify_appendix();
  bautin::verify_constant_bounds(rep);
  c.require(rep.constants_filled, "constants not filled");
  c.require(rel_err(rep.B1, B1o) <= 1e-6, "B1 off oracle");
  c.require(rel_err(rep.C1, C1o) <= 1e-6, "C1 off oracle");
  c.require(rel_err(rep.C2, C2o) <= 1e-6, "C2 off oracle");
  c.require(rep.B1 < 500 && rep.B1_pass, "B1 >= 500");
  c.require(rep.C1 < 500 && rep.C1_pass, "C1 >= 500");
  c.require(rep.C2 >= 4e4 && rep.C2 <= 1e5 && rep.C2_pass, "C2 outside [4e4, 1e5]");

  bautin::SplittingReport sp = bautin::verify_splitting_constants();
  c.require(sp.alpha_pass, "alpha inequality fails");
  c.require(sp.beta_pass, "beta inequality fails");
  c.require(sp.m2 > sp.m3 && sp.m3 > sp.m4 && sp.ordering_pass, "m ordering fails");
  c.note("B1=" + fmt(rep.B1) + " C1=" + fmt(rep.C1) + " C2=" + fmt(rep.C2));
  c.note("m4=" + fmt(sp.m4) + " vs floor " + fmt(sp.m4_floor) +
         (sp.m4_above_floor ? " (above; reported only)" : " (below; reported only)"));
  return c;
}

Check criterion4() {
  Check c;
  for (double l1 : {0.0, 0.05, 0.5}) {
    FieldParams f = field::make_field(l1, 0, 0, 0, field::Form::Linear);
    for (double x : {1e-3, 5e-4, 1e-4}) {
      double err =
          std::abs(poincare::poincare_map(f, {x, 0}).real() - x * std::exp(kTwoPi * l1));
      c.require(err <= 1e-9, "linear map error " + fmt(err) + " at lambda1=" + fmt(l1));
    }
  }

  set_precision_digits(50);
  shared_jet();  // build once before the worker threads share it
  std::mt19937_64 rng(20260815);
  std::vector<FieldParams> fields;
  for (int i = 0; i < 10; ++i) fields.push_back(random_n1(rng, 0.0, 0.5));

  std::vector<double> ratio(fields.size(), 0.0);
  parallel_for(long(fields.size()), [&](long b, long e) {
    set_precision_digits(50);
    BigFloat x1 = BigFloat(1) / 1000, x2 = BigFloat(1) / 2000;
    for (long i = b; i < e; ++i) {
      BigFloat e1 =
          abs(poincare::displacement_hp(fields[size_t(i)], x1, 1e-25, 1e-32) -
              jet_sum_hp(fields[size_t(i)], x1));
      BigFloat e2 =
          abs(poincare::displacement_hp(fields[size_t(i)], x2, 1e-25, 1e-32) -
              jet_sum_hp(fields[size_t(i)], x2));
      ratio[size_t(i)] = e2 > 0 ? (e1 / e2).convert_to<double>() : -1;
    }
  });
  double lo = 1e300, hi = 0;
  for (size_t i = 0; i < ratio.size(); ++i) {
    lo = std::min(lo, ratio[i]);
    hi = std::max(hi, ratio[i]);
    c.require(ratio[i] >= 64.0 && ratio[i] <= 1024.0,
              "remainder ratio " + fmt(ratio[i]) + " outside [64, 1024] (field " +
                  std::to_string(i) + ")");
  }
  c.note("ratios in [" + fmt(lo) + ", " + fmt(hi) + "]");
  return c;
}

Check criterion5() {
  Check c;
  FieldParams f = field::normalize({1e-4, 1}, {0, 1}, {1, 0}, {0, 0}).field;
  poincare::CycleSearchResult r = poincare::find_cycles(f, 0.1);
  size_t tame = 0;
  for (const auto& cyc : r.cycles) tame += cyc.tame ? 1 : 0;
  c.require(r.cycles.size() == 1 && tame == 1,
            "expected exactly one tame cycle, found " + std::to_string(r.cycles.size()));
  if (!r.cycles.empty()) {
    double x = r.cycles[0].x_star;
    c.require(std::abs(x - 1e-2) <= 0.2 * 1e-2,
              "x_star " + fmt(x) + " not within 20% of 1e-2");
    c.note("x_star=" + fmt(x));
  }

  const FieldParams centers[] = {
      field::make_field(0, {1, 0}, {2, 0}, {1, 0}, field::Form::N1),
      field::normalize({0, 1}, {0.3, 0}, {1.7, 0}, {-0.8, 0}).field,
  };
  for (const FieldParams& cf : centers) {
    poincare::CycleSearchResult cr = poincare::find_cycles(cf, 0.1);
    c.require(cr.cycles.empty(), "spurious cycle on a center field");
    c.require(!cr.degenerate_intervals.empty(), "center not flagged degenerate");
    c.require(!cr.a_defined, "a(lambda) defined on a center");
  }
  return c;
}

Check criterion6() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6061);
  std::uniform_real_distribution<double> u(-1, 1);

  int fails = 0;
  for (int i = 0; i < 200; ++i) {  // Gronwall containment
    FieldParams f = random_n1(rng, 0.5);
    Cplx w0 = std::polar(poincare::admissible_radius(f) * std::abs(u(rng)),
                         kPi * u(rng));
    poincare::GronwallReport rep = poincare::gronwall_check(f, w0);
    if (!(rep.sup_actual <= rep.bound)) ++fails;
  }
  c.require(fails == 0, std::to_string(fails) + " gronwall failures");

  fails = 0;
  for (int i = 0; i < 100; ++i) {  // divergence from the undamped field
    FieldParams f = random_n1(rng, 0.1);
    if (f.lambda1 < 1e-8) f.lambda1 = 1e-8;
    Cplx w0 = std::polar(0.0005 * std::abs(u(rng)), kPi * u(rng));
    poincare::DivergenceReport rep = poincare::divergence_check(f, w0);
    if (!(rep.actual <= rep.bound)) ++fails;
  }
  c.require(fails == 0, std::to_string(fails) + " divergence failures");

  fails = 0;
  int trig_cases = 0;
  while (trig_cases < 300) {  // trig lower bound away from roots
    bounds::TrigCubic H{{u(rng), u(rng), u(rng), u(rng)}};
    if (H.l2_norm() < 1e-6) continue;
    double alpha = 0.05 + 0.55 * std::abs(u(rng));
    try {
      bounds::TrigMinBound mb = bounds::trig_min_bound(H, alpha);
      ++trig_cases;
      if (!(mb.empirical_min >= mb.lower_bound)) ++fails;
    } catch (const NumericalError&) {
    }
  }
  c.require(fails == 0, std::to_string(fails) + " trig bound failures");

  fails = 0;
  std::uniform_int_distribution<int> degree(1, 6);
  for (int i = 0; i < 100; ++i) {  // growth-and-zeros vs true counts
    int n = degree(rng);
    std::vector<double> roots(static_cast<size_t>(n));
    for (auto& r : roots) r = 0.4 * u(rng);
    auto value = [&](Cplx z) {
      Cplx p(1, 0);
      for (double r : roots) p *= z - r;
      return std::abs(p);
    };
    double M = 0, m = 0;
    for (int j = 0; j < 720; ++j)
      M = std::max(M, value(std::polar(1.0, kTwoPi * j / 720)));
    for (int j = 0; j <= 512; ++j) m = std::max(m, value(Cplx(-0.5 + j / 512.0, 0)));
    if (!(bounds::zero_bound(M, m, 2.0, 0.5) >= n)) ++fails;
  }
  c.require(fails == 0, std::to_string(fails) + " zero-bound failures");

  fails = 0;
  for (int i = 0; i < 200; ++i) {  // Parseval to 1e-10
    bounds::TrigCubic H{{u(rng), u(rng), u(rng), u(rng)}};
    const int N = 4096;
    double q = 0;
    for (int j = 0; j < N; ++j) {
      double v = H.eval(kTwoPi * j / N);
      q += v * v;
    }
    q = std::sqrt(q * kTwoPi / N);
    if (!(std::abs(q - H.l2_norm()) <= 1e-10 * (1 + q))) ++fails;
  }
  c.require(fails == 0, std::to_string(fails) + " parseval failures");

  fails = 0;
  int iso_cases = 0;
  while (iso_cases < 400) {  // rdot g^2 = -H on the isocline (sign per derivation)
    FieldParams f = random_n1(rng, 0.5);
    field::SingularDecomposition dec = field::singular_decomposition(f);
    double theta = kPi * u(rng);
    field::PolarData pd = field::polar_data(f, theta);
    if (pd.g >= -1e-3) continue;
    ++iso_cases;
    double r = -1.0 / pd.g;
    double lhs = r * (f.lambda1 + r * pd.f) * pd.g * pd.g;
    Cplx em1 = std::polar(1.0, -theta);
    double H = (std::conj(f.mu()) * (dec.b * em1 + dec.c * em1 * em1 * em1)).imag();
    if (!(std::abs(lhs + H) <= 1e-9 * (1 + std::abs(H)))) ++fails;
  }
  c.require(fails == 0, std::to_string(fails) + " isocline identity failures");

  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < 600.0, "exceeded 10 minute budget (" + fmt(secs) + "s)");
  c.note("1300 cases, " + fmt(secs) + "s, isocline sign is rdot g^2 = -H");
  return c;
}

Check criterion7() {
  Check c;
  set_precision_digits(50);
  bounds::LogLogMagnitude h = bounds::hilbert_bound(0.1, 0.1, 0.1);
  BigFloat target("1e58");
  double err = abs(h.lnln / target - 1).convert_to<double>();
  c.require(err <= 1e-12, "lnlnH off 1e58 by " + fmt(err));

  double geom = bounds::geom_exponent(0.1, 0.1);
  c.require(std::abs(geom / ((1e5 - 1) * 1e5) - 1) <= 1e-12, "geom_exponent off");
  c.require(std::abs(geom / 1e10 - 1) <= 1e-4, "geom_exponent not ~1e10");

  double cap = bounds::bernstein_cap(0.1, 0.1);
  c.require(std::abs(cap / 603.8 - 1) <= 1e-3, "bernstein_cap not ~603.8");
  double oracle = std::log(2.0) - std::log(0.1) + 260 * std::log(10.0) - std::log(0.1);
  c.require(std::abs(cap - oracle) <= 1e-9, "bernstein_cap off closed form");
  c.note("lnlnH=" + fmt(h.lnln.convert_to<double>()) + " geom=" + fmt(geom) +
         " cap=" + fmt(cap));
  return c;
}

Check criterion8() {
  Check c;
  const double delta = 0.1, kappa = 0.05;
  const double beta = bounds::beta(delta, kappa);
  std::mt19937_64 rng(8088);
  int cycles_seen = 0, violations = 0, fields_done = 0;
  while (fields_done < 20) {
    FieldParams f = random_n1(rng, 0.3);
    if (field::singular_decomposition(f).kappa_distance < 0.05) continue;
    ++fields_done;
    poincare::CycleSearchResult r = poincare::find_cycles(f, delta);
    for (const auto& cyc : r.cycles) {
      if (!cyc.tame) continue;
      ++cycles_seen;
      poincare::Trajectory t = poincare::integrate(f, {cyc.x_star, 0});
      for (const auto& s : t.samples) {
        field::PolarData pd = field::polar_data(f, s.theta);
        if (pd.g >= 0) continue;
        double edge = -1.0 / pd.g;
        double radius = std::abs(s.w);
        if (radius >= edge - beta && radius <= edge) ++violations;
      }
    }
  }
  c.require(violations == 0, std::to_string(violations) + " strip samples hit");
  c.note(std::to_string(cycles_seen) + " tame cycles over 20 fields, beta=" +
         fmt(beta));
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    std::function<Check()> fn;
  };
  const Entry entries[] = {
      {1, "exact jet identities and ideal membership", criterion1},
      {2, "v2 recursion matches the closed form", criterion2},
      {3, "numeric constants and splitting inequalities", criterion3},
      {4, "linear exponential map and jet remainder ratio", criterion4},
      {5, "cycle detection on balance and center fields", criterion5},
      {6, "seeded property suites", criterion6},
      {7, "closed-form bound evaluator", criterion7},
      {8, "no tame-cycle samples inside the lower strip", criterion8},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail << "exception: " << ex.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %d: %s [%.1fs]%s%s\n", c.pass ? "PASS" : "FAIL", e.id,
                e.label, secs, c.detail.tellp() > 0 ? " -- " : "",
                c.detail.str().c_str());
    std::fflush(stdout);
    if (!c.pass) ++failures;
  }
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
