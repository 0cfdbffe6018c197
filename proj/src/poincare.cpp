#include "qvf/poincare.hpp"

#include "qvf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace qvf::poincare {

namespace {

// Minimal complex-over-T; std::complex is only specified for builtin floats.
template <typename T>
struct Cx {
  T re{}, im{};

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const T& s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    T n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  T norm() const { return re * re + im * im; }
  T abs() const {
    using std::sqrt;
    return sqrt(norm());
  }
};

inline double as_double(double v) { return v; }
inline double as_double(const BigFloat& v) { return v.convert_to<double>(); }

template <typename T>
struct FieldT {
  T lambda1;
  Cx<T> A, B, C;
};

template <typename T>
FieldT<T> widen(const FieldParams& f) {
  return {T(f.lambda1),
          {T(f.A.real()), T(f.A.imag())},
          {T(f.B.real()), T(f.B.imag())},
          {T(f.C.real()), T(f.C.imag())}};
}

// f + i g at angle theta: A e^{i theta} + B e^{-i theta} + C e^{-3 i theta}.
template <typename T>
Cx<T> angular_h(const FieldT<T>& f, const T& theta) {
  using std::cos;
  using std::sin;
  T c = cos(theta), s = sin(theta);
  Cx<T> e1{c, s}, em1{c, -s};
  Cx<T> em3 = em1 * em1 * em1;
  return f.A * e1 + f.B * em1 + f.C * em3;
}

// Dormand-Prince 5(4) tableau, built exactly in T from integer ratios.
template <typename T>
struct Tableau {
  T c[8];
  T a[8][7];
  T e[8];  // 5th-order minus embedded 4th-order weights

  Tableau() {
    auto r = [](long n, long d) { return T(n) / T(d); };
    c[2] = r(1, 5); c[3] = r(3, 10); c[4] = r(4, 5); c[5] = r(8, 9);
    c[6] = T(1); c[7] = T(1);
    a[2][1] = r(1, 5);
    a[3][1] = r(3, 40); a[3][2] = r(9, 40);
    a[4][1] = r(44, 45); a[4][2] = r(-56, 15); a[4][3] = r(32, 9);
    a[5][1] = r(19372, 6561); a[5][2] = r(-25360, 2187);
    a[5][3] = r(64448, 6561); a[5][4] = r(-212, 729);
    a[6][1] = r(9017, 3168); a[6][2] = r(-355, 33); a[6][3] = r(46732, 5247);
    a[6][4] = r(49, 176); a[6][5] = r(-5103, 18656);
    a[7][1] = r(35, 384); a[7][2] = T(0); a[7][3] = r(500, 1113);
    a[7][4] = r(125, 192); a[7][5] = r(-2187, 6784); a[7][6] = r(11, 84);
    e[1] = r(71, 57600); e[2] = T(0); e[3] = r(-71, 16695); e[4] = r(71, 1920);
    e[5] = r(-17253, 339200); e[6] = r(22, 525); e[7] = r(-1, 40);
  }
};

struct CoreStats {
  long steps = 0;
  long rejected = 0;
  double min_denominator = std::numeric_limits<double>::infinity();
};

// Adaptive integration of dw/dtheta = w (lambda1 + w f) / (1 + w g) from
// theta_a to theta_b > theta_a. emit(theta, w) fires at theta_a, at every
// accepted step, and at theta_b. Stage values violating the denominator
// guard or the escape cap reject the step; at minimal step size they abort.
template <typename T, typename Emit>
Cx<T> integrate_core(const FieldT<T>& f, Cx<T> w, const T& theta_a, const T& theta_b,
                     const T& rel_tol, const T& abs_tol, double guard, double escape,
                     const T& h_min, const T& h_max, CoreStats* stats, Emit&& emit) {
  static const Tableau<T> tb;

  enum class StageFail { None, Singular, Escape };
  StageFail fail = StageFail::None;
  auto rhs = [&](const T& theta, const Cx<T>& v) -> std::optional<Cx<T>> {
    Cx<T> h = angular_h(f, theta);
    T fre = h.re, gim = h.im;
    Cx<T> den{T(1) + v.re * gim, v.im * gim};
    double d = as_double(den.abs());
    if (stats && d < stats->min_denominator) stats->min_denominator = d;
    if (d < guard) {
      fail = StageFail::Singular;
      return std::nullopt;
    }
    if (as_double(v.abs()) > escape) {
      fail = StageFail::Escape;
      return std::nullopt;
    }
    Cx<T> num{f.lambda1 + v.re * fre, v.im * fre};
    return (v * num) / den;
  };

  T theta = theta_a;
  T h = h_max;
  emit(theta, w);

  std::optional<Cx<T>> k1 = rhs(theta, w);
  if (!k1) throw NumericalError("SingularCrossing", "initial condition on the guard set");

  Cx<T> k[8];
  k[1] = *k1;
  while (theta < theta_b) {
    if (h > theta_b - theta) h = theta_b - theta;
    bool stage_ok = true;
    for (int s = 2; s <= 7 && stage_ok; ++s) {
      Cx<T> acc{};
      for (int j = 1; j < s; ++j) acc = acc + tb.a[s][j] * k[j];
      std::optional<Cx<T>> ks = rhs(theta + tb.c[s] * h, w + h * acc);
      if (!ks) {
        stage_ok = false;
        break;
      }
      k[s] = *ks;
    }
    if (stage_ok) {
      Cx<T> wn{};
      for (int j = 1; j <= 6; ++j) wn = wn + tb.a[7][j] * k[j];
      wn = w + h * wn;  // 5th-order solution (the b-weights are row 7 plus b7 = 0)
      Cx<T> err{};
      for (int j = 1; j <= 7; ++j) err = err + tb.e[j] * k[j];
      T sc = abs_tol + rel_tol * std::max(w.abs(), wn.abs());
      double ratio = as_double(h * err.abs() / sc);
      if (ratio <= 1.0) {
        theta = theta + h;
        w = wn;
        k[1] = k[7];  // FSAL reuse
        if (stats) ++stats->steps;
        emit(theta, w);
        if (as_double(w.abs()) > escape) {
          if (h <= h_min)
            throw NumericalError("Escape", "trajectory exceeded the escape cap");
        }
        double grow = ratio > 0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
        h = h * T(std::clamp(grow, 0.2, 5.0));
        if (h > h_max) h = h_max;
        continue;
      }
      if (stats) ++stats->rejected;
      double shrink = std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.9);
      h = h * T(shrink);
    } else {
      if (stats) ++stats->rejected;
      h = h * T(0.25);
    }
    if (h < h_min) {
      if (fail == StageFail::Singular)
        throw NumericalError("SingularCrossing", "denominator guard reached");
      if (fail == StageFail::Escape)
        throw NumericalError("Escape", "trajectory exceeded the escape cap");
      throw NumericalError("StepFailure", "step size underflow");
    }
    fail = StageFail::None;
  }
  return w;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

Cx<double> run_double(const FieldParams& f, Cplx w0, const IntegratorOptions& opt,
                      double theta_a, double theta_b, CoreStats* stats,
                      Trajectory* traj) {
  FieldT<double> ft = widen<double>(f);
  auto emit = [&](double th, const Cx<double>& w) {
    if (traj) traj->samples.push_back({th, Cplx(w.re, w.im)});
  };
  return integrate_core<double>(ft, Cx<double>{w0.real(), w0.imag()}, theta_a, theta_b,
                                opt.rel_tol, opt.abs_tol, opt.guard, opt.escape_cap,
                                1e-13, kTwoPi / 64, stats, emit);
}

}  // namespace

Trajectory integrate(const FieldParams& f, Cplx w0, const IntegratorOptions& opt) {
  Trajectory traj;
  CoreStats stats;
  run_double(f, w0, opt, 0.0, kTwoPi, &stats, &traj);
  traj.steps = stats.steps;
  traj.rejected = stats.rejected;
  traj.min_denominator = stats.min_denominator;
  return traj;
}

Cplx poincare_map(const FieldParams& f, Cplx x, const IntegratorOptions& opt) {
  CoreStats stats;
  Cx<double> w = run_double(f, x, opt, 0.0, kTwoPi, &stats, nullptr);
  return Cplx(w.re, w.im);
}

double displacement(const FieldParams& f, double x, const IntegratorOptions& opt) {
  Cplx w = poincare_map(f, Cplx(x, 0), opt);
  return w.real() - x;
}

BigFloat displacement_hp(const FieldParams& f, const BigFloat& x, double rel_tol,
                         double abs_tol) {
  FieldT<BigFloat> ft = widen<BigFloat>(f);
  BigFloat two_pi = 2 * big_pi();
  Cx<BigFloat> w0{x, BigFloat(0)};
  Cx<BigFloat> w = integrate_core<BigFloat>(
      ft, w0, BigFloat(0), two_pi, BigFloat(rel_tol), BigFloat(abs_tol), 1e-6, 1e3,
      BigFloat(1e-40), two_pi / 64, nullptr, [](const BigFloat&, const Cx<BigFloat>&) {});
  return w.re - x;
}

double admissible_radius(const FieldParams& f) {
  if (f.lambda1 <= 0.1) return 0.0005;
  return 0.005 * std::exp(-4 * f.lambda1 * M_PI);
}

double lipschitz_L(const FieldParams& f) {
  return f.lambda1 <= 0.1 ? 0.2 : 2 * f.lambda1;
}

namespace {

// Distance from a real-plane point z to the non-origin singular set, clamped
// to 1e6 when that set is empty or unrecoverable. Mirrors the deleted
// neighborhoods of the tame region.
struct SingularDistance {
  field::SingularPointSet points;
  bool has_line = false;
  Cplx line_a;  // the singular line is 2 Re(a z) + 1 = 0

  explicit SingularDistance(const FieldParams& f) {
    points = field::singular_points(f, 1e-9);
    if (points.degenerate) {
      Cplx mu = f.mu();
      Cplx a = f.A / mu;
      has_line = std::abs(f.C) <= 1e-9 &&
                 std::abs(f.B - mu * std::conj(a)) <= 1e-9 && std::abs(a) > 1e-12;
      line_a = a;
    }
  }

  double operator()(Cplx z) const {
    double best = 1e6;
    Cplx zb = std::conj(z);
    for (const auto& p : points.points)
      best = std::min(best, std::sqrt(std::norm(z - p.u) + std::norm(zb - p.v)));
    if (has_line)
      best = std::min(best, std::abs(2 * (line_a * z).real() + 1) / (2 * std::abs(line_a)));
    return best;
  }
};

double grid_point(double x_min, double x_max, int i, int n) {
  // Geometric from x_min up to 1e-2 on the first half, uniform above.
  double split = 1e-2;
  if (x_max <= split || x_min >= split) {
    double t = static_cast<double>(i) / (n - 1);
    return x_min * std::pow(x_max / x_min, t);
  }
  int half = n / 2;
  if (i < half) {
    double t = static_cast<double>(i) / (half - 1);
    return x_min * std::pow(split / x_min, t);
  }
  double t = static_cast<double>(i - half + 1) / (n - half);
  return split + t * (x_max - split);
}

}  // namespace

TameClassification classify_tame(const FieldParams& f, double delta, double x_star) {
  if (!(delta > 0 && delta < 1)) throw InputError("BadDelta", "delta must lie in (0,1)");
  IntegratorOptions opt;
  opt.escape_cap = 10.0 / delta;
  Trajectory traj = integrate(f, Cplx(x_star, 0), opt);
  SingularDistance dist(f);
  TameClassification tc;
  tc.min_singular_distance = 1e6;
  for (const auto& s : traj.samples) {
    Cplx z = s.w * std::polar(1.0, s.theta);
    tc.max_radius = std::max(tc.max_radius, std::abs(z));
    tc.min_singular_distance = std::min(tc.min_singular_distance, dist(z));
  }
  tc.tame = tc.max_radius <= 1.0 / delta && tc.min_singular_distance >= delta;
  return tc;
}

CycleSearchResult find_cycles(const FieldParams& f, double delta, double x_min,
                              int grid_points) {
  if (!(delta > 0 && delta <= 0.1))
    throw InputError("BadDelta", "delta must lie in (0, 0.1]");
  if (!field::lambda1_gate(f, delta))
    throw InputError("GateViolation", "lambda1 exceeds 4/delta");
  if (!(x_min > 0) || grid_points < 8)
    throw InputError("BadGrid", "x_min must be positive and grid_points >= 8");

  IntegratorOptions opt;
  opt.escape_cap = 10.0 / delta;
  double x_max = 1.0 / delta;
  auto noise = [&](double x) { return 1e3 * (opt.abs_tol + opt.rel_tol * x); };

  enum class Kind { Ok, Degenerate, Hole };
  struct Sample {
    double x, d;
    Kind kind;
    std::string reason;
  };
  std::vector<Sample> samples(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    double x = grid_point(x_min, x_max, i, grid_points);
    Sample s{x, 0, Kind::Ok, {}};
    try {
      s.d = displacement(f, x, opt);
      if (std::abs(s.d) <= noise(x)) s.kind = Kind::Degenerate;
    } catch (const NumericalError& e) {
      s.kind = Kind::Hole;
      s.reason = e.code();
    }
    samples[i] = s;
  }

  CycleSearchResult res;
  for (int i = 0; i < grid_points;) {  // holes and degenerate runs
    if (samples[i].kind == Kind::Hole) {
      int j = i;
      while (j + 1 < grid_points && samples[j + 1].kind == Kind::Hole) ++j;
      res.holes.push_back({samples[i].x, samples[j].x, samples[i].reason});
      i = j + 1;
    } else if (samples[i].kind == Kind::Degenerate) {
      int j = i;
      while (j + 1 < grid_points && samples[j + 1].kind == Kind::Degenerate) ++j;
      res.degenerate_intervals.emplace_back(samples[i].x, samples[j].x);
      i = j + 1;
    } else {
      ++i;
    }
  }

  auto disp = [&](double x) { return displacement(f, x, opt); };
  std::vector<double> roots;
  for (int i = 0; i + 1 < grid_points; ++i) {
    const Sample& a = samples[i];
    const Sample& b = samples[i + 1];
    if (a.kind != Kind::Ok || b.kind != Kind::Ok) continue;
    if (a.d * b.d >= 0) continue;
    double lo = a.x, hi = b.x, dlo = a.d;
    try {
      for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        double dm = disp(mid);
        if (dm == 0) {
          lo = hi = mid;
          break;
        }
        if ((dm > 0) == (dlo > 0)) {
          lo = mid;
          dlo = dm;
        } else {
          hi = mid;
        }
      }
    } catch (const NumericalError& e) {
      res.holes.push_back({a.x, b.x, e.code()});
      continue;
    }
    roots.push_back(0.5 * (lo + hi));
  }

  for (double x : roots) {
    bool dup = false;
    for (const auto& c : res.cycles)
      dup = dup || std::abs(c.x_star - x) < 1e-8 * std::max(1.0, x);
    if (dup) continue;
    LimitCycleRecord rec;
    rec.x_star = x;
    try {
      rec.residual = std::abs(disp(x));
      if (rec.residual > 1e-9) {
        res.holes.push_back({x, x, "UnresolvedRoot"});
        continue;
      }
      double h = std::max(1e-7, 1e-4 * x);
      double slope = disp(x + h) - disp(x - h);
      rec.stability = slope > 0 ? 1 : (slope < 0 ? -1 : 0);
      TameClassification tc = classify_tame(f, delta, x);
      rec.tame = tc.tame;
      rec.min_singular_distance = tc.min_singular_distance;
      rec.max_radius = tc.max_radius;
    } catch (const NumericalError& e) {
      res.holes.push_back({x, x, e.code()});
      continue;
    }
    res.cycles.push_back(rec);
    if (rec.tame && (!res.a_defined || rec.x_star > res.a_lambda)) {
      res.a_lambda = rec.x_star;
      res.a_defined = true;
    }
  }
  return res;
}

DisplacementMax max_displacement(const FieldParams& f, const KRegion& region,
                                 int samples) {
  DisplacementMax m;
  double eps = admissible_radius(f);
  if (region.a_lambda > 0) {
    for (int i = 1; i <= samples; ++i) {
      double x = region.a_lambda * i / samples;
      m.value = std::max(m.value, std::abs(displacement(f, x)));
      ++m.samples;
    }
  }
  for (int i = 0; i < samples; ++i) {
    Cplx w0 = std::polar(eps, kTwoPi * i / samples);
    m.value = std::max(m.value, std::abs(poincare_map(f, w0) - w0));
    ++m.samples;
  }
  return m;
}

DisplacementMax max_displacement(const FieldParams& f, const URegion& region,
                                 int samples) {
  if (!(region.radius > 0)) throw InputError("BadRegion", "radius must be positive");
  DisplacementMax m;
  for (int i = 0; i < samples; ++i) {
    Cplx w0 = std::polar(region.radius, kTwoPi * i / samples);
    m.value = std::max(m.value, std::abs(poincare_map(f, w0) - w0));
    ++m.samples;
  }
  return m;
}

GronwallReport gronwall_check(const FieldParams& f, Cplx w0) {
  double eps = admissible_radius(f);
  if (std::abs(w0) > eps * (1 + 1e-12))
    throw InputError("BadInitialValue", "|w0| must not exceed the admissible radius");
  GronwallReport rep;
  rep.bound = std::abs(w0) * std::exp(kTwoPi * lipschitz_L(f));
  if (w0 == Cplx()) return rep;
  Trajectory traj = integrate(f, w0);
  for (const auto& s : traj.samples)
    rep.sup_actual = std::max(rep.sup_actual, std::abs(s.w));
  return rep;
}

DivergenceReport divergence_check(const FieldParams& f, Cplx w0) {
  if (std::abs(w0) > 0.0005 * (1 + 1e-12))
    throw InputError("BadInitialValue", "|w0| must not exceed 0.0005");
  FieldParams f0 = f;
  f0.lambda1 = 0;
  DivergenceReport rep;
  double L = lipschitz_L(f);
  rep.bound = kTwoPi * (f.lambda1 / 96.0) * std::exp(kTwoPi * L);
  // Compare at shared nodes by resetting both integrations segment by segment.
  const int nodes = 128;
  IntegratorOptions opt;
  Cx<double> wa{w0.real(), w0.imag()}, wb = wa;
  FieldT<double> fa = widen<double>(f), fb = widen<double>(f0);
  CoreStats stats;
  auto noemit = [](double, const Cx<double>&) {};
  for (int i = 0; i < nodes; ++i) {
    double ta = kTwoPi * i / nodes, tbnd = kTwoPi * (i + 1) / nodes;
    wa = integrate_core<double>(fa, wa, ta, tbnd, opt.rel_tol, opt.abs_tol, opt.guard,
                                opt.escape_cap, 1e-13, kTwoPi / 64, &stats, noemit);
    wb = integrate_core<double>(fb, wb, ta, tbnd, opt.rel_tol, opt.abs_tol, opt.guard,
                                opt.escape_cap, 1e-13, kTwoPi / 64, &stats, noemit);
    rep.actual = std::max(rep.actual, (wa - wb).abs());
  }
  return rep;
}

GapReport strip_gap_check(const FieldParams& f, double delta, double kappa) {
  if (!(delta > 0 && delta < 0.1) || !(kappa > 0 && kappa < 0.1))
    throw InputError("BadParameter", "delta and kappa must lie in (0, 0.1)");
  field::SingularDecomposition dec = field::singular_decomposition(f);
  if (dec.kappa_distance < kappa)
    throw InputError("NotKappaDistant",
                     "field is closer than kappa to the singular fields");

  GapReport rep;
  rep.beta = std::pow(delta, 14) * kappa / 1e10;
  Cplx mu = f.mu();
  rep.H_l2 = std::abs(mu) * std::sqrt(M_PI * (std::norm(dec.b) + std::norm(dec.c)));
  rep.H_l2_threshold = std::abs(mu) * kappa / std::sqrt(2.0);

  const int n = 4096;
  double minH = std::numeric_limits<double>::infinity();
  double S = std::numeric_limits<double>::infinity();
  double s_max = 0;
  for (int i = 0; i < n; ++i) {
    double theta = kTwoPi * i / n;
    field::PolarData pd = field::polar_data(f, theta);
    if (pd.g >= -1e-12) continue;
    double r = -1.0 / pd.g - rep.beta;
    if (r <= 0) continue;
    Cplx z = std::polar(r, theta);
    if (!field::in_tame_region(f, delta, z)) continue;

    Cplx e1 = std::polar(1.0, theta);
    Cplx em1 = std::conj(e1);
    Cplx em3 = em1 * em1 * em1;
    double H = (std::conj(mu) * (dec.b * em1 + dec.c * em3)).imag();
    minH = std::min(minH, std::abs(H));

    double field_slope =
        std::abs(r * (f.lambda1 + r * pd.f) / (1.0 + r * pd.g));
    S = std::min(S, field_slope);

    Cplx hprime = Cplx(0, 1) * (f.A * e1 - f.B * em1 - 3.0 * f.C * em3);
    double curve_slope = std::abs(hprime.imag()) / (pd.g * pd.g);
    s_max = std::max(s_max, curve_slope);
    ++rep.sample_count;
  }
  if (rep.sample_count == 0) {
    rep.empty_arc = true;
    rep.pass = false;
    return rep;
  }
  rep.minH_on_gamma = minH;
  rep.S_est = S;
  rep.s_est = s_max;
  rep.pass = rep.H_l2 >= rep.H_l2_threshold && rep.S_est > rep.s_est;
  return rep;
}

}  // namespace qvf::poincare
