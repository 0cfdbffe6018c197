#include "qvf/bautin.hpp"
#include "qvf/bounds.hpp"
#include "qvf/errors.hpp"
#include "qvf/field.hpp"
#include "qvf/jsonio.hpp"
#include "qvf/poincare.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace {

using qvf::BigFloat;
using qvf::jsonio::json;
using qvf::field::Cplx;
using qvf::field::FieldParams;

void emit(const json& doc) { std::fputs(qvf::jsonio::dump(doc).c_str(), stdout); }

std::string csv_path_for(const std::string& base, size_t k) {
  if (k == 0) return base;
  size_t dot = base.find_last_of('.');
  std::string suffix = "_" + std::to_string(k);
  if (dot == std::string::npos || dot == 0) return base + suffix;
  return base.substr(0, dot) + suffix + base.substr(dot);
}

// Random field in the A = 1 cell with coefficients in the cell bounds.
FieldParams random_n1_field(std::mt19937_64& rng, double lambda1_max) {
  std::uniform_real_distribution<double> u(-1, 1);
  double lambda1 = lambda1_max * std::abs(u(rng));
  Cplx B(2 * u(rng), 2 * u(rng)), C(u(rng), u(rng));
  while (std::abs(B) > 2) B = {2 * u(rng), 2 * u(rng)};
  while (std::abs(C) > 1) C = {u(rng), u(rng)};
  return qvf::field::make_field(lambda1, 1, B, C, qvf::field::Form::N1);
}

struct Suite {
  std::string name;
  int cases = 0;
  int failures = 0;
};

Suite selftest_gronwall(std::mt19937_64& rng, int n) {
  Suite s{"gronwall", n, 0};
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < n; ++i) {
    FieldParams f = random_n1_field(rng, 0.5);
    double eps = qvf::poincare::admissible_radius(f);
    Cplx w0 = std::polar(eps * std::abs(u(rng)), M_PI * u(rng));
    qvf::poincare::GronwallReport rep = qvf::poincare::gronwall_check(f, w0);
    if (!(rep.sup_actual <= rep.bound)) ++s.failures;
  }
  return s;
}

Suite selftest_divergence(std::mt19937_64& rng, int n) {
  Suite s{"divergence", n, 0};
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < n; ++i) {
    FieldParams f = random_n1_field(rng, 0.1);
    Cplx w0 = std::polar(0.0005 * std::abs(u(rng)), M_PI * u(rng));
    qvf::poincare::DivergenceReport rep = qvf::poincare::divergence_check(f, w0);
    if (!(rep.actual <= rep.bound)) ++s.failures;
  }
  return s;
}

Suite selftest_trig(std::mt19937_64& rng, int n) {
  Suite s{"trig_min_bound", 0, 0};
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < n; ++i) {
    qvf::bounds::TrigCubic H{{u(rng), u(rng), u(rng), u(rng)}};
    double alpha = 0.05 + 0.55 * std::abs(u(rng));
    try {
      qvf::bounds::TrigMinBound mb = qvf::bounds::trig_min_bound(H, alpha);
      ++s.cases;
      if (!(mb.empirical_min >= mb.lower_bound)) ++s.failures;
    } catch (const qvf::NumericalError&) {
      // empty alpha-region: vacuous case
    } catch (const qvf::InputError&) {
      // zero polynomial draw
    }
  }
  return s;
}

Suite selftest_zero_bound(std::mt19937_64& rng, int n) {
  Suite s{"zero_bound", n, 0};
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> inner(1, 5), outer(0, 3);
  for (int i = 0; i < n; ++i) {
    // Roots on K = [0, 1/2] are the true count; extra roots stay outside U.
    std::vector<Cplx> roots;
    int k = inner(rng);
    for (int j = 0; j < k; ++j) roots.emplace_back(0.25 + 0.25 * u(rng), 0.0);
    int e = outer(rng);
    for (int j = 0; j < e; ++j) roots.push_back(std::polar(1.5 + u(rng) + 1.0, M_PI * u(rng)));
    auto value = [&](Cplx z) {
      Cplx p(1, 0);
      for (Cplx r : roots) p *= z - r;
      return std::abs(p);
    };
    double m = 0, M = 0;
    for (int j = 0; j <= 400; ++j) m = std::max(m, value(Cplx(0.5 * j / 400, 0)));
    for (int j = 0; j < 512; ++j) M = std::max(M, value(std::polar(1.0, M_PI * 2 * j / 512)));
    double bound = qvf::bounds::zero_bound(M, m, 0.5, 0.5);
    if (!(bound >= k)) ++s.failures;
  }
  return s;
}

Suite selftest_parseval(std::mt19937_64& rng, int n) {
  Suite s{"parseval", n, 0};
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < n; ++i) {
    qvf::bounds::TrigCubic H{{u(rng), u(rng), u(rng), u(rng)}};
    const int N = 4096;
    double q = 0;
    for (int j = 0; j < N; ++j) {
      double v = H.eval(2 * M_PI * j / N);
      q += v * v;
    }
    q = std::sqrt(q * 2 * M_PI / N);
    if (!(std::abs(q - H.l2_norm()) <= 1e-10 * (1 + q))) ++s.failures;
  }
  return s;
}

Suite selftest_isocline(std::mt19937_64& rng, int n) {
  Suite s{"isocline_identity", 0, 0};
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < n; ++i) {
    FieldParams f = random_n1_field(rng, 0.5);
    qvf::field::SingularDecomposition dec = qvf::field::singular_decomposition(f);
    double theta = M_PI * u(rng);
    qvf::field::PolarData pd = qvf::field::polar_data(f, theta);
    if (pd.g >= -1e-3) continue;  // isocline needs g < 0
    ++s.cases;
    double r = -1.0 / pd.g;
    double lhs = r * (f.lambda1 + r * pd.f) * pd.g * pd.g;
    Cplx em1 = std::polar(1.0, -theta);
    double H = (std::conj(f.mu()) * (dec.b * em1 + dec.c * em1 * em1 * em1)).imag();
    if (!(std::abs(lhs + H) <= 1e-9 * (1 + std::abs(H)))) ++s.failures;
  }
  return s;
}

json run_selftest(unsigned long seed) {
  std::mt19937_64 rng(seed);
  json suites = json::array();
  bool pass = true;
  for (const Suite& s :
       {selftest_gronwall(rng, 100), selftest_divergence(rng, 100),
        selftest_trig(rng, 200), selftest_zero_bound(rng, 100),
        selftest_parseval(rng, 200), selftest_isocline(rng, 400)}) {
    suites.push_back({{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}});
    pass = pass && s.failures == 0;
  }
  return {{"seed", seed}, {"suites", suites}, {"pass", pass}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic vector field analyzer"};
  app.require_subcommand(1);

  std::string field_spec, csv_path;
  double delta = 0.05, sigma = 0.05, kappa = 0.05;
  double tol_rel = 1e-10, tol_abs = 1e-12, tol = 1e-9;
  double x_min = 1e-6, lambda1 = 0;
  double zb_M = 0, zb_m = 0, zb_D = 0, zb_eps = 0;
  std::vector<double> at;
  unsigned long seed = 1;
  int digits = 50, grid = 2048;

  app.add_option("--digits", digits, "working precision for BigFloat evaluations");

  CLI::App* c_norm = app.add_subcommand("normalize", "canonical cell representative");
  c_norm->add_option("--field", field_spec, "field JSON (inline or path)")->required();

  CLI::App* c_cent = app.add_subcommand("centers", "center-condition residuals");
  c_cent->add_option("--field", field_spec)->required();

  CLI::App* c_sing = app.add_subcommand("singular", "non-origin singular points");
  c_sing->add_option("--field", field_spec)->required();
  c_sing->add_option("--tol", tol, "acceptance tolerance for solutions");

  CLI::App* c_cyc = app.add_subcommand("cycles", "limit cycle search");
  c_cyc->add_option("--field", field_spec)->required();
  c_cyc->add_option("--delta", delta)->required();
  c_cyc->add_option("--x-min", x_min);
  c_cyc->add_option("--grid", grid);
  c_cyc->add_option("--csv", csv_path, "trajectory CSV path (one file per cycle)");

  CLI::App* c_bautin = app.add_subcommand("bautin", "exact jet machinery");
  c_bautin->require_subcommand(1);
  CLI::App* c_bverify = c_bautin->add_subcommand("verify", "appendix identities + constants");
  CLI::App* c_bjet = c_bautin->add_subcommand("jet", "jet coefficient polynomials");
  c_bjet->add_option("--field", field_spec, "optional evaluation point");

  CLI::App* c_gap = app.add_subcommand("gap-check", "lower strip no-contact check");
  c_gap->add_option("--field", field_spec)->required();
  c_gap->add_option("--delta", delta)->required();
  c_gap->add_option("--kappa", kappa)->required();

  CLI::App* c_bound = app.add_subcommand("bound", "closed-form bound report");
  c_bound->add_option("--at", at, "delta sigma kappa")->expected(3)->required();
  c_bound->add_option("--lambda1", lambda1);

  CLI::App* c_zb = app.add_subcommand("zero-bound", "growth-and-zeros estimate");
  c_zb->add_option("--M", zb_M)->required();
  c_zb->add_option("--m", zb_m)->required();
  c_zb->add_option("--D", zb_D)->required();
  c_zb->add_option("--eps", zb_eps)->required();

  CLI::App* c_self = app.add_subcommand("selftest", "seeded property suites");
  c_self->add_option("--seed", seed);

  // Accepted for interface completeness; the double-path integrator tolerances.
  c_cyc->add_option("--tol-rel", tol_rel);
  c_cyc->add_option("--tol-abs", tol_abs);
  c_cent->add_option("--sigma", sigma);

  try {
    app.parse(argc, argv);
    qvf::set_precision_digits(digits);

    if (*c_norm) {
      qvf::jsonio::LoadedField lf = qvf::jsonio::load_field_spec(field_spec);
      qvf::field::NormalizeResult r;
      if (lf.transform) {
        r.field = lf.field;
        r.transform = *lf.transform;
      } else {
        r = qvf::field::normalize(lf.field.mu(), lf.field.A, lf.field.B, lf.field.C);
      }
      emit(qvf::jsonio::to_json(r));
    } else if (*c_cent) {
      FieldParams f = qvf::jsonio::load_field_spec(field_spec).field;
      json doc = qvf::jsonio::to_json(qvf::field::center_residuals(f),
                                      qvf::field::sigma_distance(f));
      doc["sigma"] = sigma;
      doc["sigma_distant"] = qvf::field::sigma_distance(f) >= sigma;
      emit(doc);
    } else if (*c_sing) {
      FieldParams f = qvf::jsonio::load_field_spec(field_spec).field;
      emit(qvf::jsonio::to_json(qvf::field::singular_points(f, tol)));
    } else if (*c_cyc) {
      FieldParams f = qvf::jsonio::load_field_spec(field_spec).field;
      qvf::poincare::CycleSearchResult r =
          qvf::poincare::find_cycles(f, delta, x_min, grid);
      json doc = qvf::jsonio::to_json(r);
      if (!csv_path.empty()) {
        json written = json::array();
        for (size_t k = 0; k < r.cycles.size(); ++k) {
          std::string path = csv_path_for(csv_path, k);
          qvf::jsonio::write_trajectory_csv(
              path, qvf::poincare::integrate(f, Cplx(r.cycles[k].x_star, 0)));
          written.push_back(path);
        }
        doc["csv_files"] = written;
      }
      emit(doc);
    } else if (*c_bverify) {
      qvf::bautin::DecompositionReport rep = qvf::bautin::verify_appendix();
      qvf::bautin::verify_constant_bounds(rep);
      json doc = qvf::jsonio::to_json(rep);
      doc["splitting"] = qvf::jsonio::to_json(qvf::bautin::verify_splitting_constants());
      emit(doc);
    } else if (*c_bjet) {
      qvf::bautin::JetCoefficients jc = qvf::bautin::jet();
      json a;
      for (int j = 1; j <= 7; ++j) a["a" + std::to_string(j)] = jc.a[j].str();
      json doc = {{"a", a}};
      if (!field_spec.empty()) {
        FieldParams f = qvf::jsonio::load_field_spec(field_spec).field;
        qvf::symbolic::ParamPoint<BigFloat> point{
            BigFloat(f.A.real()), BigFloat(f.A.imag()), BigFloat(f.B.real()),
            BigFloat(f.B.imag()), BigFloat(f.C.real()), BigFloat(f.C.imag()),
            qvf::big_pi()};
        json vals = json::array();
        for (int j = 1; j <= 7; ++j)
          vals.push_back(jc.a[j].eval(point).re.convert_to<double>());
        doc["at_field"] = vals;
      }
      emit(doc);
    } else if (*c_gap) {
      FieldParams f = qvf::jsonio::load_field_spec(field_spec).field;
      emit(qvf::jsonio::to_json(qvf::poincare::strip_gap_check(f, delta, kappa)));
    } else if (*c_bound) {
      qvf::bounds::BoundReport rep = qvf::bounds::bound_report(lambda1, at[0], at[1], at[2]);
      emit(qvf::jsonio::to_json(rep));
    } else if (*c_zb) {
      emit(json{{"bound", qvf::bounds::zero_bound(zb_M, zb_m, zb_D, zb_eps)}});
    } else if (*c_self) {
      json doc = run_selftest(seed);
      emit(doc);
      return doc["pass"].get<bool>() ? 0 : 1;
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(json{{"error",
               {{"type", "input"}, {"code", "BadArguments"}, {"message", e.what()}}}});
    return 2;
  } catch (const qvf::InputError& e) {
    emit(json{{"error",
               {{"type", "input"}, {"code", e.code()}, {"message", e.what()}}}});
    return 2;
  } catch (const qvf::NumericalError& e) {
    emit(json{{"error",
               {{"type", "numerical"}, {"code", e.code()}, {"message", e.what()}}}});
    return 3;
  }
}
