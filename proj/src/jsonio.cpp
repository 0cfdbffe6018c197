#include "qvf/jsonio.hpp"

#include "qvf/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qvf::jsonio {

namespace {

json cplx(field::Cplx z) { return json::array({z.real(), z.imag()}); }

field::Cplx as_cplx(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("BadField", std::string(key) + " must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const bautin::DecompositionReport::Sup& s) {
  return {{"grid", s.grid}, {"cap", s.cap}, {"claimed", s.claimed}, {"pass", s.pass}};
}

}  // namespace

json to_json(const field::FieldParams& f) {
  return {{"lambda1", f.lambda1},
          {"A", cplx(f.A)},
          {"B", cplx(f.B)},
          {"C", cplx(f.C)},
          {"form", field::form_name(f.form)}};
}

json to_json(const field::NormalizeResult& r) {
  return {{"field", to_json(r.field)},
          {"transform",
           {{"c", cplx(r.transform.c)},
            {"c_prime", r.transform.c_prime},
            {"conjugated", r.transform.conjugated},
            {"time_reversed", r.transform.time_reversed}}}};
}

json to_json(const field::CenterResiduals& g, double sigma_distance) {
  return {{"g", json::array({g.g1, g.g2, g.g3, g.g4})},
          {"sigma_distance", sigma_distance}};
}

json to_json(const field::SingularPointSet& s) {
  json pts = json::array();
  for (const auto& p : s.points)
    pts.push_back({{"u", cplx(p.u)}, {"v", cplx(p.v)}, {"is_real", p.is_real}});
  return {{"points", pts}, {"degenerate", s.degenerate}};
}

json to_json(const poincare::CycleSearchResult& r) {
  json cycles = json::array();
  for (const auto& c : r.cycles)
    cycles.push_back({{"x_star", c.x_star},
                      {"residual", c.residual},
                      {"stability", c.stability},
                      {"tame", c.tame},
                      {"min_singular_distance", c.min_singular_distance},
                      {"max_radius", c.max_radius}});
  json holes = json::array();
  for (const auto& h : r.holes)
    holes.push_back({{"x_lo", h.x_lo}, {"x_hi", h.x_hi}, {"reason", h.reason}});
  json degen = json::array();
  for (const auto& d : r.degenerate_intervals)
    degen.push_back(json::array({d.first, d.second}));
  json a = r.a_defined ? json(r.a_lambda) : json(nullptr);
  return {{"cycles", cycles},
          {"holes", holes},
          {"degenerate_intervals", degen},
          {"a_lambda", a},
          {"k_fallback", !r.a_defined}};
}

json to_json(const poincare::GapReport& r) {
  return {{"beta", r.beta},
          {"S_est", r.S_est},
          {"s_est", r.s_est},
          {"minH_on_gamma", r.minH_on_gamma},
          {"H_l2", r.H_l2},
          {"H_l2_threshold", r.H_l2_threshold},
          {"empty_arc", r.empty_arc},
          {"sample_count", r.sample_count},
          {"pass", r.pass}};
}

json to_json(const bautin::DecompositionReport& r) {
  json j = {{"identities_pass", r.identities_pass},
            {"residual3_zero", r.residual3.is_zero()},
            {"residual5_zero", r.residual5.is_zero()},
            {"residual7_zero", r.residual7.is_zero()},
            {"membership4_zero", r.remainder4.is_zero()},
            {"membership6_zero", r.remainder6.is_zero()}};
  if (r.constants_filled) {
    j["B1"] = r.B1;
    j["B1_pass"] = r.B1_pass;
    j["C1"] = r.C1;
    j["C1_pass"] = r.C1_pass;
    j["C2"] = r.C2;
    j["C2_pass"] = r.C2_pass;
    j["sup_g2"] = to_json(r.sup_g2);
    j["sup_g3"] = to_json(r.sup_g3);
    j["sup_g4"] = to_json(r.sup_g4);
  }
  return j;
}

json to_json(const bautin::SplittingReport& r) {
  return {{"alpha", r.alpha},
          {"beta", r.beta},
          {"eps", r.eps},
          {"lhs_alpha", r.lhs_alpha},
          {"rhs_alpha", r.rhs_alpha},
          {"alpha_pass", r.alpha_pass},
          {"lhs_beta", r.lhs_beta},
          {"rhs_beta", r.rhs_beta},
          {"beta_pass", r.beta_pass},
          {"m2", r.m2},
          {"m3", r.m3},
          {"m4", r.m4},
          {"ordering_pass", r.ordering_pass},
          {"m4_floor", r.m4_floor},
          {"m4_above_floor", r.m4_above_floor}};
}

json to_json(const bounds::BoundReport& r) {
  return {{"eps_lambda", r.eps_lambda},
          {"L_cap", r.L_cap},
          {"m_lower", r.m_lower},
          {"beta", r.beta},
          {"kappa_prime", r.kappa_prime},
          {"gap_eps", r.gap_eps},
          {"geom_exponent", r.geom_exponent},
          {"bernstein_cap", r.bernstein_cap},
          {"lnlnH", r.H.lnln.convert_to<double>()},
          {"lnlnH_precise", r.H.lnln.str(30)},
          {"linear_correction", r.H.linear_correction}};
}

LoadedField field_from_json(const json& j) {
  if (!j.is_object()) throw InputError("BadField", "field spec must be a JSON object");
  for (const char* key : {"lambda1", "A", "B", "C", "form"})
    if (!j.contains(key))
      throw InputError("BadField", std::string("missing key ") + key);
  if (!j["lambda1"].is_number())
    throw InputError("BadField", "lambda1 must be a number");
  double lambda1 = j["lambda1"].get<double>();
  field::Cplx A = as_cplx(j["A"], "A"), B = as_cplx(j["B"], "B"),
              C = as_cplx(j["C"], "C");
  std::string form = j["form"].is_string() ? j["form"].get<std::string>() : "";

  LoadedField out;
  if (form == "raw") {
    field::NormalizeResult r = field::normalize({lambda1, 1.0}, A, B, C);
    out.field = r.field;
    out.transform = r.transform;
    return out;
  }
  field::Form f;
  if (form == "N1") f = field::Form::N1;
  else if (form == "N2") f = field::Form::N2;
  else if (form == "N3") f = field::Form::N3;
  else throw InputError("BadField", "form must be N1, N2, N3 or raw");
  out.field = field::make_field(lambda1, A, B, C, f);
  return out;
}

LoadedField load_field_spec(const std::string& spec) {
  std::string text = spec;
  size_t first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw InputError("BadField", "empty field spec");
  if (spec[first] != '{') {
    std::ifstream in(spec);
    if (!in) throw InputError("BadField", "cannot open field file: " + spec);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("BadField", "field spec is not valid JSON");
  return field_from_json(j);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_trajectory_csv(const std::string& path, const poincare::Trajectory& t) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw InputError("BadOutput", "cannot open CSV file: " + path);
  std::fputs("theta,re_w,im_w\n", out);
  for (const auto& s : t.samples)
    std::fprintf(out, "%.17g,%.17g,%.17g\n", s.theta, s.w.real(), s.w.imag());
  std::fclose(out);
}

}  // namespace qvf::jsonio
