#include "qvf/symbolic.hpp"

#include <algorithm>
#include <set>

namespace qvf::symbolic {

const char* const kVarNames[NVARS] = {"a1", "a2", "b1", "b2", "c1", "c2", "pi"};

bool mono_less(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Equal degree: lex with pi most significant, then c2, ..., a1 least.
  for (int i = NVARS - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

std::string Monomial::str() const {
  std::string s;
  for (int i = 0; i < NVARS; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += kVarNames[i];
    if (e[i] > 1) s += "^" + std::to_string(int(e[i]));
  }
  return s.empty() ? "1" : s;
}

unsigned ParamPoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void ParamPoly::add_term(const Monomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  ParamPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

ParamPoly& ParamPoly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

ParamPoly ParamPoly::conj() const {
  ParamPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conj());
  return r;
}

ParamPoly ParamPoly::re_part() const {
  ParamPoly r;
  for (const auto& [m, c] : terms_)
    if (c.re() != 0) r.terms_.emplace(m, GaussRational(c.re(), mpq_class(0)));
  return r;
}

ParamPoly ParamPoly::im_part() const {
  ParamPoly r;
  for (const auto& [m, c] : terms_)
    if (c.im() != 0) r.terms_.emplace(m, GaussRational(c.im(), mpq_class(0)));
  return r;
}

bool ParamPoly::has_real_coefficients() const {
  for (const auto& [m, c] : terms_)
    if (c.im() != 0) return false;
  return true;
}

bool ParamPoly::min_pi_degree_at_least(unsigned k) const {
  for (const auto& [m, c] : terms_)
    if (m.e[VPI] < k) return false;
  return true;
}

std::string ParamPoly::str() const {
  if (terms_.empty()) return "(0, 0)";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.str();
    if (m.degree() > 0) s += "*" + m.str();
  }
  return s;
}

ParamPoly pp_add(const ParamPoly& p, const ParamPoly& q) { return p + q; }
ParamPoly pp_mul(const ParamPoly& p, const ParamPoly& q) { return p * q; }

ReduceResult pp_reduce(const ParamPoly& p, std::span<const ParamPoly> gens) {
  ReduceResult res;
  res.cofactors.assign(gens.size(), ParamPoly());
  ParamPoly work = p;
  while (!work.is_zero()) {
    const auto [lm, lc] = work.leading();
    bool reduced = false;
    for (size_t k = 0; k < gens.size(); ++k) {
      if (gens[k].is_zero()) continue;
      const auto& [gm, gc] = gens[k].leading();
      if (!gm.divides(lm)) continue;
      Monomial q = gm.quotient_of(lm);
      GaussRational coeff = lc / gc;
      ParamPoly t = ParamPoly::term(q, coeff);
      res.cofactors[k] += t;
      work -= t * gens[k];
      reduced = true;
      break;
    }
    if (!reduced) {
      res.remainder.add_term(lm, lc);
      ParamPoly t = ParamPoly::term(lm, lc);
      work -= t;
    }
  }
  return res;
}

namespace {

// Complex parameter polynomial helpers for the generator formulas.
ParamPoly cx(Var re, Var im) {
  ParamPoly p = ParamPoly::variable(re);
  p += ParamPoly::variable(im) * GaussRational::i();
  return p;
}

}  // namespace

ParamPoly gen_g2() {
  // g2 = Im(AB)
  ParamPoly A = cx(VA1, VA2), B = cx(VB1, VB2);
  return (A * B).im_part();
}

ParamPoly gen_g3() {
  // g3 = Im[(2A + conj B)(A − 2 conj B) conj(B) C]
  ParamPoly A = cx(VA1, VA2), B = cx(VB1, VB2), C = cx(VC1, VC2);
  ParamPoly Bc = B.conj();
  ParamPoly two(GaussRational(2));
  ParamPoly p = (A * two + Bc) * (A - Bc * two) * Bc * C;
  return p.im_part();
}

ParamPoly gen_g4() {
  // g4 = Im[(2A + conj B)(|B|² − |C|²) conj(B)² C]
  ParamPoly A = cx(VA1, VA2), B = cx(VB1, VB2), C = cx(VC1, VC2);
  ParamPoly Bc = B.conj();
  ParamPoly mod = B * Bc - C * C.conj();
  ParamPoly p = (A * ParamPoly(GaussRational(2)) + Bc) * mod * Bc * Bc * C;
  return p.im_part();
}

QuasiTrigPoly QuasiTrigPoly::term(int k, int m, ParamPoly p) {
  QuasiTrigPoly q;
  q.claims_real_ = k == 0 && p.has_real_coefficients();
  if (!p.is_zero()) q.terms_.emplace(Key{k, m}, std::move(p));
  return q;
}

void QuasiTrigPoly::add_term(int k, int m, const ParamPoly& p) {
  claims_real_ = false;  // callers that preserve realness restore the flag
  if (p.is_zero()) return;
  auto [it, fresh] = terms_.emplace(Key{k, m}, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QuasiTrigPoly& QuasiTrigPoly::operator+=(const QuasiTrigPoly& o) {
  bool real = claims_real_ && o.claims_real_;
  for (const auto& [key, p] : o.terms_) add_term(key.k, key.m, p);
  claims_real_ = real;
  return *this;
}

QuasiTrigPoly& QuasiTrigPoly::operator-=(const QuasiTrigPoly& o) {
  bool real = claims_real_ && o.claims_real_;
  for (const auto& [key, p] : o.terms_) add_term(key.k, key.m, -p);
  claims_real_ = real;
  return *this;
}

QuasiTrigPoly operator*(const QuasiTrigPoly& a, const QuasiTrigPoly& b) {
  QuasiTrigPoly r;
  for (const auto& [ka, pa] : a.terms())
    for (const auto& [kb, pb] : b.terms()) r.add_term(ka.k + kb.k, ka.m + kb.m, pa * pb);
  r.set_claims_real(a.claims_real() && b.claims_real());
  return r;
}

QuasiTrigPoly QuasiTrigPoly::operator*(const GaussRational& c) const {
  QuasiTrigPoly r;
  for (const auto& [key, p] : terms_) r.add_term(key.k, key.m, p * c);
  r.claims_real_ = claims_real_ && c.is_real();
  return r;
}

QuasiTrigPoly QuasiTrigPoly::operator*(const ParamPoly& p) const {
  QuasiTrigPoly r;
  for (const auto& [key, q] : terms_) r.add_term(key.k, key.m, q * p);
  r.claims_real_ = claims_real_ && p.has_real_coefficients();
  return r;
}

QuasiTrigPoly QuasiTrigPoly::conj() const {
  QuasiTrigPoly r;
  for (const auto& [key, p] : terms_) r.add_term(-key.k, key.m, p.conj());
  r.claims_real_ = claims_real_;
  return r;
}

bool QuasiTrigPoly::is_conjugate_symmetric() const {
  for (const auto& [key, p] : terms_) {
    auto it = terms_.find(Key{-key.k, key.m});
    if (it == terms_.end() || !(it->second == p.conj())) return false;
  }
  return true;
}

std::vector<int> QuasiTrigPoly::frequencies() const {
  std::set<int> ks;
  for (const auto& [key, p] : terms_) ks.insert(key.k);
  return {ks.begin(), ks.end()};
}

int QuasiTrigPoly::max_theta_power() const {
  int m = 0;
  for (const auto& [key, p] : terms_) m = std::max(m, key.m);
  return m;
}

std::string QuasiTrigPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [key, p] : terms_) {
    if (!s.empty()) s += "\n";
    s += "k=" + std::to_string(key.k) + " m=" + std::to_string(key.m) + ": " + p.str();
  }
  return s;
}

QuasiTrigPoly qt_mul(const QuasiTrigPoly& p, const QuasiTrigPoly& q) { return p * q; }

QuasiTrigPoly qt_integrate(const QuasiTrigPoly& q) {
  QuasiTrigPoly out;
  for (const auto& [key, p] : q.terms()) {
    if (key.k == 0) {
      out.add_term(0, key.m + 1, p * GaussRational(1, key.m + 1));
      continue;
    }
    // Repeated integration by parts:
    //   \int θ^m e^{ikθ} dθ = e^{ikθ} Σ_j (−1)^j m!/(m−j)! θ^{m−j} / (ik)^{j+1},
    // then subtract the antiderivative's value at 0 so the result vanishes there.
    GaussRational inv_ik = GaussRational(1) / (GaussRational::i() * GaussRational(key.k));
    GaussRational factor = inv_ik;  // (−1)^j m!/(m−j)! (ik)^{−(j+1)} at j = 0
    for (int j = 0; j <= key.m; ++j) {
      out.add_term(key.k, key.m - j, p * factor);
      if (j == key.m) out.add_term(0, 0, p * (-factor));  // value at θ = 0
      factor *= inv_ik * GaussRational(-(key.m - j));
    }
  }
  out.set_claims_real(q.claims_real());
  return out;
}

QuasiTrigPoly qt_derivative(const QuasiTrigPoly& q) {
  QuasiTrigPoly out;
  for (const auto& [key, p] : q.terms()) {
    if (key.m > 0) out.add_term(key.k, key.m - 1, p * GaussRational(key.m));
    if (key.k != 0) out.add_term(key.k, key.m, p * (GaussRational::i() * GaussRational(key.k)));
  }
  out.set_claims_real(q.claims_real());
  return out;
}

ParamPoly qt_eval_2pi(const QuasiTrigPoly& q) {
  ParamPoly out;
  for (const auto& [key, p] : q.terms()) {
    // e^{2πik} = 1, θ^m = 2^m π^m with symbolic π.
    GaussRational two_m(1);
    for (int j = 0; j < key.m; ++j) two_m *= GaussRational(2);
    out += p * ParamPoly::term(Monomial::var(VPI, unsigned(key.m)), two_m);
  }
  return out;
}

FG build_fg() {
  ParamPoly A = cx(VA1, VA2), B = cx(VB1, VB2), C = cx(VC1, VC2);
  QuasiTrigPoly h;
  h.add_term(1, 0, A);
  h.add_term(-1, 0, B);
  h.add_term(-3, 0, C);
  QuasiTrigPoly hc = h.conj();
  GaussRational half(1, 2);
  GaussRational minus_half_i = GaussRational(mpq_class(0), mpq_class(-1, 2));
  FG fg;
  fg.f = (h + hc) * half;
  fg.g = (h - hc) * minus_half_i;
  fg.f.set_claims_real(true);
  fg.g.set_claims_real(true);
  return fg;
}

}  // namespace qvf::symbolic
