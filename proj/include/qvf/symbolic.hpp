#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qvf/rational.hpp"

namespace qvf::symbolic {

// Variables of the parameter ring, A = a1 + i*a2, B = b1 + i*b2, C = c1 + i*c2,
// plus pi as a free commuting symbol (never substituted in exact computations).
enum Var : int { VA1 = 0, VA2, VB1, VB2, VC1, VC2, VPI, NVARS };

extern const char* const kVarNames[NVARS];

// Monomial in the seven variables. Order: graded lex with a1<a2<b1<b2<c1<c2<pi
// (pi is the most significant variable at equal total degree).
struct Monomial {
  std::array<std::uint8_t, NVARS> e{};

  unsigned degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool divides(const Monomial& m) const {
    for (int i = 0; i < NVARS; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
  Monomial operator*(const Monomial& m) const {
    Monomial r;
    for (int i = 0; i < NVARS; ++i) r.e[i] = std::uint8_t(e[i] + m.e[i]);
    return r;
  }
  // Requires divides(m) on the divisor side: r = m / *this.
  Monomial quotient_of(const Monomial& m) const {
    Monomial r;
    for (int i = 0; i < NVARS; ++i) r.e[i] = std::uint8_t(m.e[i] - e[i]);
    return r;
  }
  bool operator==(const Monomial& m) const { return e == m.e; }

  static Monomial var(Var v, unsigned k = 1) {
    Monomial m;
    m.e[v] = std::uint8_t(k);
    return m;
  }

  std::string str() const;
};

// grlex compare, true when a < b.
bool mono_less(const Monomial& a, const Monomial& b);

// Comparator placing the leading (largest) monomial first in map iteration.
struct MonoGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return mono_less(b, a); }
};

// Numeric parameter point; T is double or a multiprecision float.
template <typename T>
struct ParamPoint {
  T a1{}, a2{}, b1{}, b2{}, c1{}, c2{}, pi{};
  const T& operator[](int v) const {
    switch (v) {
      case VA1: return a1;
      case VA2: return a2;
      case VB1: return b1;
      case VB2: return b2;
      case VC1: return c1;
      case VC2: return c2;
      default: return pi;
    }
  }
};

class ParamPoly {
public:
  using Terms = std::map<Monomial, GaussRational, MonoGreater>;

  ParamPoly() = default;
  explicit ParamPoly(const GaussRational& c) {
    if (!c.is_zero()) terms_[Monomial{}] = c;
  }
  static ParamPoly variable(Var v) {
    ParamPoly p;
    p.terms_[Monomial::var(v)] = GaussRational(1);
    return p;
  }
  static ParamPoly term(const Monomial& m, const GaussRational& c) {
    ParamPoly p;
    if (!c.is_zero()) p.terms_[m] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;

  // Leading term under the fixed order; polynomial must be nonzero.
  const std::pair<const Monomial, GaussRational>& leading() const { return *terms_.begin(); }

  void add_term(const Monomial& m, const GaussRational& c);

  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly operator-() const;
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
  ParamPoly& operator*=(const GaussRational& c);
  friend ParamPoly operator*(ParamPoly a, const GaussRational& c) { return a *= c; }
  bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

  ParamPoly conj() const;      // conjugate coefficients (variables are real)
  ParamPoly re_part() const;   // coefficient-wise real part
  ParamPoly im_part() const;   // coefficient-wise imaginary part
  bool has_real_coefficients() const;
  // True when every monomial carries pi to at least the given power.
  bool min_pi_degree_at_least(unsigned k) const;

  std::string str() const;

  template <typename T>
  struct Eval {
    T re{}, im{};
  };

  template <typename T>
  Eval<T> eval(const ParamPoint<T>& pt) const;

private:
  Terms terms_;
};

ParamPoly pp_add(const ParamPoly& p, const ParamPoly& q);
ParamPoly pp_mul(const ParamPoly& p, const ParamPoly& q);

struct ReduceResult {
  std::vector<ParamPoly> cofactors;
  ParamPoly remainder;
};

// Multivariate division of p by the generator list w.r.t. the fixed term
// order: p = sum cofactors[k]*gens[k] + remainder, no remainder term divisible
// by any generator's leading monomial.
ReduceResult pp_reduce(const ParamPoly& p, std::span<const ParamPoly> gens);

// Center-condition generators g2 = Im(AB), g3, g4 of Theorem 1, as exact
// parameter polynomials (pi-free).
ParamPoly gen_g2();
ParamPoly gen_g3();
ParamPoly gen_g4();

// Quasi-trigonometric polynomial: sum over (k, m) of p_{k,m}(params) θ^m e^{ikθ}.
class QuasiTrigPoly {
public:
  struct Key {
    int k = 0;
    int m = 0;
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, ParamPoly>;

  QuasiTrigPoly() = default;
  static QuasiTrigPoly term(int k, int m, ParamPoly p);
  static QuasiTrigPoly constant(const ParamPoly& p) { return term(0, 0, p); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool claims_real() const { return claims_real_; }
  void set_claims_real(bool v) { claims_real_ = v; }

  void add_term(int k, int m, const ParamPoly& p);

  QuasiTrigPoly& operator+=(const QuasiTrigPoly& o);
  QuasiTrigPoly& operator-=(const QuasiTrigPoly& o);
  friend QuasiTrigPoly operator+(QuasiTrigPoly a, const QuasiTrigPoly& b) { return a += b; }
  friend QuasiTrigPoly operator-(QuasiTrigPoly a, const QuasiTrigPoly& b) { return a -= b; }
  friend QuasiTrigPoly operator*(const QuasiTrigPoly& a, const QuasiTrigPoly& b);
  QuasiTrigPoly operator*(const GaussRational& c) const;
  QuasiTrigPoly operator*(const ParamPoly& p) const;
  bool operator==(const QuasiTrigPoly& o) const { return terms_ == o.terms_; }

  QuasiTrigPoly conj() const;  // p_{k,m} -> conj(p)_{-k,m}
  // Exact check of the conjugate symmetry the real-valued flag asserts.
  bool is_conjugate_symmetric() const;

  // Frequency support (sorted ascending, unique).
  std::vector<int> frequencies() const;
  int max_theta_power() const;

  std::string str() const;

private:
  Terms terms_;
  bool claims_real_ = true;  // zero is real-valued
};

QuasiTrigPoly qt_mul(const QuasiTrigPoly& p, const QuasiTrigPoly& q);

// Exact antiderivative Q with Q(0) = 0 (by parts for k != 0, power rule for k = 0).
QuasiTrigPoly qt_integrate(const QuasiTrigPoly& q);

// d/dθ, used as the integration oracle.
QuasiTrigPoly qt_derivative(const QuasiTrigPoly& q);

// Substitute θ = 2π: e^{2πik} = 1 and θ^m = 2^m π^m with symbolic π.
ParamPoly qt_eval_2pi(const QuasiTrigPoly& q);

struct FG {
  QuasiTrigPoly f, g;
};

// f = Re h, g = Im h for h(θ) = A e^{iθ} + B e^{-iθ} + C e^{-3iθ} with symbolic
// coefficients; both carry the real-valued flag.
FG build_fg();

}  // namespace qvf::symbolic

#include "qvf/symbolic_eval.inl"
