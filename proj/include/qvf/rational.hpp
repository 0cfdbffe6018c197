#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace qvf::symbolic {

// Gaussian rational: re + i*im with exact rational parts, kept in canonical
// reduced form (gmp canonicalizes arithmetic results; constructors must
// canonicalize explicitly).
class GaussRational {
public:
  GaussRational() : re_(0), im_(0) {}
  GaussRational(long n) : re_(n), im_(0) {}
  GaussRational(long num, long den) : re_(num, den), im_(0) { re_.canonicalize(); }
  GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational i() { return GaussRational(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRational conj() const { return GaussRational(re_, mpq_class(-im_)); }

  GaussRational operator-() const { return GaussRational(mpq_class(-re_), mpq_class(-im_)); }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    mpq_class n2 = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n2;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n2;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  GaussRational pow(unsigned e) const {
    GaussRational acc(1);
    GaussRational base = *this;
    for (; e; e >>= 1) {
      if (e & 1) acc *= base;
      if (e > 1) base *= base;
    }
    return acc;
  }

  // Canonical form "(re, im)" with each part "p" or "p/q", q > 0.
  std::string str() const {
    return "(" + part_str(re_) + ", " + part_str(im_) + ")";
  }

private:
  static std::string part_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }

  mpq_class re_, im_;
};

}  // namespace qvf::symbolic
