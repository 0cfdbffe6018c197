#include "qvf/bigfloat.hpp"

namespace qvf {

void set_precision_digits(unsigned digits) {
  BigFloat::default_precision(digits);
}

unsigned precision_digits() { return BigFloat::default_precision(); }

BigFloat big_pi() {
  BigFloat p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

}  // namespace qvf
