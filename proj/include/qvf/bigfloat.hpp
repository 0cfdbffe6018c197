#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace qvf {

// Dynamic-precision real used for high-precision bound evaluation. Precision
// is process-global; set_precision_digits before constructing values.
using BigFloat = boost::multiprecision::mpfr_float;

void set_precision_digits(unsigned digits);
unsigned precision_digits();

BigFloat big_pi();

}  // namespace qvf
