#pragma once

#include <type_traits>

namespace qvf::symbolic {

template <typename T>
T rational_to(const mpq_class& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.get_d();
  } else {
    // Exact route for multiprecision types: integer strings, one division.
    T num(q.get_num().get_str());
    T den(q.get_den().get_str());
    return num / den;
  }
}

template <typename T>
ParamPoly::Eval<T> ParamPoly::eval(const ParamPoint<T>& pt) const {
  Eval<T> out;
  for (const auto& [m, c] : terms_) {
    T v(1);
    for (int i = 0; i < NVARS; ++i)
      for (unsigned k = 0; k < m.e[i]; ++k) v *= pt[i];
    out.re += rational_to<T>(c.re()) * v;
    out.im += rational_to<T>(c.im()) * v;
  }
  return out;
}

}  // namespace qvf::symbolic
