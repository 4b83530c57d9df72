#pragma once

// Scalar-generic kernels for the pencil algebra. Instantiated with double
// for the public API and with Dual inside the constraint Jacobians, so
// values and derivatives always come from the same arithmetic.
//
// All 3x3 arguments are pointers to 9 scalars in row-major order.

#include <cmath>

#include "homoset/dual.hpp"

namespace homoset::detail {

template <class T>
T det3_k(const T* m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

template <class T>
T frob_k(const T* m) {
  T s = T(0);
  for (int i = 0; i < 9; ++i) s += m[i] * m[i];
  using std::sqrt;
  return sqrt(s);
}

// det of the matrix whose column j is taken from b when pick[j] is set,
// and from a otherwise
template <class T>
T det_mixed_cols(const T* a, const T* b, bool pick0, bool pick1, bool pick2) {
  T m[9];
  const bool pick[3] = {pick0, pick1, pick2};
  for (int c = 0; c < 3; ++c) {
    const T* src = pick[c] ? b : a;
    m[c] = src[c];
    m[3 + c] = src[3 + c];
    m[6 + c] = src[6 + c];
  }
  return det3_k(m);
}

// coefficients of det(a - lambda b) = sum_n (-1)^n c_n lambda^n
template <class T>
void char_poly_k(const T* a, const T* b, T c[4]) {
  c[0] = det3_k(a);
  c[1] = det_mixed_cols(a, b, true, false, false) + det_mixed_cols(a, b, false, true, false) +
         det_mixed_cols(a, b, false, false, true);
  c[2] = det_mixed_cols(a, b, false, true, true) + det_mixed_cols(a, b, true, false, true) +
         det_mixed_cols(a, b, true, true, false);
  c[3] = det3_k(b);
}

template <class T>
struct OmegaEval {
  T omega = T(0);      // valid only when !degenerate
  double margin = 0.0; // |c2^2 - 3 c1 c3| / max(c2^2, |3 c1 c3|) on unit-normalised inputs
  bool degenerate = false;
};

// Double root of det(hi - lambda h1) via the closed-form coefficient
// formula. Inputs are Frobenius-normalised internally and the root is
// rescaled back, which conditions the degree-3 determinant sums.
template <class T>
OmegaEval<T> omega_guarded(const T* hi, const T* h1, double eps_deg) {
  const T fa = frob_k(hi);
  const T fb = frob_k(h1);
  T an[9], bn[9];
  for (int k = 0; k < 9; ++k) {
    an[k] = hi[k] / fa;
    bn[k] = h1[k] / fb;
  }
  T c[4];
  char_poly_k(an, bn, c);

  const T den_core = c[2] * c[2] - T(3) * c[1] * c[3];
  const double scale =
      std::max(value_of(c[2]) * value_of(c[2]), std::abs(3.0 * value_of(c[1]) * value_of(c[3])));

  OmegaEval<T> out;
  out.margin = scale > 0.0 ? std::abs(value_of(den_core)) / scale : 0.0;
  if (std::abs(value_of(den_core)) <= eps_deg * scale || scale == 0.0) {
    out.degenerate = true;
    return out;
  }
  const T w_hat = (c[1] * c[2] - T(9) * c[0] * c[3]) / (T(2) * den_core);
  out.omega = w_hat * fa / fb;
  return out;
}

}  // namespace homoset::detail
