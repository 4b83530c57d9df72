#pragma once

// Characteristic polynomial of a 3x3 matrix pencil (A, B), i.e. of
// lambda -> det(A - lambda B), and the closed-form non-degenerate double
// root of a cubic. The double root of the pencil (H_i, H_1) recovers the
// relative scale linking two homographies of the same camera pair.

#include "homoset/linalg.hpp"

namespace homoset {

/// Coefficients of p(lambda) = det(a - lambda b) written as
/// sum_n (-1)^n c_n lambda^n. By construction c0 = det a and c3 = det b.
struct PencilCoefficients {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double eval(double lambda) const {
    return c0 - lambda * (c1 - lambda * (c2 - lambda * c3));
  }
  double eval_derivative(double lambda) const {
    return -c1 + lambda * (2.0 * c2 - 3.0 * lambda * c3);
  }
};

PencilCoefficients char_poly_coeffs(const Mat3& a, const Mat3& b);

struct DoubleRootResult {
  double mu = 0.0;                // the double root
  double mu_squared_check = 0.0;  // second formula; equals mu^2 when non-degenerate
  double degeneracy_margin = 0.0; // |b^2 - 3ac| / max(b^2, |3ac|)
};

/// Unique non-degenerate double root of a*x^3 + b*x^2 + c*x + d:
///   mu = (9ad - bc) / (2(b^2 - 3ac)),  mu^2 = (c^2 - 3bd) / (b^2 - 3ac).
/// Throws DegenerateRootError when |b^2 - 3ac| <= eps_deg * max(b^2, |3ac|)
/// (triple root, or no unique double root).
DoubleRootResult double_root_cubic(double a, double b, double c, double d,
                                   double eps_deg = 1e-9);

/// Double root of det(h_i - lambda h_1) straight from the pencil
/// coefficients. The inputs are Frobenius-normalised internally and the
/// result rescaled back, so the value is positively homogeneous of degree
/// (1, -1) in (h_i, h_1). Throws DegenerateRootError on a vanishing
/// denominator and NonInvertibleError on singular input.
double omega(const Mat3& h_i, const Mat3& h_1, double eps_deg = 1e-9);

/// True when mu is a double generalized eigenvalue of (a, b) witnessed by
/// the independent eigenvectors v1, v2: checks the eigen-residuals and
/// that both p(mu) and p'(mu) vanish within tol on unit-Frobenius
/// normalised matrices. Violations return false rather than throwing.
bool verify_double_eigenvalue(const Mat3& a, const Mat3& b, const Vec3& v1,
                              const Vec3& v2, double mu, double tol = 1e-9);

namespace detail {
// Single authoritative bridge between the alternating-sign coefficients
// and the standard cubic a*x^3 + b*x^2 + c*x + d.
struct StandardCubic {
  double a, b, c, d;
};
inline StandardCubic to_standard_cubic(const PencilCoefficients& p) {
  return {-p.c3, p.c2, -p.c1, p.c0};
}
}  // namespace detail

}  // namespace homoset
