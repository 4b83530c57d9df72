#include "homoset/pencil.hpp"

#include <cmath>

#include "homoset/detail/pencil_kernels.hpp"

namespace homoset {

PencilCoefficients char_poly_coeffs(const Mat3& a, const Mat3& b) {
  double c[4];
  detail::char_poly_k(a.e.data(), b.e.data(), c);
  return {c[0], c[1], c[2], c[3]};
}

DoubleRootResult double_root_cubic(double a, double b, double c, double d, double eps_deg) {
  if (a == 0.0) throw InvalidArgumentError("double_root_cubic: leading coefficient is zero");
  const double den_core = b * b - 3.0 * a * c;
  const double scale = std::max(b * b, std::abs(3.0 * a * c));
  const double margin = scale > 0.0 ? std::abs(den_core) / scale : 0.0;
  if (scale == 0.0 || std::abs(den_core) <= eps_deg * scale)
    throw DegenerateRootError("cubic has a triple root or no unique double root");
  DoubleRootResult r;
  r.mu = (9.0 * a * d - b * c) / (2.0 * den_core);
  r.mu_squared_check = (c * c - 3.0 * b * d) / den_core;
  r.degeneracy_margin = margin;
  return r;
}

double omega(const Mat3& h_i, const Mat3& h_1, double eps_deg) {
  if (!is_invertible(h_i) || !is_invertible(h_1))
    throw NonInvertibleError("omega: both pencil matrices must be invertible");
  const auto ev = detail::omega_guarded(h_i.e.data(), h_1.e.data(), eps_deg);
  if (ev.degenerate)
    throw DegenerateRootError("omega: pencil has no unique non-degenerate double root");
  return ev.omega;
}

bool verify_double_eigenvalue(const Mat3& a, const Mat3& b, const Vec3& v1, const Vec3& v2,
                              double mu, double tol) {
  const double n1 = v1.norm(), n2 = v2.norm();
  if (n1 == 0.0 || n2 == 0.0) return false;
  if (v1.cross(v2).norm() <= 1e-12 * n1 * n2) return false;  // linearly dependent

  const double fa = frob(a), fb = frob(b);
  if (fa == 0.0 || fb == 0.0) return false;
  const Mat3 an = a * (1.0 / fa);
  const Mat3 bn = b * (1.0 / fb);
  const double mu_n = mu * fb / fa;

  // eigen-residuals of the witnesses on the normalised pencil
  for (const Vec3* v : {&v1, &v2}) {
    const Vec3 r = an * (*v) - mu_n * (bn * (*v));
    if (r.norm() > 1e-6 * v->norm() * std::max(1.0, std::abs(mu_n))) return false;
  }

  const PencilCoefficients p = char_poly_coeffs(an, bn);
  return std::abs(p.eval(mu_n)) <= tol && std::abs(p.eval_derivative(mu_n)) <= tol;
}

}  // namespace homoset
