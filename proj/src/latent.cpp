#include "homoset/latent.hpp"

#include <cmath>

#include "homoset/detail/pencil_kernels.hpp"
#include "homoset/pencil.hpp"

namespace homoset {

std::vector<double> LatentParameters::pack() const {
  std::vector<double> x;
  x.reserve(dim());
  for (double e : a_matrix.e) x.push_back(e);
  x.push_back(b_vec.x);
  x.push_back(b_vec.y);
  x.push_back(b_vec.z);
  for (const Vec3& v : v_vecs) {
    x.push_back(v.x);
    x.push_back(v.y);
    x.push_back(v.z);
  }
  for (double w : w_scalars) x.push_back(w);
  return x;
}

LatentParameters LatentParameters::unpack(const std::vector<double>& x, int i_count) {
  if (static_cast<int>(x.size()) != 12 + 4 * i_count)
    throw InvalidArgumentError("LatentParameters::unpack: wrong length");
  LatentParameters eta;
  for (int k = 0; k < 9; ++k) eta.a_matrix.e[k] = x[k];
  eta.b_vec = {x[9], x[10], x[11]};
  eta.v_vecs.resize(i_count);
  for (int i = 0; i < i_count; ++i)
    eta.v_vecs[i] = {x[12 + 3 * i], x[13 + 3 * i], x[14 + 3 * i]};
  eta.w_scalars.assign(x.begin() + 12 + 3 * i_count, x.end());
  return eta;
}

HomographyCollection pi_map(const LatentParameters& eta) {
  const int count = eta.plane_count();
  if (count < 1 || static_cast<int>(eta.v_vecs.size()) != count)
    throw InvalidArgumentError("pi_map: inconsistent latent dimensions");
  HomographyCollection hs;
  hs.h.reserve(count);
  for (int i = 0; i < count; ++i) {
    Mat3 m = eta.w_scalars[i] * eta.a_matrix + outer(eta.b_vec, eta.v_vecs[i]);
    if (!is_invertible(m))
      throw NonInvertibleError("pi_map: output matrix fails the invertibility threshold");
    hs.h.push_back(m);
  }
  return hs;
}

LatentParameters apply_gauge(const LatentParameters& eta, const GaugeTransform& g) {
  if (g.alpha == 0.0 || g.beta == 0.0)
    throw InvalidArgumentError("apply_gauge: alpha and beta must be nonzero");
  LatentParameters out;
  out.a_matrix = g.beta * eta.a_matrix + outer(eta.b_vec, g.c_vec);
  out.b_vec = g.alpha * eta.b_vec;
  const int count = eta.plane_count();
  out.v_vecs.resize(count);
  out.w_scalars.resize(count);
  for (int i = 0; i < count; ++i) {
    out.v_vecs[i] =
        (1.0 / g.alpha) * eta.v_vecs[i] - (eta.w_scalars[i] / (g.alpha * g.beta)) * g.c_vec;
    out.w_scalars[i] = eta.w_scalars[i] / g.beta;
  }
  return out;
}

FactorizeResult factorize(const HomographyCollection& hs, double warn_residual,
                          double eps_deg) {
  const int count = hs.size();
  if (count < 2) throw InvalidArgumentError("factorize: need at least two homographies");

  std::vector<double> scales(count);
  std::vector<Mat3> unit(count);
  for (int i = 0; i < count; ++i) {
    if (!is_invertible(hs[i])) throw NonInvertibleError("factorize: singular member matrix");
    scales[i] = frob(hs[i]);
    unit[i] = hs[i] * (1.0 / scales[i]);
  }

  FactorizeResult out;
  out.eta.a_matrix = hs[0];
  out.eta.v_vecs.assign(count, Vec3{});
  out.eta.w_scalars.assign(count, 0.0);
  out.eta.w_scalars[0] = 1.0;

  // pencil roots on normalised matrices, scaled back so that
  // w_i = omega(H_i, H_1) at the original scales
  MatX j(3, 3 * (count - 1));
  for (int i = 1; i < count; ++i) {
    const auto ev = detail::omega_guarded(unit[i].e.data(), unit[0].e.data(), eps_deg);
    if (ev.degenerate)
      throw DegenerateRootError("factorize: degenerate pencil for member " + std::to_string(i));
    const double w = ev.omega * scales[i] / scales[0];
    out.eta.w_scalars[i] = w;
    const Mat3 block = (unit[i] - ev.omega * unit[0]) * scales[i];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) j(r, 3 * (i - 1) + c) = block(r, c);
  }

  double scale_sum = 0.0;
  for (int i = 1; i < count; ++i) scale_sum += scales[i];
  const double jnorm = frob(j);
  if (jnorm <= 1e-13 * scale_sum) {
    // pure relative scalings of the reference: the rank-one part is absent
    out.eta.b_vec = Vec3{};
    out.rank_one_residual = 0.0;
    return out;
  }

  const RankOne ro = rank_one_approx(j);
  out.eta.b_vec = ro.b;
  for (int i = 1; i < count; ++i)
    out.eta.v_vecs[i] = {ro.w[3 * (i - 1)], ro.w[3 * (i - 1) + 1], ro.w[3 * (i - 1) + 2]};
  out.rank_one_residual = ro.residual / jnorm;
  out.rank_one_warning = out.rank_one_residual > warn_residual;
  return out;
}

LatentParameters canonicalize_split(const LatentParameters& eta) {
  LatentParameters out = eta;
  const int count = eta.plane_count();
  const double nb = eta.b_vec.norm();
  double nv2 = 0.0;
  for (int i = 1; i < count; ++i) nv2 += eta.v_vecs[i].dot(eta.v_vecs[i]);
  const double nv = std::sqrt(nv2);
  if (nb > 0.0 && nv > 0.0) {
    const double alpha = std::sqrt(nv / nb);
    out.b_vec = alpha * eta.b_vec;
    for (int i = 0; i < count; ++i) out.v_vecs[i] = eta.v_vecs[i] / alpha;
  }
  int imax = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(out.b_vec[i]) > std::abs(out.b_vec[imax])) imax = i;
  if (out.b_vec[imax] < 0.0) {
    out.b_vec = -out.b_vec;
    for (Vec3& v : out.v_vecs) v = -v;
  }
  return out;
}

}  // namespace homoset
