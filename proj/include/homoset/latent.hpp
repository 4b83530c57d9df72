#pragma once

// Latent parametrisation of a consistent homography set,
//   H_i = w_i * A + b * v_i^T,
// its five-parameter gauge freedom, and the factorisation of a
// (near-)consistent collection back into latent variables.

#include <vector>

#include "homoset/consistency.hpp"
#include "homoset/linalg.hpp"

namespace homoset {

struct LatentParameters {
  Mat3 a_matrix;
  Vec3 b_vec;
  std::vector<Vec3> v_vecs;     // one per homography
  std::vector<double> w_scalars;

  int plane_count() const { return static_cast<int>(w_scalars.size()); }
  int dim() const { return 12 + 4 * plane_count(); }

  /// Packing order: A (row-major, 9), b (3), v_1..v_I (3 each), w_1..w_I.
  std::vector<double> pack() const;
  static LatentParameters unpack(const std::vector<double>& x, int i_count);
};

struct GaugeTransform {
  double alpha = 1.0;
  double beta = 1.0;
  Vec3 c_vec;
};

/// H_i = w_i * A + b * v_i^T for every i. Throws NonInvertibleError when an
/// output fails the scale-relative invertibility test, and
/// InvalidArgumentError when some w_i is zero (such an H_i would have rank
/// one).
HomographyCollection pi_map(const LatentParameters& eta);

/// Reparametrisation leaving pi_map invariant:
///   A' = beta A + b c^T,  b' = alpha b,
///   v_i' = alpha^-1 v_i - alpha^-1 beta^-1 w_i c,  w_i' = beta^-1 w_i.
LatentParameters apply_gauge(const LatentParameters& eta, const GaugeTransform& g);

struct FactorizeResult {
  LatentParameters eta;
  double rank_one_residual = 0.0;  // ||J - b w^T||_F / ||J||_F
  bool rank_one_warning = false;   // residual above the diagnostic threshold
};

/// Factors a collection into canonical-gauge latent variables:
/// A = H_1, w_1 = 1, v_1 = 0, w_i the pencil double root, and (b, v_i)
/// from the rank-one factorisation of J. Exact round-trip on consistent
/// input. Each matrix is Frobenius-normalised before the pencil algebra
/// and the factors are rescaled back, so pi_map(eta) reproduces the input
/// at its original scales. Throws DegenerateRootError when a pencil
/// denominator vanishes; a poor rank-one fit only sets the warning flag.
FactorizeResult factorize(const HomographyCollection& hs,
                          double warn_residual = 1e-3, double eps_deg = 1e-9);

/// Rewrites eta in the convention factorize emits: balanced rank-one
/// split (||b|| equals the stacked non-reference v norm) and the
/// largest-magnitude entry of b positive. Gauge-equivalent to the input.
LatentParameters canonicalize_split(const LatentParameters& eta);

}  // namespace homoset
