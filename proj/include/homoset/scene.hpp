#pragma once

// Synthetic two-view scenes: uncalibrated camera pairs, planar patches
// with rectangular sampling regions, ground-truth homographies, point
// sampling and Gaussian measurement noise. Everything is deterministic
// given a seed.

#include <cstdint>
#include <vector>

#include "homoset/consistency.hpp"
#include "homoset/latent.hpp"
#include "homoset/linalg.hpp"
#include "homoset/rng.hpp"

namespace homoset {

struct CameraModel {
  Mat3 k_matrix;  // upper triangular, positive diagonal
  Mat3 r_matrix;  // rotation
  Vec3 t_vec;     // camera centre in world coordinates

  /// Pixel projection of a world point; throws DegenerateSceneError on
  /// non-positive depth.
  Vec2 project(const Vec3& x) const;
  double depth(const Vec3& x) const;
};

struct PlaneModel {
  Vec3 n_vec;      // unit normal
  double d = 0.0;  // plane offset: n^T x = d on the plane
};

/// Rectangular sampling patch lying on a plane.
struct PlanarRegion {
  Vec3 origin;  // rectangle centre, on the plane
  Vec3 u_axis;  // in-plane orthonormal axes
  Vec3 w_axis;
  double half_u = 0.0;
  double half_w = 0.0;

  Vec3 point(double s, double t) const {  // s, t in [-1, 1]
    return origin + (s * half_u) * u_axis + (t * half_w) * w_axis;
  }
};

struct SceneModel {
  CameraModel cam1, cam2;
  std::vector<PlaneModel> planes;
  std::vector<PlanarRegion> regions;  // one per plane

  int plane_count() const { return static_cast<int>(planes.size()); }
};

struct CorrespondenceSet {
  struct Plane {
    std::vector<Vec2> m1;  // view-1 pixels
    std::vector<Vec2> m2;  // view-2 pixels
  };
  std::vector<Plane> planes;
  std::vector<Plane> truth;  // noise-free originals, same indexing (optional)

  int plane_count() const { return static_cast<int>(planes.size()); }
  bool has_truth() const { return !truth.empty(); }
};

struct SceneConfig {
  int planes = 4;
  double image_width = 640.0;
  double image_height = 480.0;
  double focal_min = 600.0;
  double focal_max = 800.0;
  double cam1_max_angle_deg = 15.0;
  double cam2_max_angle_deg = 30.0;
  double baseline_min = 0.5;
  double baseline_max = 2.0;
  double plane_dist_min = 4.0;
  double plane_dist_max = 8.0;
  double region_side_min = 0.3;  // rectangle side lengths, scene units
  double region_side_max = 1.0;
  double min_w_fraction = 0.05;  // reject planes with |w_i| < this * |d_i|
  double min_normal_baseline_angle_deg = 15.0;
};

/// Random scene with visible planar patches. Deterministic given the rng
/// state; throws DegenerateSceneError when no valid geometry is found
/// within the retry budget.
SceneModel make_random_scene(const SceneConfig& cfg, Rng& rng);

/// Ground-truth homographies H_i = w_i A + b v_i^T of the scene, where
/// A = K2 R2 R1^-1 K1^-1, b = K2 R2 (t1 - t2), w_i = d_i - n_i^T t1 and
/// v_i = K1^-T R1 n_i. Throws DegenerateSceneError when some w_i = 0.
HomographyCollection true_homographies(const SceneModel& s);

/// The latent variables realising true_homographies; pi_map of the result
/// equals true_homographies(s) entrywise.
LatentParameters scene_latents(const SceneModel& s);

/// Noise-free correspondences, n per plane, uniform over each region,
/// resampled until both projections have positive depth. Per-plane
/// sub-streams keep plane k's points independent of the other planes'
/// sample counts. Ground truth is retained in the result.
CorrespondenceSet sample_correspondences(const SceneModel& s, int n_per_plane,
                                         uint64_t rng_seed);

/// Adds i.i.d. zero-mean Gaussian pixel noise to both views. sigma = 0
/// returns the input unchanged. The noise-free truth is preserved.
CorrespondenceSet add_noise(const CorrespondenceSet& c, double sigma, uint64_t rng_seed);

struct ScarceSplit {
  CorrespondenceSet train;
  CorrespondenceSet test;
  int grid = 0;    // grid resolution per plane side
  int square = 0;  // training square side on the scarce plane
};

/// Two-plane grid scenario: plane 0 trains on a parity subset spanning
/// its whole region, plane 1 trains only on a square x square block of
/// grid points anchored at (gx, gy); every remaining grid point becomes
/// test data. Throws InvalidArgumentError when the square does not fit.
ScarceSplit scarce_plane_scenario(const SceneModel& s, int gx, int gy, int grid = 10,
                                  int square = 4);

}  // namespace homoset
