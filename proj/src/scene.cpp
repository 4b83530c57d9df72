#include "homoset/scene.hpp"

#include <cmath>
#include <string>

namespace homoset {

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat3 rotation_about(const Vec3& axis, double angle) {
  const Vec3 u = axis.normalized();
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  Mat3 r;
  r(0, 0) = t * u.x * u.x + c;
  r(0, 1) = t * u.x * u.y - s * u.z;
  r(0, 2) = t * u.x * u.z + s * u.y;
  r(1, 0) = t * u.x * u.y + s * u.z;
  r(1, 1) = t * u.y * u.y + c;
  r(1, 2) = t * u.y * u.z - s * u.x;
  r(2, 0) = t * u.x * u.z - s * u.y;
  r(2, 1) = t * u.y * u.z + s * u.x;
  r(2, 2) = t * u.z * u.z + c;
  return r;
}

Vec3 random_unit(Rng& rng) {
  // uniform on the sphere via z and azimuth
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Mat3 random_rotation(Rng& rng, double max_angle_rad) {
  return rotation_about(random_unit(rng), rng.uniform(0.0, max_angle_rad));
}

Vec3 any_orthogonal(const Vec3& n) {
  const Vec3 ref = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return n.cross(ref).normalized();
}

}  // namespace

double CameraModel::depth(const Vec3& x) const {
  const Vec3 pc = r_matrix * (x - t_vec);
  return pc.z;
}

Vec2 CameraModel::project(const Vec3& x) const {
  const Vec3 y = k_matrix * (r_matrix * (x - t_vec));
  if (y.z <= 1e-12) throw DegenerateSceneError("projection of a point behind the camera");
  return {y.x / y.z, y.y / y.z};
}

SceneModel make_random_scene(const SceneConfig& cfg, Rng& rng) {
  if (cfg.planes < 1) throw InvalidArgumentError("make_random_scene: need at least one plane");

  const double deg = kPi / 180.0;
  SceneModel s;

  auto make_k = [&](double f) {
    Mat3 k = Mat3::identity();
    k(0, 0) = f;
    k(1, 1) = f;
    k(0, 2) = cfg.image_width / 2.0;
    k(1, 2) = cfg.image_height / 2.0;
    return k;
  };

  for (int attempt = 0; attempt < 64; ++attempt) {
    s.cam1.k_matrix = make_k(rng.uniform(cfg.focal_min, cfg.focal_max));
    s.cam2.k_matrix = make_k(rng.uniform(cfg.focal_min, cfg.focal_max));
    s.cam1.r_matrix = random_rotation(rng, cfg.cam1_max_angle_deg * deg);
    s.cam2.r_matrix = random_rotation(rng, cfg.cam2_max_angle_deg * deg);
    s.cam1.t_vec = rng.uniform(0.0, 0.25) * random_unit(rng);

    // mostly lateral baseline so both cameras keep the planes in view
    Vec3 dir = random_unit(rng);
    dir.z *= 0.3;
    if (dir.norm() < 0.2) dir = {1, 0, 0};
    dir = dir.normalized();
    const double baseline = rng.uniform(cfg.baseline_min, cfg.baseline_max);
    s.cam2.t_vec = s.cam1.t_vec + baseline * dir;

    s.planes.clear();
    s.regions.clear();
    bool scene_ok = true;

    for (int i = 0; i < cfg.planes && scene_ok; ++i) {
      bool plane_ok = false;
      for (int tries = 0; tries < 256 && !plane_ok; ++tries) {
        const double z = rng.uniform(cfg.plane_dist_min, cfg.plane_dist_max);
        const Vec3 centre{z * std::tan(rng.uniform(-12.0 * deg, 12.0 * deg)),
                          z * std::tan(rng.uniform(-9.0 * deg, 9.0 * deg)), z};

        Vec3 n = (Vec3{0, 0, -1} +
                  0.35 * Vec3{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 0.0})
                     .normalized();
        double d = n.dot(centre);
        if (d < 0.0) {  // keep the offset non-negative; the homography is unchanged
          n = -n;
          d = -d;
        }

        const PlaneModel plane{n, d};
        const double w1 = plane.d - plane.n_vec.dot(s.cam1.t_vec);
        const double w2 = plane.d - plane.n_vec.dot(s.cam2.t_vec);
        if (std::abs(w1) < cfg.min_w_fraction * std::abs(plane.d)) continue;
        if (std::abs(w2) < cfg.min_w_fraction * std::abs(plane.d)) continue;
        const double cos_nb = std::abs(plane.n_vec.dot(dir));
        if (cos_nb > std::cos(cfg.min_normal_baseline_angle_deg * deg)) continue;

        PlanarRegion region;
        region.origin = centre;
        region.u_axis = any_orthogonal(n);
        region.w_axis = n.cross(region.u_axis).normalized();
        region.half_u = 0.5 * rng.uniform(cfg.region_side_min, cfg.region_side_max);
        region.half_w = 0.5 * rng.uniform(cfg.region_side_min, cfg.region_side_max);

        // the whole patch must be visible in both views
        bool visible = true;
        for (double su : {-1.0, 1.0}) {
          for (double tv : {-1.0, 1.0}) {
            const Vec3 corner = region.point(su, tv);
            for (const CameraModel* cam : {&s.cam1, &s.cam2}) {
              if (cam->depth(corner) < 0.2) {
                visible = false;
                break;
              }
              const Vec2 px = cam->project(corner);
              const double mx = 0.1 * cfg.image_width, my = 0.1 * cfg.image_height;
              if (px.x < -mx || px.x > cfg.image_width + mx || px.y < -my ||
                  px.y > cfg.image_height + my) {
                visible = false;
                break;
              }
            }
            if (!visible) break;
          }
          if (!visible) break;
        }
        if (!visible) continue;

        s.planes.push_back(plane);
        s.regions.push_back(region);
        plane_ok = true;
      }
      if (!plane_ok) scene_ok = false;
    }

    if (scene_ok) return s;
  }
  throw DegenerateSceneError("make_random_scene: no valid scene within the retry budget");
}

LatentParameters scene_latents(const SceneModel& s) {
  const int count = s.plane_count();
  if (count < 1) throw InvalidArgumentError("scene_latents: scene has no planes");

  const Mat3 r1_inv = s.cam1.r_matrix.transposed();
  const Mat3 k1_inv = inverse3(s.cam1.k_matrix);
  const Mat3 k1_inv_t = k1_inv.transposed();

  LatentParameters eta;
  eta.a_matrix = s.cam2.k_matrix * s.cam2.r_matrix * r1_inv * k1_inv;
  eta.b_vec = s.cam2.k_matrix * (s.cam2.r_matrix * (s.cam1.t_vec - s.cam2.t_vec));
  eta.v_vecs.resize(count);
  eta.w_scalars.resize(count);
  for (int i = 0; i < count; ++i) {
    eta.w_scalars[i] = s.planes[i].d - s.planes[i].n_vec.dot(s.cam1.t_vec);
    if (eta.w_scalars[i] == 0.0)
      throw DegenerateSceneError("scene_latents: plane " + std::to_string(i) +
                                 " passes through the first camera centre");
    eta.v_vecs[i] = k1_inv_t * (s.cam1.r_matrix * s.planes[i].n_vec);
  }
  return eta;
}

HomographyCollection true_homographies(const SceneModel& s) {
  const LatentParameters eta = scene_latents(s);
  HomographyCollection hs;
  hs.h.reserve(eta.plane_count());
  for (int i = 0; i < eta.plane_count(); ++i) {
    Mat3 m = eta.w_scalars[i] * eta.a_matrix + outer(eta.b_vec, eta.v_vecs[i]);
    if (!is_invertible(m))
      throw DegenerateSceneError("true_homographies: plane " + std::to_string(i) +
                                 " induces a singular homography");
    hs.h.push_back(m);
  }
  return hs;
}

CorrespondenceSet sample_correspondences(const SceneModel& s, int n_per_plane,
                                         uint64_t rng_seed) {
  if (n_per_plane < 4)
    throw InvalidArgumentError("sample_correspondences: need at least 4 points per plane");

  CorrespondenceSet out;
  out.planes.resize(s.plane_count());
  for (int i = 0; i < s.plane_count(); ++i) {
    const PlanarRegion& region = s.regions[i];
    if (region.half_u <= 0.0 || region.half_w <= 0.0)
      throw DegenerateSceneError("sample_correspondences: region " + std::to_string(i) +
                                 " has zero area");
    Rng rng = Rng::stream(rng_seed, static_cast<uint64_t>(i));
    auto& plane = out.planes[i];
    plane.m1.reserve(n_per_plane);
    plane.m2.reserve(n_per_plane);
    int guard = 0;
    while (static_cast<int>(plane.m1.size()) < n_per_plane) {
      if (++guard > 100 * n_per_plane)
        throw DegenerateSceneError("sample_correspondences: resampling budget exhausted");
      const Vec3 p = region.point(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      if (s.cam1.depth(p) < 0.2 || s.cam2.depth(p) < 0.2) continue;  // behind a camera
      plane.m1.push_back(s.cam1.project(p));
      plane.m2.push_back(s.cam2.project(p));
    }
  }
  out.truth = out.planes;
  return out;
}

CorrespondenceSet add_noise(const CorrespondenceSet& c, double sigma, uint64_t rng_seed) {
  if (sigma < 0.0) throw InvalidArgumentError("add_noise: sigma must be non-negative");
  CorrespondenceSet out = c;
  if (out.truth.empty()) out.truth = c.planes;
  if (sigma == 0.0) return out;
  for (int i = 0; i < out.plane_count(); ++i) {
    Rng rng = Rng::stream(rng_seed, static_cast<uint64_t>(i));
    auto& plane = out.planes[i];
    for (size_t j = 0; j < plane.m1.size(); ++j) {
      plane.m1[j].x += sigma * rng.normal();
      plane.m1[j].y += sigma * rng.normal();
      plane.m2[j].x += sigma * rng.normal();
      plane.m2[j].y += sigma * rng.normal();
    }
  }
  return out;
}

ScarceSplit scarce_plane_scenario(const SceneModel& s, int gx, int gy, int grid, int square) {
  if (s.plane_count() < 2)
    throw InvalidArgumentError("scarce_plane_scenario: need at least two planes");
  if (grid < square || square < 2)
    throw InvalidArgumentError("scarce_plane_scenario: square does not fit the grid");
  if (gx < 0 || gy < 0 || gx + square > grid || gy + square > grid)
    throw InvalidArgumentError("scarce_plane_scenario: square origin out of bounds");

  ScarceSplit out;
  out.grid = grid;
  out.square = square;
  out.train.planes.resize(s.plane_count());
  out.test.planes.resize(s.plane_count());

  for (int i = 0; i < s.plane_count(); ++i) {
    const PlanarRegion& region = s.regions[i];
    for (int r = 0; r < grid; ++r) {
      for (int c = 0; c < grid; ++c) {
        const double ss = -1.0 + 2.0 * c / (grid - 1);
        const double tt = -1.0 + 2.0 * r / (grid - 1);
        const Vec3 p = region.point(ss, tt);
        const Vec2 px1 = s.cam1.project(p);
        const Vec2 px2 = s.cam2.project(p);
        bool is_train;
        if (i == 0) {
          is_train = (r + c) % 2 == 0;  // parity subset spanning the region
        } else if (i == 1) {
          is_train = c >= gx && c < gx + square && r >= gy && r < gy + square;
        } else {
          is_train = (r + c) % 2 == 0;
        }
        auto& dst = is_train ? out.train.planes[i] : out.test.planes[i];
        dst.m1.push_back(px1);
        dst.m2.push_back(px2);
      }
    }
  }
  out.train.truth = out.train.planes;
  out.test.truth = out.test.planes;
  return out;
}

}  // namespace homoset
