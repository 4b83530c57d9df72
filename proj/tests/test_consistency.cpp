#include "homoset/consistency.hpp"

#include <cmath>

#include "doctest.h"
#include "homoset/latent.hpp"
#include "test_util.hpp"

using namespace homoset;
using namespace testutil;

TEST_CASE("build_j block of a consistent pair is the rank-one term") {
  Rng rng(41);
  int tested = 0;
  while (tested < 30) {
    const Mat3 h1 = random_invertible(rng);
    const Vec3 b = random_vec3(rng), v = random_vec3(rng);
    const double w = rng.uniform(0.5, 3.0);
    const Mat3 h2 = w * h1 + outer(b, v);
    if (!is_invertible(h2)) continue;
    const auto jb = build_j(HomographyCollection{{h1, h2}});
    if (jb.degenerate[0]) continue;
    Mat3 block;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) block(r, c) = jb.j(r, c);
    CHECK(frob(block - outer(b, v)) <= 1e-10 * frob(h2));
    ++tested;
  }
}

TEST_CASE("build_j flags the identical-pair degeneracy") {
  Rng rng(42);
  const Mat3 h = random_invertible(rng);
  const auto jb = build_j(HomographyCollection{{h, h}});
  CHECK(jb.degenerate[0]);
  CHECK(jb.omegas[0] == 0.0);  // block computed with the omega = 0 fallback
}

TEST_CASE("build_j of a consistent synthetic set is numerically rank one") {
  Rng rng(43);
  for (int k = 0; k < 10; ++k) {
    const auto eta = random_consistent_eta(rng, 4);
    const auto hs = pi_map(eta);
    const auto jb = build_j(hs);
    const RankOne ro = rank_one_approx(jb.j);
    CHECK(ro.residual <= 1e-8 * frob(jb.j));
  }
}

TEST_CASE("constraint_indices counts") {
  CHECK(constraint_indices(2).size() == 9);
  CHECK(constraint_indices(3).size() == 45);
  CHECK(constraint_indices(4).size() == 108);
}

TEST_CASE("constraint_indices is lexicographic and in range") {
  const auto idx = constraint_indices(3);
  for (size_t k = 0; k + 1 < idx.size(); ++k) {
    const auto &p = idx[k], &q = idx[k + 1];
    const auto tp = std::make_tuple(p.a, p.b, p.c, p.d);
    const auto tq = std::make_tuple(q.a, q.b, q.c, q.d);
    CHECK(tp < tq);
  }
  for (const auto& t : idx) {
    CHECK(t.a < t.b);
    CHECK(t.b <= 2);
    CHECK(t.c < t.d);
    CHECK(t.d <= 5);
  }
}

TEST_CASE("column_owner block boundaries") {
  CHECK(column_owner(0, 4) == 1);
  CHECK(column_owner(2, 4) == 1);
  CHECK(column_owner(3, 4) == 2);
  CHECK(column_owner(8, 4) == 3);  // last column belongs to the last member
  CHECK_THROWS_AS(column_owner(9, 4), InvalidArgumentError);
}

TEST_CASE("phi vanishes on consistent collections") {
  Rng rng(44);
  const auto hs = pi_map(random_consistent_eta(rng, 3));
  const auto un = unit_normalized(hs);
  for (const auto& t : constraint_indices(3)) {
    const auto pv = phi(un, t.a, t.b, t.c, t.d);
    CHECK_FALSE(pv.degenerate);
    CHECK(std::abs(pv.value) <= 1e-10);
  }
}

TEST_CASE("phi squared is invariant under per-matrix rescaling") {
  Rng rng(45);
  const auto hs = pi_map(random_consistent_eta(rng, 3));
  // perturb one matrix so phi is nonzero and the invariance is non-trivial
  HomographyCollection noisy = hs;
  for (double& e : noisy[1].e) e += 1e-2 * rng.normal();

  HomographyCollection scaled = noisy;
  std::vector<double> lambdas;
  for (auto& m : scaled.h) {
    const double l = rng.uniform(0.2, 5.0);
    lambdas.push_back(l);
    m = m * l;
  }
  for (const auto& t : constraint_indices(3)) {
    const double a = phi(noisy, t.a, t.b, t.c, t.d).value;
    const double b = phi(scaled, t.a, t.b, t.c, t.d).value;
    CHECK(std::abs(a * a - b * b) <= 1e-10 * std::max(1.0, a * a));
  }
}

TEST_CASE("phi detects a perturbed member") {
  Rng rng(46);
  const auto hs = pi_map(random_consistent_eta(rng, 3));
  HomographyCollection noisy = unit_normalized(hs);
  for (double& e : noisy[1].e) e += 1e-3 * rng.normal();
  double maxphi = 0.0;
  for (const auto& t : constraint_indices(3))
    maxphi = std::max(maxphi, std::abs(phi(noisy, t.a, t.b, t.c, t.d).value));
  CHECK(maxphi > 1e-6);
}

TEST_CASE("raw minors obey the two-scale covariance identity") {
  Rng rng(47);
  for (int k = 0; k < 20; ++k) {
    HomographyCollection hs;
    for (int i = 0; i < 4; ++i) hs.h.push_back(random_invertible(rng));
    const auto jb = build_j(hs);
    bool any_degenerate = false;
    for (bool f : jb.degenerate) any_degenerate |= f;
    if (any_degenerate) continue;

    std::vector<double> lambdas;
    HomographyCollection scaled = hs;
    for (auto& m : scaled.h) {
      const double l = rng.uniform(0.2, 5.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      lambdas.push_back(l);
      m = m * l;
    }
    const auto jb2 = build_j(scaled);
    for (const auto& t : constraint_indices(4)) {
      const int ic = column_owner(t.c, 4), id = column_owner(t.d, 4);
      const double lhs = minor2(jb2.j, t.a, t.b, t.c, t.d);
      const double rhs = lambdas[ic] * lambdas[id] * minor2(jb.j, t.a, t.b, t.c, t.d);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("psi of consistent collections is numerically zero") {
  Rng rng(48);
  for (int planes : {2, 3, 4}) {
    for (int k = 0; k < 10; ++k) {
      const auto hs = unit_normalized(pi_map(random_consistent_eta(rng, planes)));
      CHECK(psi(hs) <= 1e-18);
    }
  }
}

TEST_CASE("psi is scale invariant") {
  Rng rng(49);
  HomographyCollection hs = pi_map(random_consistent_eta(rng, 3));
  for (double& e : hs[2].e) e += 1e-2 * rng.normal();  // make psi nonzero
  const double base = psi(hs);
  HomographyCollection scaled = hs;
  for (auto& m : scaled.h) m = m * rng.uniform(0.2, 5.0);
  CHECK(std::abs(psi(scaled) - base) <= 1e-12 * base);
  CHECK(base > 0.0);
}

TEST_CASE("psi matches the rank-one residual criterion") {
  Rng rng(50);
  // consistent: both zero
  const auto good = pi_map(random_consistent_eta(rng, 3));
  const auto jb_good = build_j(good);
  CHECK(psi(good) <= 1e-18 * frob(jb_good.j) * frob(jb_good.j));
  CHECK(rank_one_approx(jb_good.j).residual <= 1e-9 * frob(jb_good.j));

  // perturbed: both positive
  HomographyCollection bad = good;
  for (double& e : bad[1].e) e += 1e-2 * rng.normal();
  const auto jb_bad = build_j(bad);
  CHECK(psi(bad) > 1e-9);
  CHECK(rank_one_approx(jb_bad.j).residual > 1e-9 * frob(jb_bad.j));
}

TEST_CASE("consistency report layout matches constraint_indices") {
  Rng rng(51);
  const auto hs = pi_map(random_consistent_eta(rng, 4));
  const auto rep = consistency(hs);
  const auto idx = constraint_indices(4);
  REQUIRE(rep.phi_values.size() == idx.size());
  REQUIRE(rep.omegas.size() == 3);
  REQUIRE(rep.degenerate_flags.size() == 3);
  double sum = 0.0;
  for (size_t k = 0; k < idx.size(); ++k) {
    CHECK(rep.phi_values[k].a == idx[k].a);
    CHECK(rep.phi_values[k].b == idx[k].b);
    CHECK(rep.phi_values[k].c == idx[k].c);
    CHECK(rep.phi_values[k].d == idx[k].d);
    sum += rep.phi_values[k].value * rep.phi_values[k].value;
  }
  CHECK(rep.psi == doctest::Approx(sum));
  CHECK(rep.psi >= 0.0);
}
