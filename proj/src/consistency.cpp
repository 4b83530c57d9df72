#include "homoset/consistency.hpp"

#include "homoset/detail/pencil_kernels.hpp"
#include "homoset/pencil.hpp"

namespace homoset {

JBuild build_j(const HomographyCollection& hs, double eps_deg) {
  const int count = hs.size();
  if (count < 2) throw InvalidArgumentError("build_j: need at least two homographies");
  for (int i = 0; i < count; ++i)
    if (!is_invertible(hs[i])) throw NonInvertibleError("build_j: singular member matrix");

  JBuild out;
  out.j = MatX(3, 3 * (count - 1));
  out.omegas.resize(count - 1);
  out.degenerate.resize(count - 1);
  for (int i = 1; i < count; ++i) {
    const auto ev = detail::omega_guarded(hs[i].e.data(), hs[0].e.data(), eps_deg);
    const double w = ev.degenerate ? 0.0 : ev.omega;
    out.omegas[i - 1] = w;
    out.degenerate[i - 1] = ev.degenerate;
    const Mat3 block = hs[i] - w * hs[0];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out.j(r, 3 * (i - 1) + c) = block(r, c);
  }
  return out;
}

std::vector<ConstraintIndex> constraint_indices(int i_count) {
  if (i_count < 2) throw InvalidArgumentError("constraint_indices: need at least two matrices");
  const int m = 3 * (i_count - 1);
  std::vector<ConstraintIndex> out;
  out.reserve(3 * m * (m - 1) / 2);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = c + 1; d < m; ++d) out.push_back({a, b, c, d});
  return out;
}

int column_owner(int c, int i_count) {
  if (c < 0 || c >= 3 * (i_count - 1))
    throw InvalidArgumentError("column_owner: column index out of range");
  return 1 + c / 3;
}

PhiValue phi(const HomographyCollection& hs, int a, int b, int c, int d, double eps_deg) {
  const JBuild jb = build_j(hs, eps_deg);
  const int ic = column_owner(c, hs.size());
  const int id = column_owner(d, hs.size());
  PhiValue out;
  out.value = minor2(jb.j, a, b, c, d) / (frob(hs[ic]) * frob(hs[id]));
  out.degenerate = jb.degenerate[ic - 1] || jb.degenerate[id - 1];
  return out;
}

ConsistencyReport consistency(const HomographyCollection& hs, double eps_deg) {
  const int count = hs.size();
  JBuild jb = build_j(hs, eps_deg);

  std::vector<double> inv_norms(count);
  for (int i = 0; i < count; ++i) inv_norms[i] = 1.0 / frob(hs[i]);

  ConsistencyReport rep;
  rep.omegas = std::move(jb.omegas);
  rep.degenerate_flags.assign(jb.degenerate.begin(), jb.degenerate.end());

  const auto idx = constraint_indices(count);
  rep.phi_values.reserve(idx.size());
  double sum = 0.0;
  for (const auto& t : idx) {
    const int ic = column_owner(t.c, count);
    const int id = column_owner(t.d, count);
    const double v = minor2(jb.j, t.a, t.b, t.c, t.d) * inv_norms[ic] * inv_norms[id];
    rep.phi_values.push_back({t.a, t.b, t.c, t.d, v});
    sum += v * v;
  }
  rep.psi = sum;
  rep.j_matrix = std::move(jb.j);
  return rep;
}

double psi(const HomographyCollection& hs, double eps_deg) {
  return consistency(hs, eps_deg).psi;
}

}  // namespace homoset
