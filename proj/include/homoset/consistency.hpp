#pragma once

// Compatibility analysis for a set of homographies sharing one camera
// pair. The blocks J_i = H_i - omega(H_i, H_1) * H_1 are concatenated into
// a 3 x 3(I-1) matrix J; the set is consistent exactly when J has rank
// one, i.e. when every 2x2 minor of J vanishes. phi are the minors scaled
// by the Frobenius norms of the owning matrices, and psi is the sum of
// their squares.

#include <tuple>
#include <vector>

#include "homoset/linalg.hpp"

namespace homoset {

/// Ordered set of homographies; index 0 is the reference H_1.
struct HomographyCollection {
  std::vector<Mat3> h;

  HomographyCollection() = default;
  explicit HomographyCollection(std::vector<Mat3> ms) : h(std::move(ms)) {}

  int size() const { return static_cast<int>(h.size()); }
  const Mat3& operator[](int i) const { return h[i]; }
  Mat3& operator[](int i) { return h[i]; }
};

struct JBuild {
  MatX j;                        // 3 x 3(I-1)
  std::vector<double> omegas;    // one per non-reference matrix
  std::vector<bool> degenerate;  // flagged blocks were built with omega = 0
};

/// Concatenation of the difference blocks. Degenerate pencils are not
/// fatal: the block is computed with omega = 0 and flagged.
JBuild build_j(const HomographyCollection& hs, double eps_deg = 1e-9);

struct ConstraintIndex {
  int a, b;  // rows, 0-based, a < b
  int c, d;  // columns, 0-based, c < d
};

/// All 2x2 minor index tuples of a 3 x 3(I-1) matrix in lexicographic
/// (a, b, c, d) order; the layout downstream residual vectors rely on.
std::vector<ConstraintIndex> constraint_indices(int i_count);

/// Index (0-based) of the collection member owning column c (0-based) of
/// J. Column 0 belongs to member 1, the first non-reference matrix.
int column_owner(int c, int i_count);

struct PhiValue {
  double value = 0.0;
  bool degenerate = false;  // an involved block used the omega = 0 fallback
};

/// Scale-normalised minor: frob(H_ic)^-1 frob(H_id)^-1 det J(a,b;c,d).
PhiValue phi(const HomographyCollection& hs, int a, int b, int c, int d,
             double eps_deg = 1e-9);

struct ConsistencyReport {
  MatX j_matrix;
  struct Entry {
    int a, b, c, d;
    double value;
  };
  std::vector<Entry> phi_values;
  double psi = 0.0;
  std::vector<double> omegas;
  std::vector<bool> degenerate_flags;
};

/// Full incompatibility report: every phi value plus psi, their sum of
/// squares. psi == 0 exactly when the collection is consistent.
ConsistencyReport consistency(const HomographyCollection& hs, double eps_deg = 1e-9);

/// Just the scalar measure.
double psi(const HomographyCollection& hs, double eps_deg = 1e-9);

}  // namespace homoset
