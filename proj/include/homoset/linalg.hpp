#pragma once

// Small dense linear algebra shared by every module: fixed-size 3-vectors
// and 3x3 matrices, dynamically sized row-major matrices for the wide
// concatenations, and the handful of decompositions the estimators need.
// Extreme singular vectors are obtained from Jacobi eigen-decompositions of
// the corresponding Gram matrices; the dimensions involved are tiny (3x3
// and 9x9), so nothing beyond a cyclic Jacobi sweep is required.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "homoset/errors.hpp"

namespace homoset {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double xx, double yy) : x(xx), y(yy) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::sqrt(x * x + y * y); }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3() = default;
  Vec3(double xx, double yy, double zz) : x(xx), y(yy), z(zz) {}

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// 3x3 real matrix, row-major storage.
struct Mat3 {
  std::array<double, 9> e{};

  static Mat3 identity();
  static Mat3 zero() { return Mat3{}; }
  static Mat3 diag(double a, double b, double c);
  static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);
  static Mat3 from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  double operator()(int r, int c) const { return e[3 * r + c]; }
  double& operator()(int r, int c) { return e[3 * r + c]; }

  Vec3 row(int r) const { return {e[3 * r], e[3 * r + 1], e[3 * r + 2]}; }
  Vec3 col(int c) const { return {e[c], e[3 + c], e[6 + c]}; }
  void set_col(int c, const Vec3& v);

  Mat3 operator+(const Mat3& o) const;
  Mat3 operator-(const Mat3& o) const;
  Mat3 operator*(const Mat3& o) const;
  Mat3 operator*(double s) const;
  Vec3 operator*(const Vec3& v) const;

  Mat3 transposed() const;
};

inline Mat3 operator*(double s, const Mat3& m) { return m * s; }

/// Rank-one matrix u * v^T.
Mat3 outer(const Vec3& u, const Vec3& v);

/// 3x3 determinant by cofactor expansion.
double det3(const Mat3& m);

double frob(const Mat3& m);

/// Scale-relative invertibility test: |det m| > 1e-12 * frob(m)^3.
bool is_invertible(const Mat3& m);

/// Inverse via the adjugate. Throws NonInvertibleError when the
/// scale-relative determinant test fails.
Mat3 inverse3(const Mat3& m);

/// Column-wise vectorisation (column-major flattening) and its inverse.
std::array<double, 9> vec_colmajor(const Mat3& m);
Mat3 mat3_from_vec_colmajor(const std::array<double, 9>& v);

/// Unit-Frobenius copy with the sign fixed so the entry of largest
/// magnitude is positive. Throws on the zero matrix.
Mat3 canonical_unit(const Mat3& m);

/// Dynamically sized dense matrix, row-major. Used for the 3 x 3(I-1)
/// concatenations, design matrices and normal equations.
struct MatX {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  MatX() = default;
  MatX(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
};

double frob(const MatX& m);

/// Determinant of the 2x2 submatrix with rows {r0, r1} and columns
/// {c0, c1}, all 0-based, r0 < r1 and c0 < c1 required.
double minor2(const MatX& m, int r0, int r1, int c0, int c1);

struct RankOne {
  Vec3 b;                 // left factor
  std::vector<double> w;  // right factor, length = cols
  double residual = 0.0;  // ||m - b w^T||_F
};

/// Best rank-one factorisation b * w^T of a 3 x M matrix in the Frobenius
/// sense, computed from the leading eigenpair of the 3x3 Gram matrix
/// m m^T. The factors are balanced (||b|| == ||w||) and the sign is fixed
/// so the largest-magnitude entry of b is positive. Throws
/// InvalidArgumentError on a zero matrix.
RankOne rank_one_approx(const MatX& m);

/// Unit vector minimising ||m x|| for an N x 9 design matrix, N >= 8,
/// from the eigenvector of the smallest eigenvalue of the 9x9 Gram matrix.
/// Throws RankDeficientError when the nullity exceeds one.
std::array<double, 9> smallest_singular_vector(const MatX& m);

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Eigenvalues
/// ascending; evecs stores eigenvectors as columns.
void jacobi_eigh(const MatX& sym, std::vector<double>& evals, MatX& evecs);

/// Singular values by one-sided Jacobi column orthogonalisation,
/// descending. Small singular values come out with high relative accuracy,
/// which the rank/nullity diagnostics rely on.
std::vector<double> singular_values(const MatX& m);

/// Solves a x = b in-place for symmetric positive definite a (Cholesky).
/// Returns false when a pivot is non-positive.
bool cholesky_solve(MatX a, std::vector<double>& b);

}  // namespace homoset
