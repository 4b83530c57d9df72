#include "homoset/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace homoset {

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgumentError("cannot normalise the zero vector");
  return *this / n;
}

Mat3 Mat3::identity() {
  Mat3 m;
  m.e = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  return m;
}

Mat3 Mat3::diag(double a, double b, double c) {
  Mat3 m;
  m.e[0] = a;
  m.e[4] = b;
  m.e[8] = c;
  return m;
}

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
  Mat3 m;
  m.e = {r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z};
  return m;
}

Mat3 Mat3::from_cols(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 m;
  m.e = {c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z};
  return m;
}

void Mat3::set_col(int c, const Vec3& v) {
  e[c] = v.x;
  e[3 + c] = v.y;
  e[6 + c] = v.z;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.e[i] = e[i] - o.e[i];
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat3 Mat3::operator*(double s) const {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.e[i] = e[i] * s;
  return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  return {e[0] * v.x + e[1] * v.y + e[2] * v.z,
          e[3] * v.x + e[4] * v.y + e[5] * v.z,
          e[6] * v.x + e[7] * v.y + e[8] * v.z};
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

Mat3 outer(const Vec3& u, const Vec3& v) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = u[i] * v[j];
  return r;
}

double det3(const Mat3& m) {
  return m.e[0] * (m.e[4] * m.e[8] - m.e[5] * m.e[7]) -
         m.e[1] * (m.e[3] * m.e[8] - m.e[5] * m.e[6]) +
         m.e[2] * (m.e[3] * m.e[7] - m.e[4] * m.e[6]);
}

double frob(const Mat3& m) {
  double s = 0.0;
  for (double v : m.e) s += v * v;
  return std::sqrt(s);
}

bool is_invertible(const Mat3& m) {
  const double f = frob(m);
  return std::abs(det3(m)) > 1e-12 * f * f * f;
}

Mat3 inverse3(const Mat3& m) {
  if (!is_invertible(m)) throw NonInvertibleError("3x3 matrix is numerically singular");
  const double d = det3(m);
  Mat3 r;
  r(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / d;
  r(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / d;
  r(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / d;
  r(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / d;
  r(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / d;
  r(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / d;
  r(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / d;
  r(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / d;
  r(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / d;
  return r;
}

std::array<double, 9> vec_colmajor(const Mat3& m) {
  std::array<double, 9> v;
  int k = 0;
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) v[k++] = m(r, c);
  return v;
}

Mat3 mat3_from_vec_colmajor(const std::array<double, 9>& v) {
  Mat3 m;
  int k = 0;
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r) m(r, c) = v[k++];
  return m;
}

Mat3 canonical_unit(const Mat3& m) {
  const double f = frob(m);
  if (f == 0.0) throw InvalidArgumentError("cannot normalise the zero matrix");
  Mat3 r = m * (1.0 / f);
  int imax = 0;
  for (int i = 1; i < 9; ++i)
    if (std::abs(r.e[i]) > std::abs(r.e[imax])) imax = i;
  if (r.e[imax] < 0.0) r = r * -1.0;
  return r;
}

double frob(const MatX& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

double minor2(const MatX& m, int r0, int r1, int c0, int c1) {
  if (!(0 <= r0 && r0 < r1 && r1 < m.rows && 0 <= c0 && c0 < c1 && c1 < m.cols))
    throw InvalidArgumentError("minor2: index out of range");
  return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
}

void jacobi_eigh(const MatX& sym, std::vector<double>& evals, MatX& evecs) {
  const int n = sym.rows;
  if (n != sym.cols) throw InvalidArgumentError("jacobi_eigh: matrix not square");
  MatX a = sym;
  evecs = MatX(n, n);
  for (int i = 0; i < n; ++i) evecs(i, i) = 1.0;

  const double fnorm = frob(a);
  const double stop = 1e-15 * (fnorm > 0 ? fnorm : 1.0);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = evecs(k, p), vkq = evecs(k, q);
          evecs(k, p) = c * vkp - s * vkq;
          evecs(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  evals.resize(n);
  for (int i = 0; i < n; ++i) evals[i] = a(i, i);

  // sort ascending, permuting eigenvector columns alongside
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return evals[i] < evals[j]; });
  std::vector<double> ev(n);
  MatX vv(n, n);
  for (int j = 0; j < n; ++j) {
    ev[j] = evals[idx[j]];
    for (int i = 0; i < n; ++i) vv(i, j) = evecs(i, idx[j]);
  }
  evals = std::move(ev);
  evecs = std::move(vv);
}

RankOne rank_one_approx(const MatX& m) {
  if (m.rows != 3) throw InvalidArgumentError("rank_one_approx: expected a 3 x M matrix");
  if (frob(m) == 0.0) throw InvalidArgumentError("rank_one_approx: zero matrix");
  const int M = m.cols;

  MatX gram(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < M; ++k) s += m(i, k) * m(j, k);
      gram(i, j) = s;
    }
  std::vector<double> evals;
  MatX evecs;
  jacobi_eigh(gram, evals, evecs);

  const Vec3 u{evecs(0, 2), evecs(1, 2), evecs(2, 2)};  // leading eigenvector
  std::vector<double> w(M, 0.0);
  double wnorm2 = 0.0;
  for (int k = 0; k < M; ++k) {
    w[k] = u.x * m(0, k) + u.y * m(1, k) + u.z * m(2, k);
    wnorm2 += w[k] * w[k];
  }
  const double sigma = std::sqrt(wnorm2);
  if (sigma == 0.0) throw InvalidArgumentError("rank_one_approx: degenerate leading direction");

  // balanced split: ||b|| == ||w|| == sqrt(sigma)
  const double root = std::sqrt(sigma);
  RankOne out;
  out.b = u * root;
  out.w.resize(M);
  for (int k = 0; k < M; ++k) out.w[k] = w[k] / root;

  int imax = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(out.b[i]) > std::abs(out.b[imax])) imax = i;
  if (out.b[imax] < 0.0) {
    out.b = -out.b;
    for (double& v : out.w) v = -v;
  }

  double res2 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < M; ++k) {
      const double d = m(i, k) - out.b[i] * out.w[k];
      res2 += d * d;
    }
  out.residual = std::sqrt(res2);
  return out;
}

std::array<double, 9> smallest_singular_vector(const MatX& m) {
  if (m.cols != 9) throw InvalidArgumentError("smallest_singular_vector: expected 9 columns");
  if (m.rows < 8) throw InvalidArgumentError("smallest_singular_vector: need at least 8 rows");

  MatX gram(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = i; j < 9; ++j) {
      double s = 0.0;
      for (int k = 0; k < m.rows; ++k) s += m(k, i) * m(k, j);
      gram(i, j) = s;
      gram(j, i) = s;
    }
  std::vector<double> evals;
  MatX evecs;
  jacobi_eigh(gram, evals, evecs);

  if (evals[1] <= 1e-16 * std::max(evals[8], 0.0))
    throw RankDeficientError("design matrix has nullity > 1");

  std::array<double, 9> x;
  double n2 = 0.0;
  for (int i = 0; i < 9; ++i) {
    x[i] = evecs(i, 0);
    n2 += x[i] * x[i];
  }
  const double n = std::sqrt(n2);
  int imax = 0;
  for (int i = 1; i < 9; ++i)
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  const double sgn = x[imax] < 0.0 ? -1.0 : 1.0;
  for (double& v : x) v = v * sgn / n;
  return x;
}

std::vector<double> singular_values(const MatX& m) {
  // work on a tall copy so the column count is the smaller dimension
  MatX a = m;
  if (a.rows < a.cols) {
    MatX t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    a = std::move(t);
  }
  const int n = a.cols;

  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int k = 0; k < a.rows; ++k) {
          alpha += a(k, p) * a(k, p);
          beta += a(k, q) * a(k, q);
          gamma += a(k, p) * a(k, q);
        }
        if (std::abs(gamma) <= 1e-17 * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int k = 0; k < a.rows; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 0; k < a.rows; ++k) s += a(k, j) * a(k, j);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

bool cholesky_solve(MatX a, std::vector<double>& b) {
  const int n = a.rows;
  if (n != a.cols || static_cast<int>(b.size()) != n)
    throw InvalidArgumentError("cholesky_solve: dimension mismatch");

  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (d <= 0.0 || !std::isfinite(d)) return false;
    const double l = std::sqrt(d);
    a(j, j) = l;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / l;
    }
  }
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= a(i, k) * b[k];
    b[i] = s / a(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= a(k, i) * b[k];
    b[i] = s / a(i, i);
  }
  return true;
}

}  // namespace homoset
