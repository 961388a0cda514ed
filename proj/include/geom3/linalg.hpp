#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "geom3/errors.hpp"

namespace geom3 {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Relative tolerance for exact algebraic identities in double precision,
/// scaled by the input's infinity norm where the identity is nonlinear.
inline constexpr double kAlgebraicTol = 1e-9;
/// Relative cutoff for numerical rank decisions (SVD).
inline constexpr double kRankTol = 1e-8;

inline double inf_norm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
inline double inf_norm(const Vec& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

/// Numerical rank via singular values, relative cutoff.
inline int matrix_rank(const Mat& m, double rel_tol = kRankTol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

/// Orthonormal basis of the kernel, as matrix columns.
inline Mat nullspace(const Mat& m, double rel_tol = kRankTol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const int n = static_cast<int>(m.cols());
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis of the column space, as matrix columns.
inline Mat column_space(const Mat& m, double rel_tol = kRankTol) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

/// Halton low-discrepancy sequence (1-based index).
inline double halton(int index, int base = 2) {
  double f = 1.0, x = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    x += f * (i % base);
  }
  return x;
}

/// Deterministic random source. Raw engine output is converted to doubles
/// directly so that streams are reproducible across standard libraries
/// (std:: distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {
    // warm up splitmix so nearby seeds decorrelate
    for (int i = 0; i < 4; ++i) next();
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vec normal_vec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-ish random rotation: QR of a Gaussian matrix with the R-diagonal
/// sign fix, determinant corrected to +1.
inline Mat random_rotation(Rng& rng, int n) {
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// Random invertible matrix with singular values in [s_min, s_max]
/// (condition number at most s_max/s_min).
inline Mat random_invertible(Rng& rng, int n, double s_min = 0.1,
                             double s_max = 10.0) {
  const Mat u = random_rotation(rng, n);
  const Mat v = random_rotation(rng, n);
  Vec s(n);
  for (int i = 0; i < n; ++i) s(i) = rng.uniform(s_min, s_max);
  return u * s.asDiagonal() * v.transpose();
}

}  // namespace geom3
