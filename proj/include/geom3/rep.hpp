#pragma once

#include <array>
#include <functional>

#include "geom3/linalg.hpp"

namespace geom3 {

/// A representation of SO(2) on R^3 given as an angle sampler.  The sampler
/// must be stateless; it is evaluated at a fixed Halton set of angles.
struct CircleRepresentation {
  std::function<Mat3(double)> sampler;
  bool faithful = true;
};

/// The unique invariant splitting V = L (+) W of a faithful SO(2)
/// representation: a fixed line and its invariant orthogonal plane.
struct IsotypicSplit {
  Vec3 line;                       // unit vector spanning L
  Eigen::Matrix<double, 3, 2> plane;  // orthonormal basis of W
};

namespace rep_detail {

inline constexpr int kSplitAngles = 16;
inline constexpr int kCommutantAngles = 8;
inline constexpr double kInvarianceTol = 1e-8;

inline std::vector<double> halton_angles(int count) {
  std::vector<double> a(count);
  for (int i = 0; i < count; ++i) a[i] = 2.0 * M_PI * halton(i + 1);
  return a;
}

}  // namespace rep_detail

/// Splits a faithful circle representation into the fixed line L and the
/// rotation plane W.  L is found as the eigenvalue-1 eigenspace of the
/// sampled matrix farthest from the identity (the eigenspace degenerates
/// as the angle approaches 0).  The sign of `line` puts its largest
/// component positive.
inline IsotypicSplit decompose(const CircleRepresentation& rep) {
  using namespace rep_detail;
  const auto angles = halton_angles(kSplitAngles);
  std::vector<Mat3> samples;
  samples.reserve(angles.size());
  double far = 0.0;
  for (double th : angles) {
    samples.push_back(rep.sampler(th));
    far = std::max(far, inf_norm(Mat(samples.back() - Mat3::Identity())));
  }
  if (far <= kInvarianceTol)
    throw InvalidArgumentError(
        "decompose: representation is trivial on all sampled angles");

  // try samples by decreasing distance from the identity
  std::vector<int> order(samples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return inf_norm(Mat(samples[a] - Mat3::Identity())) >
           inf_norm(Mat(samples[b] - Mat3::Identity()));
  });

  for (int idx : order) {
    const Mat k = nullspace(Mat(samples[idx] - Mat3::Identity()), 1e-6);
    if (k.cols() != 1) continue;

    IsotypicSplit split;
    split.line = k.col(0);
    // deterministic sign: largest-magnitude component positive
    int arg = 0;
    split.line.cwiseAbs().maxCoeff(&arg);
    if (split.line(arg) < 0) split.line = -split.line;

    // orthonormal plane basis from the full SVD of R - I
    Eigen::JacobiSVD<Mat> svd(Mat(samples[idx] - Mat3::Identity()),
                              Eigen::ComputeFullV);
    split.plane = svd.matrixV().leftCols(2);

    // verify invariance across every sampled angle
    bool ok = true;
    for (const Mat3& r : samples) {
      if ((r * split.line - split.line).norm() > kInvarianceTol) ok = false;
      for (int c = 0; c < 2 && ok; ++c) {
        const Vec3 w = r * split.plane.col(c);
        if (std::abs(w.dot(split.line)) > kInvarianceTol) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return split;
  }
  throw InvalidArgumentError(
      "decompose: no sample has a one-dimensional fixed space; "
      "not a circle representation");
}

/// Basis of the commutant {f : f R(theta) = R(theta) f}, computed from the
/// linear commutation system at 8 sampled angles and returned in the
/// canonical form (projection on L, identity on W, rotation generator on W).
/// In the split basis every commutant element is block diagonal.
inline std::array<Mat3, 3> commutant_basis(const CircleRepresentation& rep) {
  using namespace rep_detail;
  const IsotypicSplit split = decompose(rep);  // also rejects trivial reps

  const auto angles = halton_angles(kCommutantAngles);
  Mat system(9 * static_cast<int>(angles.size()), 9);
  int row = 0;
  for (double th : angles) {
    const Mat3 r = rep.sampler(th);
    // unknown f flattened row-major: (f r - r f)_{ab} = 0
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Vec eq = Vec::Zero(9);
        for (int k = 0; k < 3; ++k) {
          eq(3 * a + k) += r(k, b);   // f(a,k) r(k,b)
          eq(3 * k + b) -= r(a, k);   // r(a,k) f(k,b)
        }
        system.row(row++) = eq;
      }
  }
  const Mat kernel = nullspace(system, 1e-8);
  if (kernel.cols() != 3)
    throw InvalidArgumentError(
        "commutant_basis: commutant dimension is " +
        std::to_string(kernel.cols()) + ", expected 3");

  const Vec3 l = split.line;
  const Vec3 w1 = split.plane.col(0), w2 = split.plane.col(1);
  const Mat3 proj_l = l * l.transpose();
  const Mat3 id_w = w1 * w1.transpose() + w2 * w2.transpose();
  const Mat3 rot_w = w2 * w1.transpose() - w1 * w2.transpose();

  // each canonical element must lie in the solved kernel
  for (const Mat3& f : {proj_l, id_w, rot_w}) {
    Vec v(9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) v(3 * a + b) = f(a, b);
    const Vec residual = v - kernel * (kernel.transpose() * v);
    if (residual.norm() > 1e-7 * std::max(1.0, v.norm()))
      throw InvalidArgumentError(
          "commutant_basis: canonical element escapes the computed "
          "commutant; sampler is not a circle representation");
  }
  return {proj_l, id_w, rot_w};
}

}  // namespace geom3
