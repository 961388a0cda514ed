#pragma once

#include <array>
#include <vector>

#include "geom3/catalog.hpp"

namespace geom3 {

/// Geodesic left the chart domain; carries the points integrated so far.
struct TruncatedPathError : Error {
  TruncatedPathError(std::string msg, std::vector<Vec3> path)
      : Error(std::move(msg)), partial_path(std::move(path)) {}
  std::vector<Vec3> partial_path;
};

/// Default finite-difference steps: first derivatives of the metric, and
/// the outer step for curvature (derivatives of Christoffel symbols).
inline constexpr double kFdStep = 1e-5;
inline constexpr double kFdStepCurvature = 1e-4;

/// Christoffel symbols at a point; gamma[k](i, j) = Gamma^k_ij.
struct Christoffel {
  std::array<Mat3, 3> gamma;

  /// Contraction Gamma^k_ij v^i w^j for fixed k stacked into a vector.
  Vec3 contract(const Vec3& v, const Vec3& w) const {
    return Vec3(v.dot(gamma[0] * w), v.dot(gamma[1] * w),
                v.dot(gamma[2] * w));
  }
};

namespace diffgeo_detail {

inline Mat3 metric_at(const ChartMetric& metric, const Vec3& p) {
  const Mat3 g = metric(p);
  Eigen::LLT<Mat3> llt(g);
  if (llt.info() != Eigen::Success)
    throw InvalidArgumentError(
        "metric is not positive definite at the evaluation point");
  return g;
}

inline std::array<Mat3, 3> metric_derivatives(const ChartMetric& metric,
                                              const Vec3& p, double h) {
  std::array<Mat3, 3> d;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    d[i] = (metric(p + h * e) - metric(p - h * e)) / (2.0 * h);
  }
  return d;
}

}  // namespace diffgeo_detail

/// Levi-Civita Christoffel symbols by central differences:
/// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
inline Christoffel christoffel(const ChartMetric& metric, const Vec3& p,
                               double h = kFdStep) {
  if (!(h > 0.0))
    throw InvalidArgumentError("christoffel: step size must be positive");
  const Mat3 g = diffgeo_detail::metric_at(metric, p);
  const Mat3 ginv = g.inverse();
  const auto dg = diffgeo_detail::metric_derivatives(metric, p, h);

  Christoffel out;
  for (int k = 0; k < 3; ++k) out.gamma[k].setZero();
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Vec3 lower;  // Gamma_{l,ij}
      for (int l = 0; l < 3; ++l)
        lower(l) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
      const Vec3 upper = ginv * lower;
      for (int k = 0; k < 3; ++k) {
        out.gamma[k](i, j) = upper(k);
        out.gamma[k](j, i) = upper(k);
      }
    }
  return out;
}

/// Sectional curvature of the plane span{u, v}:
/// K = <R(u,v)v, u> / (|u|^2 |v|^2 - <u,v>^2), all in the metric at p.
/// The curvature tensor is assembled from finite differences of the
/// Christoffel symbols (outer step h_curv, inner step h).
inline double sectional_curvature(const ChartMetric& metric, const Vec3& p,
                                  const Vec3& u, const Vec3& v,
                                  double h_curv = kFdStepCurvature,
                                  double h = kFdStep) {
  const Mat3 g = diffgeo_detail::metric_at(metric, p);
  const double gu = u.dot(g * u), gv = v.dot(g * v), guv = u.dot(g * v);
  const double denom = gu * gv - guv * guv;
  if (denom <= 1e-12 * gu * gv)
    throw InvalidArgumentError(
        "sectional_curvature: u and v must be linearly independent");

  const Christoffel at_p = christoffel(metric, p, h);
  std::array<Christoffel, 3> plus, minus;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    plus[i] = christoffel(metric, p + h_curv * e, h);
    minus[i] = christoffel(metric, p - h_curv * e, h);
  }
  // dGamma[i][l](j,k) = d_i Gamma^l_jk
  std::array<std::array<Mat3, 3>, 3> dgamma;
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l)
      dgamma[i][l] = (plus[i].gamma[l] - minus[i].gamma[l]) / (2.0 * h_curv);

  // (R(u,v)w)^l = [d_i Gamma^l_jk - d_j Gamma^l_ik
  //               + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik] u^i v^j w^k
  const Vec3 w = v;
  Vec3 ruvw = Vec3::Zero();
  for (int l = 0; l < 3; ++l) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (u(i) == 0.0 && v(j) == 0.0) continue;
        for (int k = 0; k < 3; ++k) {
          double r = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int m = 0; m < 3; ++m)
            r += at_p.gamma[l](i, m) * at_p.gamma[m](j, k) -
                 at_p.gamma[l](j, m) * at_p.gamma[m](i, k);
          acc += r * u(i) * v(j) * w(k);
        }
      }
    ruvw(l) = acc;
  }
  return u.dot(g * ruvw) / denom;
}

/// div X = (1 / sqrt(det g)) d_i (sqrt(det g) X^i), central differences.
inline double divergence(const ChartMetric& metric, const VectorField& field,
                         const Vec3& p, double h = kFdStep) {
  const Mat3 g = diffgeo_detail::metric_at(metric, p);
  const auto density_flux = [&](const Vec3& q, int i) {
    const double det = metric(q).determinant();
    if (det <= 0.0)
      throw InvalidArgumentError("divergence: metric is singular");
    return std::sqrt(det) * field(q)(i);
  };
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    acc += (density_flux(p + h * e, i) - density_flux(p - h * e, i)) /
           (2.0 * h);
  }
  return acc / std::sqrt(g.determinant());
}

/// ||nabla_i X_j + nabla_j X_i||_inf; zero exactly when X is Killing at p.
inline double killing_residual(const ChartMetric& metric,
                               const VectorField& field, const Vec3& p,
                               double h = kFdStep) {
  const Christoffel gamma = christoffel(metric, p, h);
  const auto lowered = [&](const Vec3& q) -> Vec3 {
    return metric(q) * field(q);
  };
  Mat3 dxi;  // dxi(i, j) = d_i xi_j
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    dxi.row(i) = ((lowered(p + h * e) - lowered(p - h * e)) / (2.0 * h))
                     .transpose();
  }
  const Vec3 xi = lowered(p);
  Mat3 killing;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double gamma_term = 0.0;
      for (int k = 0; k < 3; ++k) gamma_term += gamma.gamma[k](i, j) * xi(k);
      killing(i, j) = dxi(i, j) + dxi(j, i) - 2.0 * gamma_term;
    }
  return inf_norm(killing);
}

/// Length of v in the metric at p.
inline double metric_norm(const ChartMetric& metric, const Vec3& p,
                          const Vec3& v) {
  return std::sqrt(v.dot(metric(p) * v));
}

/// Classical fixed-step 4th order integration of the geodesic equation
/// x''^k + Gamma^k_ij x'^i x'^j = 0.  Returns the steps+1 path points;
/// throws TruncatedPathError carrying the partial path if the chart domain
/// is left.
inline std::vector<Vec3> geodesic_integrate(const ChartMetric& metric,
                                            const Vec3& p, const Vec3& v,
                                            double time, int steps,
                                            double h = kFdStep) {
  if (steps < 1)
    throw InvalidArgumentError("geodesic_integrate: steps must be >= 1");
  const double dt = time / steps;
  std::vector<Vec3> path;
  path.reserve(steps + 1);
  path.push_back(p);

  Vec3 x = p, vel = v;
  const auto accel = [&](const Vec3& q, const Vec3& w) -> Vec3 {
    return -christoffel(metric, q, h).contract(w, w);
  };
  for (int s = 0; s < steps; ++s) {
    try {
      const Vec3 k1x = vel, k1v = accel(x, vel);
      const Vec3 k2x = vel + 0.5 * dt * k1v,
                 k2v = accel(x + 0.5 * dt * k1x, vel + 0.5 * dt * k1v);
      const Vec3 k3x = vel + 0.5 * dt * k2v,
                 k3v = accel(x + 0.5 * dt * k2x, vel + 0.5 * dt * k2v);
      const Vec3 k4x = vel + dt * k3v,
                 k4v = accel(x + dt * k3x, vel + dt * k3v);
      x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      vel += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      if (!metric.in_domain(x))
        throw ChartDomainError("geodesic left the chart domain");
    } catch (const ChartDomainError& e) {
      throw TruncatedPathError(std::string("geodesic truncated: ") + e.what(),
                               path);
    }
    path.push_back(x);
  }
  return path;
}

/// Connection form at p: the metric dual of X normalized so omega(X) = 1.
inline Vec3 connection_form(const CatalogEntry& entry, const Vec3& p) {
  if (entry.isotropy_dim != 1)
    throw UnsupportedCaseError(
        "connection form exists only for axially symmetric entries");
  const Vec3 x = invariant_vector_field(entry, p);
  const Mat3 g = invariant_metric(entry, p);
  const Vec3 gx = g * x;
  return gx / x.dot(gx);
}

/// Bundle curvature d(omega) at p by central differences of the connection
/// form; identically zero exactly for the flat entries.
inline Mat3 connection_curvature(const CatalogEntry& entry, const Vec3& p,
                                 double h = kFdStep) {
  if (entry.isotropy_dim != 1)
    throw UnsupportedCaseError(
        "connection curvature exists only for axially symmetric entries");
  if (!entry.has_chart())
    throw UnsupportedCaseError(
        std::string(to_string(entry.label)) +
        ": no chart; use connection_curvature_algebraic on group_algebra");
  Mat3 domega_rows;  // row i = d_i omega
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    domega_rows.row(i) = ((connection_form(entry, p + h * e) -
                           connection_form(entry, p - h * e)) /
                          (2.0 * h))
                             .transpose();
  }
  return domega_rows - domega_rows.transpose();  // d_i w_j - d_j w_i
}

/// Left-invariant evaluation of the connection curvature on the complement
/// of a central fiber direction, with the sign convention
/// d(omega)(Y, Z) = -omega([Y, Z]):
///   d(omega)(e_i, e_j) = -(coefficient of e_center in [e_i, e_j]).
inline Mat connection_curvature_algebraic(const StructureConstants& sc,
                                          int center_index) {
  const int n = sc.dim();
  if (center_index < 0 || center_index >= n)
    throw DimensionError("connection_curvature_algebraic: bad center index");
  const double tol = kRankTol * std::max(1.0, sc.max_abs());
  for (int j = 0; j < n; ++j) {
    const Vec b = bracket(sc, Vec::Unit(n, center_index), Vec::Unit(n, j));
    if (inf_norm(b) > tol)
      throw InvalidArgumentError(
          "connection_curvature_algebraic: e_" + std::to_string(center_index) +
          " is not central");
  }
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (i != center_index) rest.push_back(i);
  Mat d = Mat::Zero(n - 1, n - 1);
  for (std::size_t a = 0; a < rest.size(); ++a)
    for (std::size_t b = 0; b < rest.size(); ++b)
      d(a, b) = -sc.c(rest[a], rest[b], center_index);
  return d;
}

// ---- verification helpers (batch invariance checks) ----

/// Differential of the chart action in p by central differences.
inline Mat3 action_differential(const CatalogEntry& entry, const Vec& g,
                                const Vec3& p, double h = kFdStep) {
  Mat3 d;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    d.col(i) = (action(entry, g, p + h * e) - action(entry, g, p - h * e)) /
               (2.0 * h);
  }
  return d;
}

/// || (Dg)^T mu(g.p) (Dg) - mu(p) ||_inf  -- zero for isometric actions.
inline double pullback_residual(const CatalogEntry& entry, const Vec& g,
                                const Vec3& p, double h = kFdStep) {
  const Mat3 dg = action_differential(entry, g, p, h);
  const Mat3 pulled = dg.transpose() * invariant_metric(entry, action(entry, g, p)) * dg;
  return inf_norm(Mat(pulled - invariant_metric(entry, p)));
}

/// || Dg X(p) - X(g.p) ||_inf  -- zero for G-invariant fields.
inline double field_equivariance_residual(const CatalogEntry& entry,
                                          const Vec& g, const Vec3& p,
                                          double h = kFdStep) {
  const Mat3 dg = action_differential(entry, g, p, h);
  const Vec3 lhs = dg * invariant_vector_field(entry, p);
  const Vec3 rhs = invariant_vector_field(entry, action(entry, g, p));
  return inf_norm(Vec(lhs - rhs));
}

// ---- two-dimensional Gaussian curvature (for leaf metrics) ----

using ChartMetric2 = std::function<Mat2(const Vec2&)>;

/// Gaussian curvature of a 2d metric at p, same finite-difference scheme
/// as the 3d sectional curvature.
inline double gaussian_curvature_2d(const ChartMetric2& metric, const Vec2& p,
                                    double h_curv = kFdStepCurvature,
                                    double h = kFdStep) {
  const auto gamma_at = [&](const Vec2& q) {
    const Mat2 g = metric(q);
    const Mat2 ginv = g.inverse();
    std::array<Mat2, 2> dg;
    for (int i = 0; i < 2; ++i) {
      const Vec2 e = Vec2::Unit(i);
      dg[i] = (metric(q + h * e) - metric(q - h * e)) / (2.0 * h);
    }
    std::array<Mat2, 2> out;  // out[k](i,j) = Gamma^k_ij
    for (int k = 0; k < 2; ++k) out[k].setZero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Vec2 lower;
        for (int l = 0; l < 2; ++l)
          lower(l) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        const Vec2 upper = ginv * lower;
        for (int k = 0; k < 2; ++k) out[k](i, j) = upper(k);
      }
    return out;
  };

  const auto at_p = gamma_at(p);
  std::array<std::array<Mat2, 2>, 2> dgamma;
  for (int i = 0; i < 2; ++i) {
    const Vec2 e = Vec2::Unit(i);
    const auto plus = gamma_at(p + h_curv * e);
    const auto minus = gamma_at(p - h_curv * e);
    for (int l = 0; l < 2; ++l)
      dgamma[i][l] = (plus[l] - minus[l]) / (2.0 * h_curv);
  }
  // (R(e_0, e_1) e_1)^l
  Vec2 r;
  for (int l = 0; l < 2; ++l) {
    double acc = dgamma[0][l](1, 1) - dgamma[1][l](0, 1);
    for (int m = 0; m < 2; ++m)
      acc += at_p[l](0, m) * at_p[m](1, 1) - at_p[l](1, m) * at_p[m](0, 1);
    r(l) = acc;
  }
  const Mat2 g = metric(p);
  const double denom = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  return (g.row(0).dot(r)) / denom;
}

}  // namespace geom3
