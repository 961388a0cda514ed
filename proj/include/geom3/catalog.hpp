#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "geom3/cohomology.hpp"
#include "geom3/lie.hpp"

namespace geom3 {

/// The fixed geometry list plus the Lie-group family marker.
enum class GeometryLabel {
  E3,
  S3_SO4,
  H3,
  S2xR,
  H2xR,
  E2xR,
  E2SemiR,
  S3_U2,
  SLTilde,
  NilSO2,
  LieGroup
};

inline const char* to_string(GeometryLabel l) {
  switch (l) {
    case GeometryLabel::E3: return "E3";
    case GeometryLabel::S3_SO4: return "S3_SO4";
    case GeometryLabel::H3: return "H3";
    case GeometryLabel::S2xR: return "S2xR";
    case GeometryLabel::H2xR: return "H2xR";
    case GeometryLabel::E2xR: return "E2xR";
    case GeometryLabel::E2SemiR: return "E2SemiR";
    case GeometryLabel::S3_U2: return "S3_U2";
    case GeometryLabel::SLTilde: return "SLTilde";
    case GeometryLabel::NilSO2: return "NilSO2";
    case GeometryLabel::LieGroup: return "LieGroup";
  }
  return "?";
}

inline std::optional<GeometryLabel> label_from_string(const std::string& s) {
  static const std::map<std::string, GeometryLabel> table = {
      {"E3", GeometryLabel::E3},         {"S3_SO4", GeometryLabel::S3_SO4},
      {"H3", GeometryLabel::H3},         {"S2xR", GeometryLabel::S2xR},
      {"H2xR", GeometryLabel::H2xR},     {"E2xR", GeometryLabel::E2xR},
      {"E2SemiR", GeometryLabel::E2SemiR}, {"S3_U2", GeometryLabel::S3_U2},
      {"SLTilde", GeometryLabel::SLTilde}, {"NilSO2", GeometryLabel::NilSO2},
      {"LieGroup", GeometryLabel::LieGroup}};
  const auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

/// Smooth field of symmetric positive-definite matrices over a chart.
struct ChartMetric {
  std::function<Mat3(const Vec3&)> eval;
  std::function<bool(const Vec3&)> in_domain = [](const Vec3&) { return true; };

  Mat3 operator()(const Vec3& p) const {
    if (!in_domain(p)) throw ChartDomainError("point outside chart domain");
    return eval(p);
  }
};

using VectorField = std::function<Vec3(const Vec3&)>;
using ChartAction = std::function<Vec3(const Vec&, const Vec3&)>;
using ParamCompose = std::function<Vec(const Vec&, const Vec&)>;

/// Sampling range tag per group parameter: translations are drawn from
/// [-2,2], angles from [0,2pi), boosts and algebra coefficients from [-1,1].
enum class ParamKind { Translation, Angle, Boost };

/// One model geometry.  Chart-level data (action, metric, x_field) is
/// present for every entry except SLTilde, which has no closed-form global
/// chart action and is represented by its group algebra alone.
struct CatalogEntry {
  GeometryLabel label = GeometryLabel::E3;
  int isotropy_dim = 0;
  int group_param_dim = 0;
  std::vector<ParamKind> param_kinds;
  std::optional<bool> flat_connection;  // axially symmetric entries only
  std::optional<double> kappa;          // flat axially symmetric entries only

  std::optional<ChartMetric> metric;
  ChartAction action;                   // null for SLTilde
  std::optional<VectorField> x_field;   // present iff isotropy_dim == 1
  ParamCompose compose;                 // null when no explicit parameter law

  /// Lie algebra of G for the non-flat entries (basis convention: index 0
  /// spans the fiber direction, which is central).
  std::optional<StructureConstants> group_algebra;

  Vec3 base_point = Vec3::Zero();
  std::function<Vec3(Rng&)> sample_point;

  // embedded-sphere extras (S3_SO4 / S3_U2 only)
  std::function<Vec4(const Vec3&)> embed;
  std::function<Vec3(const Vec4&)> unembed;
  std::function<Mat4(const Vec&)> group_matrix;

  bool has_chart() const { return static_cast<bool>(action); }
};

namespace chart_detail {

inline Mat2 rot2(double theta) {
  Mat2 r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

inline Mat3 rot3(const Vec3& r) {
  const double angle = r.norm();
  if (angle < 1e-300) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, r / angle).toRotationMatrix();
}

inline Vec3 rot3_log(const Mat3& m) {
  const Eigen::AngleAxisd aa(m);
  return aa.angle() * aa.axis();
}

/// Moebius addition on the curvature -1 Poincare ball/disk; as a map
/// v -> u (+) v it is an isometry of the ball metric.
inline Vec mobius_add(const Vec& u, const Vec& v) {
  const double uv = u.dot(v);
  const double u2 = u.squaredNorm();
  const double v2 = v.squaredNorm();
  const double denom = 1.0 + 2.0 * uv + u2 * v2;
  if (std::abs(denom) < 1e-14)
    throw ChartDomainError("moebius addition degenerate");
  return ((1.0 + 2.0 * uv + v2) * u + (1.0 - u2) * v) / denom;
}

/// Boost parameters (components in [-1,1]) mapped inside the unit ball.
inline Vec boost_to_ball(const Vec& b) {
  const double n = b.norm();
  if (n < 1e-300) return Vec::Zero(b.size());
  return std::tanh(n) / n * b;
}

/// Inverse stereographic projection R^2 -> S^2 (from the north pole).
inline Vec3 unstereo(const Vec2& x) {
  const double r2 = x.squaredNorm();
  return Vec3(2.0 * x(0), 2.0 * x(1), r2 - 1.0) / (r2 + 1.0);
}

inline Vec2 stereo(const Vec3& q) {
  if (q(2) > 1.0 - 1e-12)
    throw ChartDomainError("stereographic chart: point at projection pole");
  return Vec2(q(0), q(1)) / (1.0 - q(2));
}

/// Normal-coordinate chart of the round unit S^3 at base point p0 with
/// orthonormal tangent frame F (4x3): u -> cos|u| p0 + sin|u|/|u| F u.
struct SphereChart {
  Vec4 p0;
  Eigen::Matrix<double, 4, 3> frame;
  static constexpr double kCutMargin = 0.05;  // stay off the cut locus

  Vec4 embed(const Vec3& u) const {
    const double r = u.norm();
    if (r >= M_PI - kCutMargin)
      throw ChartDomainError("sphere chart: point beyond cut locus margin");
    if (r < 1e-300) return p0;
    return std::cos(r) * p0 + std::sin(r) / r * (frame * u);
  }

  Vec3 unembed(const Vec4& q) const {
    const double c = std::clamp(q.dot(p0), -1.0, 1.0);
    const Vec4 w = q - c * p0;
    const double wn = w.norm();
    const double r = std::atan2(wn, c);
    if (r >= M_PI - kCutMargin)
      throw ChartDomainError("sphere chart: image beyond cut locus margin");
    if (wn < 1e-300) return Vec3::Zero();
    return r / wn * (frame.transpose() * w);
  }

  /// Jacobian of the embedding (4x3), analytic.
  Eigen::Matrix<double, 4, 3> differential(const Vec3& u) const {
    const double r = u.norm();
    Eigen::Matrix<double, 4, 3> d;
    if (r < 1e-8) {
      d = frame;
      d -= p0 * u.transpose();  // leading correction, O(r)
      return d;
    }
    const double s = std::sin(r) / r;
    const double sp_over_r = (r * std::cos(r) - std::sin(r)) / (r * r * r);
    d = -(std::sin(r) / r) * (p0 * u.transpose()) +
        sp_over_r * ((frame * u) * u.transpose()) + s * frame;
    return d;
  }

  /// Round metric in these coordinates:
  /// g = u^ u^T + (sin^2 r / r^2)(I - u^ u^T), u^ = u/|u|.
  Mat3 metric(const Vec3& u) const {
    const double r = u.norm();
    if (r < 1e-8) {
      const double s2 = 1.0 - r * r / 3.0;
      Mat3 g = s2 * Mat3::Identity();
      if (r > 0) g += (1.0 - s2) / (r * r) * (u * u.transpose());
      return g;
    }
    const double s2 = std::pow(std::sin(r) / r, 2);
    const Vec3 uh = u / r;
    return uh * uh.transpose() + s2 * (Mat3::Identity() - uh * uh.transpose());
  }
};

// ---- U(2) parameterization (u(2) coefficients over {iI, i sigma_a}) ----

using C2 = Eigen::Matrix2cd;

inline C2 u2_exp(const Vec& c) {
  const std::complex<double> i(0.0, 1.0);
  const Vec3 v(c(1), c(2), c(3));
  const double n = v.norm();
  C2 su = C2::Identity() * std::cos(n);
  if (n > 1e-300) {
    C2 sigma;
    sigma << v(2), std::complex<double>(v(0), -v(1)),
        std::complex<double>(v(0), v(1)), -v(2);
    su += i * std::sin(n) / n * sigma;
  }
  return std::exp(i * c(0)) * su;
}

/// Principal logarithm of a U(2) element in the {iI, i sigma_a} basis.
inline Vec u2_log(const C2& u) {
  const std::complex<double> det = u.determinant();
  const double theta = 0.5 * std::arg(det);
  const std::complex<double> i(0.0, 1.0);
  const C2 v = std::exp(-i * theta) * u;  // in SU(2)
  const double alpha = 0.5 * (v(0, 0) + v(1, 1)).real();
  Vec3 beta;
  beta(0) = 0.5 * (v(0, 1) + v(1, 0)).imag();
  beta(1) = 0.5 * (v(0, 1) - v(1, 0)).real();
  beta(2) = 0.5 * (v(0, 0) - v(1, 1)).imag();
  const double bn = beta.norm();
  const double phi = std::atan2(bn, alpha);
  Vec out(4);
  out(0) = theta;
  if (bn < 1e-300)
    out.tail(3).setZero();
  else
    out.tail(3) = phi / bn * beta;
  return out;
}

/// Real 4x4 picture of a complex 2x2 matrix acting on C^2 = R^4
/// with coordinates (x1, y1, x2, y2).
inline Mat4 complex_to_real4(const C2& m) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      r(2 * i, 2 * j) = m(i, j).real();
      r(2 * i, 2 * j + 1) = -m(i, j).imag();
      r(2 * i + 1, 2 * j) = m(i, j).imag();
      r(2 * i + 1, 2 * j + 1) = m(i, j).real();
    }
  return r;
}

/// Multiplication by i on R^4 = C^2.
inline Mat4 complex_structure() {
  return complex_to_real4(C2::Identity() * std::complex<double>(0.0, 1.0));
}

// ---- so(4) parameterization (six elementary rotations) ----

inline Mat4 so4_element(const Vec& c) {
  Mat4 a = Mat4::Zero();
  int idx = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      a(i, j) = c(idx);
      a(j, i) = -c(idx);
      ++idx;
    }
  return a;
}

// ---- Heisenberg group (symmetric model) ----

/// Nil multiplication: (a * p)_z picks up the symplectic area term.
inline Vec3 nil_mul(const Vec3& a, const Vec3& p) {
  return Vec3(a(0) + p(0), a(1) + p(1),
              a(2) + p(2) + 0.5 * (a(0) * p(1) - a(1) * p(0)));
}

/// Rotation automorphism of Nil.  In the symmetric model the quadratic
/// correction terms of the polarized model vanish identically: the
/// derivative at theta = 0 is the rotation generator on (e1, e2), and the
/// composition law rho_a rho_b = rho_{a+b} holds exactly (both verified in
/// the test suite, which is how the corrupted source formula was settled).
inline Vec3 nil_rot(double theta, const Vec3& p) {
  const Vec2 xy = rot2(theta) * Vec2(p(0), p(1));
  return Vec3(xy(0), xy(1), p(2));
}

/// Left-invariant metric with orthonormal frame (E1, E2, E0),
/// E1 = dx - (y/2) dz-dual etc.; coframe (dx, dy, dz + (y dx - x dy)/2).
inline Mat3 nil_metric(const Vec3& p) {
  const double x = p(0), y = p(1);
  Mat3 g;
  g << 1.0 + y * y / 4.0, -x * y / 4.0, y / 2.0,
      -x * y / 4.0, 1.0 + x * x / 4.0, -x / 2.0,
      y / 2.0, -x / 2.0, 1.0;
  return g;
}

inline std::function<Vec3(Rng&)> cube_sampler(double radius) {
  return [radius](Rng& rng) {
    return Vec3(rng.uniform(-radius, radius), rng.uniform(-radius, radius),
                rng.uniform(-radius, radius));
  };
}

/// Horizontal disk of the given radius times an interval in t.
inline std::function<Vec3(Rng&)> disk_sampler(double radius, double t_range) {
  return [radius, t_range](Rng& rng) {
    while (true) {
      const double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
      if (x * x + y * y <= 1.0)
        return Vec3(radius * x, radius * y, rng.uniform(-t_range, t_range));
    }
  };
}

inline std::function<Vec3(Rng&)> ball_sampler(double radius) {
  return [radius](Rng& rng) {
    while (true) {
      const Vec3 v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                   rng.uniform(-1.0, 1.0));
      if (v.squaredNorm() <= 1.0) return Vec3(radius * v);
    }
  };
}

}  // namespace chart_detail

namespace catalog_builders {

using namespace chart_detail;

inline CatalogEntry make_e3() {
  CatalogEntry e;
  e.label = GeometryLabel::E3;
  e.isotropy_dim = 3;
  e.group_param_dim = 6;
  e.param_kinds = {ParamKind::Translation, ParamKind::Translation,
                   ParamKind::Translation, ParamKind::Boost, ParamKind::Boost,
                   ParamKind::Boost};
  e.metric = ChartMetric{[](const Vec3&) { return Mat3::Identity(); }};
  e.action = [](const Vec& g, const Vec3& p) -> Vec3 {
    return rot3(g.tail(3)) * p + g.head(3);
  };
  e.compose = [](const Vec& a, const Vec& b) {
    const Mat3 r1 = rot3(a.tail(3)), r2 = rot3(b.tail(3));
    Vec out(6);
    out.head(3) = a.head(3) + r1 * b.head(3);
    out.tail(3) = rot3_log(r1 * r2);
    return out;
  };
  e.sample_point = cube_sampler(1.5);
  return e;
}

inline CatalogEntry make_s3_so4() {
  CatalogEntry e;
  e.label = GeometryLabel::S3_SO4;
  e.isotropy_dim = 3;
  e.group_param_dim = 6;
  e.param_kinds.assign(6, ParamKind::Boost);
  SphereChart chart;
  chart.p0 = Vec4(1, 0, 0, 0);
  chart.frame.setZero();
  chart.frame(1, 0) = chart.frame(2, 1) = chart.frame(3, 2) = 1.0;
  e.metric = ChartMetric{
      [chart](const Vec3& u) { return chart.metric(u); },
      [](const Vec3& u) { return u.norm() < M_PI - SphereChart::kCutMargin; }};
  e.action = [chart](const Vec& g, const Vec3& u) -> Vec3 {
    const Mat4 rot = so4_element(g).exp();
    return chart.unembed(rot * chart.embed(u));
  };
  e.embed = [chart](const Vec3& u) { return chart.embed(u); };
  e.unembed = [chart](const Vec4& q) { return chart.unembed(q); };
  e.group_matrix = [](const Vec& g) { return Mat4(so4_element(g).exp()); };
  e.sample_point = ball_sampler(1.2);
  return e;
}

inline CatalogEntry make_h3() {
  CatalogEntry e;
  e.label = GeometryLabel::H3;
  e.isotropy_dim = 3;
  e.group_param_dim = 6;
  e.param_kinds.assign(6, ParamKind::Boost);
  e.metric = ChartMetric{
      [](const Vec3& x) -> Mat3 {
        const double f = 1.0 - x.squaredNorm();
        return 4.0 / (f * f) * Mat3::Identity();
      },
      [](const Vec3& x) { return x.norm() < 1.0 - 1e-8; }};
  e.action = [](const Vec& g, const Vec3& p) -> Vec3 {
    if (p.norm() >= 1.0)
      throw ChartDomainError("Poincare ball: |p| must be < 1");
    const Vec a = boost_to_ball(g.head(3));
    return mobius_add(a, Vec(rot3(g.tail(3)) * p));
  };
  e.sample_point = ball_sampler(0.6);
  return e;
}

inline CatalogEntry make_s2xr() {
  CatalogEntry e;
  e.label = GeometryLabel::S2xR;
  e.isotropy_dim = 1;
  e.group_param_dim = 4;
  e.param_kinds = {ParamKind::Boost, ParamKind::Boost, ParamKind::Boost,
                   ParamKind::Translation};
  e.flat_connection = true;
  e.kappa = 0.0;
  e.metric = ChartMetric{[](const Vec3& p) -> Mat3 {
    const double f = 1.0 + p(0) * p(0) + p(1) * p(1);
    Mat3 g = Mat3::Identity();
    g(0, 0) = g(1, 1) = 4.0 / (f * f);
    return g;
  }};
  e.action = [](const Vec& g, const Vec3& p) -> Vec3 {
    const Vec2 img = stereo(rot3(g.head(3)) * unstereo(Vec2(p(0), p(1))));
    return Vec3(img(0), img(1), p(2) + g(3));
  };
  e.x_field = [](const Vec3&) { return Vec3(0, 0, 1); };
  e.sample_point = cube_sampler(1.0);
  return e;
}

inline CatalogEntry make_h2xr() {
  CatalogEntry e;
  e.label = GeometryLabel::H2xR;
  e.isotropy_dim = 1;
  e.group_param_dim = 4;
  e.param_kinds = {ParamKind::Boost, ParamKind::Boost, ParamKind::Angle,
                   ParamKind::Translation};
  e.flat_connection = true;
  e.kappa = 0.0;
  e.metric = ChartMetric{
      [](const Vec3& p) -> Mat3 {
        const double f = 1.0 - p(0) * p(0) - p(1) * p(1);
        Mat3 g = Mat3::Identity();
        g(0, 0) = g(1, 1) = 4.0 / (f * f);
        return g;
      },
      [](const Vec3& p) {
        return p(0) * p(0) + p(1) * p(1) < (1.0 - 1e-8) * (1.0 - 1e-8);
      }};
  e.action = [](const Vec& g, const Vec3& p) -> Vec3 {
    if (p(0) * p(0) + p(1) * p(1) >= 1.0)
      throw ChartDomainError("Poincare disk: |x| must be < 1");
    const Vec a = boost_to_ball(g.head(2));
    const Vec img = mobius_add(a, Vec(rot2(g(2)) * Vec2(p(0), p(1))));
    return Vec3(img(0), img(1), p(2) + g(3));
  };
  e.x_field = [](const Vec3&) { return Vec3(0, 0, 1); };
  e.sample_point = disk_sampler(0.6, 1.0);
  return e;
}

inline CatalogEntry make_e2xr() {
  CatalogEntry e;
  e.label = GeometryLabel::E2xR;
  e.isotropy_dim = 1;
  e.group_param_dim = 4;
  e.param_kinds = {ParamKind::Translation, ParamKind::Translation,
                   ParamKind::Angle, ParamKind::Translation};
  e.flat_connection = true;
  e.kappa = 0.0;
  e.metric = ChartMetric{[](const Vec3&) { return Mat3::Identity(); }};
  e.action = [](const Vec& g, const Vec3& p) -> Vec3 {
    const Vec2 img = rot2(g(2)) * Vec2(p(0), p(1)) + Vec2(g(0), g(1));
    return Vec3(img(0), img(1), p(2) + g(3));
  };
  e.compose = [](const Vec& a, const Vec& b) {
    Vec out(4);
    const Vec2 t = Vec2(a(0), a(1)) + rot2(a(2)) * Vec2(b(0), b(1));
    out << t(0), t(1), a(2) + b(2), a(3) + b(3);
    return out;
  };
  e.x_field = [](const Vec3&) { return Vec3(0, 0, 1); };
  e.sample_point = cube_sampler(1.5);
  return e;
}

/// The kappa != 0 flat geometry E_0(2) x|_rho R, normalized to kappa = 1:
/// (a, theta, s).(x, t) = (e^{-s/2} R_theta x + a, t + s) with invariant
/// metric diag(e^t, e^t, 1).
inline CatalogEntry make_e2semir() {
  CatalogEntry e;
  e.label = GeometryLabel::E2SemiR;
  e.isotropy_dim = 1;
  e.group_param_dim = 4;
  e.param_kinds = {ParamKind::Translation, ParamKind::Translation,
                   ParamKind::Angle, ParamKind::Translation};
  e.flat_connection = true;
  e.kappa = 1.0;
  e.metric = ChartMetric{[](const Vec3& p) -> Mat3 {
    Mat3 g = Mat3::Identity();
    g(0, 0) = g(1, 1) = std::exp(p(2));
    return g;
  }};
  e.action = [](const Vec& g, const Vec3& p) -> Vec3 {
    const Vec2 img = std::exp(-0.5 * g(3)) * (rot2(g(2)) * Vec2(p(0), p(1))) +
                     Vec2(g(0), g(1));
    return Vec3(img(0), img(1), p(2) + g(3));
  };
  e.compose = [](const Vec& a, const Vec& b) {
    Vec out(4);
    const Vec2 t = Vec2(a(0), a(1)) +
                   std::exp(-0.5 * a(3)) * (rot2(a(2)) * Vec2(b(0), b(1)));
    out << t(0), t(1), a(2) + b(2), a(3) + b(3);
    return out;
  };
  e.x_field = [](const Vec3&) { return Vec3(0, 0, 1); };
  e.sample_point = cube_sampler(1.0);
  return e;
}

inline CatalogEntry make_s3_u2() {
  CatalogEntry e;
  e.label = GeometryLabel::S3_U2;
  e.isotropy_dim = 1;
  e.group_param_dim = 4;
  e.param_kinds.assign(4, ParamKind::Boost);
  e.flat_connection = false;
  SphereChart chart;
  chart.p0 = Vec4(1, 0, 0, 0);
  chart.frame.setZero();
  // first frame vector along the Hopf direction i p0 = (0,1,0,0)
  chart.frame(1, 0) = chart.frame(2, 1) = chart.frame(3, 2) = 1.0;
  e.metric = ChartMetric{
      [chart](const Vec3& u) { return chart.metric(u); },
      [](const Vec3& u) { return u.norm() < M_PI - SphereChart::kCutMargin; }};
  e.action = [chart](const Vec& g, const Vec3& u) -> Vec3 {
    const Mat4 m = complex_to_real4(u2_exp(g));
    return chart.unembed(m * chart.embed(u));
  };
  e.compose = [](const Vec& a, const Vec& b) {
    return u2_log(C2(u2_exp(a) * u2_exp(b)));
  };
  const Mat4 j = complex_structure();
  e.x_field = [chart, j](const Vec3& u) -> Vec3 {
    const Vec4 hopf = j * chart.embed(u);
    const Eigen::Matrix<double, 4, 3> d = chart.differential(u);
    // hopf is tangent, so the least-squares solve is exact
    return (d.transpose() * d).ldlt().solve(d.transpose() * hopf);
  };
  e.group_algebra = algebras::u2();
  e.embed = [chart](const Vec3& u) { return chart.embed(u); };
  e.unembed = [chart](const Vec4& q) { return chart.unembed(q); };
  e.group_matrix = [](const Vec& g) { return complex_to_real4(u2_exp(g)); };
  e.sample_point = ball_sampler(1.2);
  return e;
}

/// SL~ has no closed-form global chart action (the group action involves
/// covering-space data); the entry carries the Lie algebra of G in the
/// geometry-adapted basis, built as the central extension of sl(2,R) by the
/// cocycle with omega(e1, e2) = 1.
inline CatalogEntry make_sltilde() {
  CatalogEntry e;
  e.label = GeometryLabel::SLTilde;
  e.isotropy_dim = 1;
  e.group_param_dim = 4;
  e.param_kinds.assign(4, ParamKind::Boost);
  e.flat_connection = false;
  const StructureConstants sl2 = algebras::sl2r();
  Mat w = Mat::Zero(3, 3);
  w(0, 1) = 1.0;
  w(1, 0) = -1.0;
  e.group_algebra = central_extension(sl2, make_cocycle(sl2, w));
  e.sample_point = cube_sampler(1.0);
  return e;
}

inline CatalogEntry make_nilso2() {
  CatalogEntry e;
  e.label = GeometryLabel::NilSO2;
  e.isotropy_dim = 1;
  e.group_param_dim = 4;
  e.param_kinds = {ParamKind::Translation, ParamKind::Translation,
                   ParamKind::Translation, ParamKind::Angle};
  e.flat_connection = false;
  e.metric = ChartMetric{[](const Vec3& p) { return nil_metric(p); }};
  e.action = [](const Vec& g, const Vec3& p) -> Vec3 {
    return nil_mul(g.head(3), nil_rot(g(3), p));
  };
  e.compose = [](const Vec& a, const Vec& b) {
    Vec out(4);
    out.head(3) = nil_mul(a.head(3), nil_rot(a(3), b.head(3)));
    out(3) = a(3) + b(3);
    return out;
  };
  e.x_field = [](const Vec3&) { return Vec3(0, 0, 1); };
  e.group_algebra = algebras::nil_semidirect_r();
  e.sample_point = cube_sampler(1.0);
  return e;
}

}  // namespace catalog_builders

/// The Theorem list: three isotropic, four flat axially symmetric (counting
/// kappa = 0 and kappa = 1), three non-flat, plus the Lie-group family
/// marker.
inline std::vector<GeometryLabel> list_geometries() {
  return {GeometryLabel::E3,      GeometryLabel::S3_SO4,
          GeometryLabel::H3,      GeometryLabel::S2xR,
          GeometryLabel::H2xR,    GeometryLabel::E2xR,
          GeometryLabel::E2SemiR, GeometryLabel::S3_U2,
          GeometryLabel::SLTilde, GeometryLabel::NilSO2,
          GeometryLabel::LieGroup};
}

inline const CatalogEntry& catalog_entry(GeometryLabel label) {
  using namespace catalog_builders;
  static const std::map<GeometryLabel, CatalogEntry> entries = [] {
    std::map<GeometryLabel, CatalogEntry> m;
    m.emplace(GeometryLabel::E3, make_e3());
    m.emplace(GeometryLabel::S3_SO4, make_s3_so4());
    m.emplace(GeometryLabel::H3, make_h3());
    m.emplace(GeometryLabel::S2xR, make_s2xr());
    m.emplace(GeometryLabel::H2xR, make_h2xr());
    m.emplace(GeometryLabel::E2xR, make_e2xr());
    m.emplace(GeometryLabel::E2SemiR, make_e2semir());
    m.emplace(GeometryLabel::S3_U2, make_s3_u2());
    m.emplace(GeometryLabel::SLTilde, make_sltilde());
    m.emplace(GeometryLabel::NilSO2, make_nilso2());
    return m;
  }();
  const auto it = entries.find(label);
  if (it == entries.end())
    throw InvalidArgumentError(std::string("no catalog entry for label ") +
                               to_string(label));
  return it->second;
}

/// Chart-level evaluation of the entry's group action.
inline Vec3 action(const CatalogEntry& entry, const Vec& g, const Vec3& p) {
  if (!entry.has_chart())
    throw UnsupportedCaseError(std::string(to_string(entry.label)) +
                               " carries no chart-level action");
  if (g.size() != entry.group_param_dim)
    throw DimensionError("action: wrong number of group parameters");
  if (entry.metric && !entry.metric->in_domain(p))
    throw ChartDomainError("action: point outside chart domain");
  return entry.action(g, p);
}

inline Mat3 invariant_metric(const CatalogEntry& entry, const Vec3& p) {
  if (!entry.metric)
    throw UnsupportedCaseError(std::string(to_string(entry.label)) +
                               " carries no chart metric");
  return (*entry.metric)(p);
}

inline Vec3 invariant_vector_field(const CatalogEntry& entry, const Vec3& p) {
  if (entry.isotropy_dim != 1)
    throw UnsupportedCaseError(
        "invariant vector field exists only for axially symmetric entries");
  if (!entry.x_field)
    throw UnsupportedCaseError(std::string(to_string(entry.label)) +
                               " carries no chart-level vector field");
  return (*entry.x_field)(p);
}

/// Deterministic pseudo-random group parameters with bounded norm.
inline Vec group_sample(const CatalogEntry& entry, int seed) {
  Rng rng(static_cast<std::uint64_t>(seed) * 1000003ull +
          static_cast<std::uint64_t>(entry.label));
  Vec g(entry.group_param_dim);
  for (int i = 0; i < entry.group_param_dim; ++i) {
    switch (entry.param_kinds[i]) {
      case ParamKind::Translation: g(i) = rng.uniform(-2.0, 2.0); break;
      case ParamKind::Angle: g(i) = rng.uniform(0.0, 2.0 * M_PI); break;
      case ParamKind::Boost: g(i) = rng.uniform(-1.0, 1.0); break;
    }
  }
  return g;
}

/// Deterministic chart point for batch verification.
inline Vec3 point_sample(const CatalogEntry& entry, int seed) {
  Rng rng(static_cast<std::uint64_t>(seed) * 7368787ull + 17u +
          static_cast<std::uint64_t>(entry.label));
  return entry.sample_point(rng);
}

}  // namespace geom3
