#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "geom3/diffgeo.hpp"

namespace geom3 {

/// Classification input: either a catalog entry or a user bundle with the
/// same contracts.  Non-flat axially symmetric specs must carry the
/// structure constants of G (basis: the fiber direction is central); the
/// base geometry of the bundle cannot be recovered numerically from chart
/// data alone.
struct GeometrySpec {
  std::string name;
  int isotropy_dim = 0;
  std::optional<ChartMetric> metric;
  ChartAction action;
  std::optional<VectorField> x_field;
  std::optional<StructureConstants> structure_constants;
  Vec3 base_point = Vec3::Zero();
  std::function<Vec3(Rng&)> sample_point;

  bool has_chart() const { return metric.has_value(); }
};

inline GeometrySpec from_catalog(const CatalogEntry& entry) {
  GeometrySpec s;
  s.name = to_string(entry.label);
  s.isotropy_dim = entry.isotropy_dim;
  s.metric = entry.metric;
  s.action = entry.action;
  s.x_field = entry.x_field;
  s.structure_constants = entry.group_algebra;
  s.base_point = entry.base_point;
  s.sample_point = entry.sample_point;
  return s;
}

struct TraceStep {
  std::string question;
  double value = 0.0;
  std::string branch;
};

struct Classification {
  GeometryLabel label = GeometryLabel::E3;
  std::optional<AlgebraClass> algebra;  // set for LieGroup results
  std::vector<TraceStep> trace;
};

namespace classify_detail {

/// |value| below the zero threshold counts as zero, above the nonzero
/// threshold as nonzero; the gap raises an explicit inconclusive error
/// rather than guessing near the finite-difference noise floor.
inline constexpr double kZeroThreshold = 1e-4;
inline constexpr double kNonzeroThreshold = 0.1;

inline int sign_decision(double value, const std::string& what) {
  if (std::abs(value) < kZeroThreshold) return 0;
  if (std::abs(value) > kNonzeroThreshold) return value > 0 ? 1 : -1;
  std::ostringstream os;
  os << "inconclusive " << what << ": measured " << value
     << " lies between the zero threshold " << kZeroThreshold
     << " and the nonzero threshold " << kNonzeroThreshold;
  throw InconclusiveError(os.str());
}

/// One-dimensional center of a Lie algebra, as a unit vector.
inline Vec center_direction(const StructureConstants& sc) {
  const int n = sc.dim();
  // rows (j,k) of the system encode [v, e_j]_k = sum_i v_i c(i,j,k)
  Mat system(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        system(j * n + k, i) = sc.c(i, j, k);
  const Mat kernel = nullspace(system);
  if (kernel.cols() == 0)
    throw InvalidArgumentError("group algebra has trivial center");
  if (kernel.cols() > 1)
    throw UnsupportedCaseError(
        "group algebra has a center of dimension > 1");
  return kernel.col(0);
}

/// Quotient algebra by a central direction, on the orthogonal complement,
/// together with the curvature matrix -<center, [u_a, u_b]>.
struct CentralQuotient {
  StructureConstants quotient;
  Mat curvature;
};

inline CentralQuotient central_quotient(const StructureConstants& sc) {
  const int n = sc.dim();
  const Vec z = center_direction(sc);
  Mat zmat(n, 1);
  zmat.col(0) = z;
  const Mat u = nullspace(Mat(zmat.transpose()));  // complement basis, n x (n-1)
  CentralQuotient out{StructureConstants(n - 1), Mat::Zero(n - 1, n - 1)};
  for (int a = 0; a < n - 1; ++a)
    for (int b = a + 1; b < n - 1; ++b) {
      const Vec w = bracket(sc, u.col(a), u.col(b));
      out.quotient.set_bracket(a, b, u.transpose() * w);
      out.curvature(a, b) = -z.dot(w);
      out.curvature(b, a) = z.dot(w);
    }
  return out;
}

inline GeometryLabel label_from_base_algebra(const AlgebraClass& base,
                                             std::vector<TraceStep>& trace) {
  switch (base.kind) {
    case AlgebraKind::SO3:
      trace.push_back({"quotient algebra class", 3, "so(3): spherical base"});
      return GeometryLabel::S3_U2;
    case AlgebraKind::SL2R:
      trace.push_back({"quotient algebra class", 3, "sl(2,R): hyperbolic base"});
      return GeometryLabel::SLTilde;
    case AlgebraKind::Solvable2:
      if (base.form == SolvableForm::Complex && std::abs(*base.param) < 1e-6) {
        trace.push_back({"quotient algebra class", 2, "e(2): flat base"});
        return GeometryLabel::NilSO2;
      }
      break;
    default:
      break;
  }
  throw InconclusiveError(
      std::string("quotient algebra ") + to_string(base.kind) +
      " is not one of so(3), sl(2,R), e(2)");
}

}  // namespace classify_detail

/// The top-level decision tree: isotropy dimension, then (for axial
/// symmetry) flat/non-flat via the connection curvature, then the base
/// geometry; Lie-group specs are routed to the algebra classification.
/// Every numeric decision is a sign/threshold test on scale-normalized
/// quantities, so labels are invariant under constant metric rescaling.
inline Classification classify_geometry(const GeometrySpec& spec) {
  using namespace classify_detail;
  Classification out;
  auto& trace = out.trace;

  if (spec.isotropy_dim == 3) {
    if (!spec.has_chart())
      throw InvalidArgumentError("isotropic spec requires a chart metric");
    trace.push_back({"isotropy dimension", 3, "isotropic geometry"});
    const ChartMetric& mu = *spec.metric;
    const Vec3 p = spec.base_point;
    const double scale = std::cbrt(mu(p).determinant());
    double mean = 0.0;
    int count = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        mean += sectional_curvature(mu, p, Vec3::Unit(i), Vec3::Unit(j));
        ++count;
      }
    const double k = scale * mean / count;
    const int s = sign_decision(k, "sectional curvature");
    trace.push_back({"normalized sectional curvature", k,
                     s == 0 ? "zero" : (s > 0 ? "positive" : "negative")});
    out.label = s == 0 ? GeometryLabel::E3
                       : (s > 0 ? GeometryLabel::S3_SO4 : GeometryLabel::H3);
    return out;
  }

  if (spec.isotropy_dim == 1) {
    trace.push_back({"isotropy dimension", 1, "axially symmetric geometry"});

    if (!spec.has_chart()) {
      // algebraic route (SL~): everything is read from the group algebra
      if (!spec.structure_constants)
        throw InvalidArgumentError(
            "axially symmetric spec needs a chart or structure constants");
      const StructureConstants& sc = *spec.structure_constants;
      if (sc.dim() != 4)
        throw InvalidArgumentError(
            "group algebra of an axially symmetric geometry must have dim 4");
      require_lie_algebra(sc);
      const CentralQuotient q = central_quotient(sc);
      const double norm = inf_norm(q.curvature) / std::max(1.0, sc.max_abs());
      const int flat = sign_decision(norm, "algebraic connection curvature");
      trace.push_back({"algebraic |d(omega)|", norm,
                       flat == 0 ? "flat connection" : "non-flat connection"});
      const AlgebraClass base = classify_algebra(q.quotient);
      if (flat == 0) {
        // product case G = G' x R, kappa = 0
        switch (base.kind) {
          case AlgebraKind::SO3: out.label = GeometryLabel::S2xR; return out;
          case AlgebraKind::SL2R: out.label = GeometryLabel::H2xR; return out;
          case AlgebraKind::Solvable2:
            if (base.form == SolvableForm::Complex &&
                std::abs(*base.param) < 1e-6) {
              out.label = GeometryLabel::E2xR;
              return out;
            }
            break;
          default: break;
        }
        throw InconclusiveError("flat algebraic spec with unexpected base");
      }
      out.label = label_from_base_algebra(base, trace);
      return out;
    }

    if (!spec.x_field)
      throw InvalidArgumentError(
          "axially symmetric spec is missing its invariant vector field");
    const ChartMetric& mu = *spec.metric;
    const VectorField& x = *spec.x_field;

    // flat or not: max |d(omega)| over sampled points (scale invariant)
    CatalogEntry probe;  // minimal shell for the diffgeo helpers
    probe.label = GeometryLabel::LieGroup;
    probe.isotropy_dim = 1;
    probe.metric = mu;
    probe.x_field = x;
    probe.action = [](const Vec&, const Vec3& p) { return p; };

    Rng rng(424243);
    double domega = inf_norm(Mat(connection_curvature(probe, spec.base_point)));
    for (int i = 0; i < 24; ++i) {
      const Vec3 p = spec.sample_point ? spec.sample_point(rng)
                                       : Vec3(spec.base_point +
                                              0.3 * rng.normal_vec(3));
      domega = std::max(domega, inf_norm(Mat(connection_curvature(probe, p))));
    }
    const int flat = sign_decision(domega, "connection curvature");
    trace.push_back({"max |d(omega)|", domega,
                     flat == 0 ? "flat connection" : "non-flat connection"});

    if (flat == 0) {
      // The horizontal plane is integrable; read the curvature on the leaf.
      // Supported chart alignment: omega proportional to dt.
      const Vec3 w0 = connection_form(probe, spec.base_point);
      if (std::abs(w0(0)) > 1e-6 || std::abs(w0(1)) > 1e-6)
        throw UnsupportedCaseError(
            "flat spec: connection form is not aligned with dt in this chart");
      const double t0 = spec.base_point(2);
      const ChartMetric2 leaf = [&mu, t0](const Vec2& q) -> Mat2 {
        const Mat3 g = mu(Vec3(q(0), q(1), t0));
        Mat2 h;
        h << g(0, 0), g(0, 1), g(1, 0), g(1, 1);
        return h;
      };
      const Vec2 p2(spec.base_point(0), spec.base_point(1));
      const Mat2 g2 = leaf(p2);
      const double scale2 =
          std::sqrt(g2(0, 0) * g2(1, 1) - g2(0, 1) * g2(1, 0));
      const double kbase = scale2 * gaussian_curvature_2d(leaf, p2);
      const int s = sign_decision(kbase, "base curvature");
      trace.push_back({"normalized base curvature", kbase,
                       s == 0 ? "flat base" : (s > 0 ? "spherical base"
                                                     : "hyperbolic base")});
      if (s > 0) {
        out.label = GeometryLabel::S2xR;
        return out;
      }
      if (s < 0) {
        out.label = GeometryLabel::H2xR;
        return out;
      }
      const double div = divergence(mu, x, spec.base_point);
      const int ds = sign_decision(div, "divergence of X");
      trace.push_back({"div X (= kappa)", div,
                       ds == 0 ? "Killing: product geometry"
                               : "non-Killing: semidirect geometry"});
      out.label = ds == 0 ? GeometryLabel::E2xR : GeometryLabel::E2SemiR;
      return out;
    }

    // non-flat: the base is read from the supplied group algebra
    if (!spec.structure_constants)
      throw InvalidArgumentError(
          "non-flat axially symmetric specs must carry the structure "
          "constants of G");
    const StructureConstants& sc = *spec.structure_constants;
    if (sc.dim() != 4)
      throw InvalidArgumentError(
          "group algebra of an axially symmetric geometry must have dim 4");
    require_lie_algebra(sc);
    const CentralQuotient q = central_quotient(sc);
    out.label = label_from_base_algebra(classify_algebra(q.quotient), trace);
    return out;
  }

  if (spec.isotropy_dim == 0) {
    trace.push_back({"isotropy dimension", 0, "Lie group geometry"});
    if (!spec.structure_constants)
      throw InvalidArgumentError(
          "Lie group spec requires 3-dimensional structure constants");
    if (spec.structure_constants->dim() != 3)
      throw InvalidArgumentError("Lie group spec: dim 3 required");
    out.label = GeometryLabel::LieGroup;
    out.algebra = classify_algebra(*spec.structure_constants);
    trace.push_back({"algebra class",
                     static_cast<double>(out.algebra->derived_dim),
                     to_string(out.algebra->kind)});
    return out;
  }

  throw InvalidArgumentError("isotropy dimension must be 0, 1 or 3");
}

/// The ordered question/value/branch list ending in the label.
inline Classification decision_trace(const GeometrySpec& spec) {
  return classify_geometry(spec);
}

}  // namespace geom3
