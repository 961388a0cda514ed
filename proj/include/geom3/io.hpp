#pragma once

#include <json.hpp>

#include "geom3/classify.hpp"
#include "geom3/cohomology.hpp"

namespace geom3 {

/// Insertion-ordered JSON keeps CLI output byte-stable.
using Json = nlohmann::ordered_json;

inline Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidArgumentError("expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols)
      throw InvalidArgumentError("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

/// Wire format: {"dim": n, "brackets": [{"i": i, "j": j, "coeffs": [...]}]},
/// zero brackets omitted, i < j required; the antisymmetric completion is
/// applied on load.
inline Json to_json(const StructureConstants& sc) {
  Json out;
  out["dim"] = sc.dim();
  Json brackets = Json::array();
  for (int i = 0; i < sc.dim(); ++i)
    for (int j = i + 1; j < sc.dim(); ++j) {
      bool nonzero = false;
      Json coeffs = Json::array();
      for (int k = 0; k < sc.dim(); ++k) {
        coeffs.push_back(sc.c(i, j, k));
        if (sc.c(i, j, k) != 0.0) nonzero = true;
      }
      if (nonzero)
        brackets.push_back(Json{{"i", i}, {"j", j}, {"coeffs", coeffs}});
    }
  out["brackets"] = brackets;
  return out;
}

inline StructureConstants sc_from_json(const Json& j) {
  if (!j.contains("dim"))
    throw InvalidArgumentError("structure constants: missing \"dim\"");
  StructureConstants sc(j.at("dim").get<int>());
  if (!j.contains("brackets")) return sc;
  for (const Json& b : j.at("brackets")) {
    const int i = b.at("i").get<int>();
    const int jj = b.at("j").get<int>();
    if (i >= jj)
      throw InvalidArgumentError(
          "structure constants: brackets require i < j");
    const Json& coeffs = b.at("coeffs");
    if (static_cast<int>(coeffs.size()) != sc.dim())
      throw InvalidArgumentError(
          "structure constants: coeffs must have length dim");
    Vec v(sc.dim());
    for (int k = 0; k < sc.dim(); ++k) v(k) = coeffs.at(k).get<double>();
    sc.set_bracket(i, jj, v);
  }
  return sc;
}

inline Json to_json(const TwoCocycle& w) {
  Json out;
  out["base"] = to_json(w.base);
  out["matrix"] = to_json(w.matrix);
  return out;
}

inline TwoCocycle cocycle_from_json(const Json& j) {
  const StructureConstants base = sc_from_json(j.at("base"));
  return make_cocycle(base, mat_from_json(j.at("matrix")));
}

inline Json to_json(const AlgebraClass& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  out["unimodular"] = c.unimodular;
  out["derived_dim"] = c.derived_dim;
  if (c.form) out["form"] = to_string(*c.form);
  if (c.param) out["param"] = *c.param;
  return out;
}

inline Json to_json(const CohomologyResult& r) {
  Json out;
  out["betti2"] = r.betti2;
  out["cocycle_rank"] = r.cocycle_rank;
  out["coboundary_rank"] = r.coboundary_rank;
  Json reps = Json::array();
  for (const TwoCocycle& w : r.representatives) reps.push_back(to_json(w.matrix));
  out["representatives"] = reps;
  return out;
}

inline Json to_json(const Classification& c) {
  Json out;
  out["label"] = to_string(c.label);
  if (c.algebra) out["algebra"] = to_json(*c.algebra);
  Json trace = Json::array();
  for (const TraceStep& s : c.trace)
    trace.push_back(
        Json{{"question", s.question}, {"value", s.value}, {"branch", s.branch}});
  out["trace"] = trace;
  return out;
}

/// Sign of the constant curvature of the base of the bundle (or of M itself
/// for isotropic entries).
inline int base_curvature_sign(GeometryLabel l) {
  switch (l) {
    case GeometryLabel::S3_SO4:
    case GeometryLabel::S2xR:
    case GeometryLabel::S3_U2: return 1;
    case GeometryLabel::H3:
    case GeometryLabel::H2xR:
    case GeometryLabel::SLTilde: return -1;
    default: return 0;
  }
}

inline Json catalog_descriptor(const CatalogEntry& e) {
  Json out;
  out["label"] = to_string(e.label);
  out["isotropy_dim"] = e.isotropy_dim;
  out["group_param_dim"] = e.group_param_dim;
  if (e.flat_connection) out["flat"] = *e.flat_connection;
  if (e.kappa) out["kappa"] = *e.kappa;
  out["base_curvature_sign"] = base_curvature_sign(e.label);
  out["has_chart"] = e.has_chart();
  if (e.group_algebra) out["group_algebra"] = to_json(*e.group_algebra);
  return out;
}

/// User geometry bundle.  Supported fields:
///   isotropy_dim          0, 1 or 3 (required)
///   structure_constants   dim-3 constants (isotropy 0) or the dim-4
///                         algebra of G (non-flat isotropy 1)
///   base                  catalog label to start from
///   metric_scale          multiply the metric by a positive constant
///   kappa                 warped-plane family diag(e^{kt}, e^{kt}, 1) with
///                         the E_0(2) x| R action (isotropy 1)
///   conjugate_seed        conjugate a sphere entry's action by a seeded
///                         random rotation of the ambient R^4
inline GeometrySpec spec_from_json(const Json& j) {
  if (!j.contains("isotropy_dim"))
    throw InvalidArgumentError("spec: missing \"isotropy_dim\"");
  const int iso = j.at("isotropy_dim").get<int>();

  GeometrySpec spec;
  spec.isotropy_dim = iso;
  spec.name = j.value("name", std::string("user-spec"));

  if (j.contains("kappa") && !j.contains("base")) {
    const double kappa = j.at("kappa").get<double>();
    if (iso != 1)
      throw InvalidArgumentError("spec: kappa family requires isotropy 1");
    spec.metric = ChartMetric{[kappa](const Vec3& p) -> Mat3 {
      Mat3 g = Mat3::Identity();
      g(0, 0) = g(1, 1) = std::exp(kappa * p(2));
      return g;
    }};
    spec.action = [kappa](const Vec& g, const Vec3& p) -> Vec3 {
      const Vec2 img =
          std::exp(-0.5 * kappa * g(3)) *
              (chart_detail::rot2(g(2)) * Vec2(p(0), p(1))) +
          Vec2(g(0), g(1));
      return Vec3(img(0), img(1), p(2) + g(3));
    };
    spec.x_field = [](const Vec3&) { return Vec3(0, 0, 1); };
    spec.sample_point = chart_detail::cube_sampler(1.0);
  } else if (j.contains("base")) {
    const auto label = label_from_string(j.at("base").get<std::string>());
    if (!label)
      throw InvalidArgumentError("spec: unknown base label");
    spec = from_catalog(catalog_entry(*label));
    spec.name = j.value("name", std::string("user-spec(") +
                                    j.at("base").get<std::string>() + ")");
    spec.isotropy_dim = iso;
  }

  if (j.contains("conjugate_seed")) {
    if (!j.contains("base"))
      throw InvalidArgumentError("spec: conjugate_seed requires a base label");
    const CatalogEntry& entry =
        catalog_entry(*label_from_string(j.at("base").get<std::string>()));
    if (!entry.embed)
      throw InvalidArgumentError(
          "spec: conjugate_seed applies only to sphere entries");
    Rng rng(static_cast<std::uint64_t>(j.at("conjugate_seed").get<int>()));
    const Mat4 q = random_rotation(rng, 4);
    const auto embed = entry.embed;
    const auto unembed = entry.unembed;
    const auto group_matrix = entry.group_matrix;
    spec.action = [=](const Vec& g, const Vec3& u) -> Vec3 {
      return unembed(q * group_matrix(g) * q.transpose() * embed(u));
    };
    if (entry.x_field) {
      const Mat4 jq = q * chart_detail::complex_structure() * q.transpose();
      const chart_detail::SphereChart chart{
          Vec4(1, 0, 0, 0), [] {
            Eigen::Matrix<double, 4, 3> f;
            f.setZero();
            f(1, 0) = f(2, 1) = f(3, 2) = 1.0;
            return f;
          }()};
      spec.x_field = [chart, jq](const Vec3& u) -> Vec3 {
        const Vec4 hopf = jq * chart.embed(u);
        const Eigen::Matrix<double, 4, 3> d = chart.differential(u);
        return (d.transpose() * d).ldlt().solve(d.transpose() * hopf);
      };
    }
    if (spec.structure_constants) {
      // push the algebra through a seeded basis change: same class,
      // different constants
      const Mat t = random_invertible(rng, spec.structure_constants->dim(),
                                      0.5, 2.0);
      spec.structure_constants =
          change_basis(*spec.structure_constants, t);
    }
  }

  if (j.contains("metric_scale")) {
    const double s = j.at("metric_scale").get<double>();
    if (!(s > 0.0))
      throw InvalidArgumentError("spec: metric_scale must be positive");
    if (!spec.metric)
      throw InvalidArgumentError("spec: metric_scale without a metric");
    const ChartMetric inner = *spec.metric;
    spec.metric = ChartMetric{
        [inner, s](const Vec3& p) -> Mat3 { return s * inner.eval(p); },
        inner.in_domain};
  }

  if (j.contains("structure_constants"))
    spec.structure_constants = sc_from_json(j.at("structure_constants"));

  if (iso == 0 && !spec.structure_constants)
    throw InvalidArgumentError(
        "spec: isotropy 0 requires structure_constants");
  return spec;
}

}  // namespace geom3
