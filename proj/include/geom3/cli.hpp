#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "geom3/io.hpp"

namespace geom3::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;

namespace detail {

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgumentError("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

struct CheckList {
  Json checks = Json::array();
  bool pass = true;

  void add(const std::string& name, double residual, double tol,
           bool ok_override = true) {
    const bool ok = residual <= tol && ok_override;
    checks.push_back(Json{{"name", name},
                          {"max_residual", residual},
                          {"tol", tol},
                          {"pass", ok}});
    pass = pass && ok;
  }

  void add_flag(const std::string& name, bool ok, double value) {
    checks.push_back(Json{{"name", name}, {"value", value}, {"pass", ok}});
    pass = pass && ok;
  }
};

inline Vec3 parse_triple(const std::string& s) {
  std::stringstream ss(s);
  Vec3 v;
  char comma;
  ss >> v(0) >> comma >> v(1) >> comma >> v(2);
  if (ss.fail())
    throw InvalidArgumentError("expected three comma-separated numbers: " + s);
  return v;
}

}  // namespace detail

/// Batch verification report for one catalog entry: invariance, field
/// equivariance, divergence/Killing consistency, connection curvature
/// dichotomy, parameter composition and geodesic energy, all at the
/// documented tolerances.  Deterministic for a fixed seed.
inline Json run_verify(const CatalogEntry& entry, int samples, int seed) {
  detail::CheckList checks;

  if (entry.has_chart()) {
    double pullback = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Vec g = group_sample(entry, seed + s);
      const Vec3 p = point_sample(entry, seed + s);
      pullback = std::max(pullback, pullback_residual(entry, g, p));
    }
    checks.add("metric_invariance", pullback, 1e-6);

    if (entry.compose) {
      double comp = 0.0;
      const int n = std::min(samples, 50);
      for (int s = 0; s < n; ++s) {
        const Vec g = group_sample(entry, seed + s);
        const Vec h = group_sample(entry, seed + s + 1000);
        const Vec3 p = point_sample(entry, seed + s);
        const Vec3 two_step = action(entry, g, action(entry, h, p));
        const Vec3 one_step = action(entry, entry.compose(g, h), p);
        comp = std::max(comp, inf_norm(Vec(two_step - one_step)));
      }
      checks.add("composition_law", comp, 1e-9);
    }
  }

  if (entry.isotropy_dim == 1 && entry.has_chart()) {
    const int n = std::min(samples, 100);

    double equivariance = 0.0;
    for (int s = 0; s < n; ++s) {
      const Vec g = group_sample(entry, seed + s);
      const Vec3 p = point_sample(entry, seed + s);
      equivariance =
          std::max(equivariance, field_equivariance_residual(entry, g, p));
    }
    checks.add("x_equivariance", equivariance, 1e-6);

    double len_min = 1e300, len_max = 0.0;
    for (int s = 0; s < n; ++s) {
      const Vec3 p = point_sample(entry, seed + s);
      const double len = metric_norm(*entry.metric, p,
                                     invariant_vector_field(entry, p));
      len_min = std::min(len_min, len);
      len_max = std::max(len_max, len);
    }
    checks.add("x_length_spread", (len_max - len_min) / len_max, 1e-8);

    double div_value = 0.0, div_spread = 0.0, killing = 0.0, domega = 0.0,
           ixdomega = 0.0;
    for (int s = 0; s < n; ++s) {
      const Vec3 p = point_sample(entry, seed + s);
      const double d = divergence(*entry.metric, *entry.x_field, p);
      if (s == 0)
        div_value = d;
      else
        div_spread = std::max(div_spread, std::abs(d - div_value));
      killing = std::max(killing,
                         killing_residual(*entry.metric, *entry.x_field, p));
      const Mat3 dw = connection_curvature(entry, p);
      domega = std::max(domega, inf_norm(Mat(dw)));
      ixdomega = std::max(
          ixdomega, inf_norm(Vec(dw * invariant_vector_field(entry, p))));
    }
    checks.add("divergence_constant", div_spread, 1e-5);
    if (entry.kappa)
      checks.add("divergence_equals_kappa", std::abs(div_value - *entry.kappa),
                 1e-5);
    checks.add_flag("divergence_killing_equivalence",
                    (std::abs(div_value) < 1e-6) == (killing < 1e-6),
                    killing);
    checks.add("i_X_domega", ixdomega, 1e-6);
    if (entry.flat_connection && *entry.flat_connection)
      checks.add("domega_flat", domega, 1e-6);
    else
      checks.add_flag("domega_nonflat", domega > 0.1, domega);

    // flow lines of X are geodesics: residual of the geodesic equation
    double flow = 0.0;
    for (int s = 0; s < std::min(n, 20); ++s) {
      const Vec3 p = point_sample(entry, seed + s);
      const Vec3 x = invariant_vector_field(entry, p);
      Mat3 dx;
      for (int i = 0; i < 3; ++i) {
        const Vec3 e = Vec3::Unit(i);
        dx.col(i) = (invariant_vector_field(entry, p + kFdStep * e) -
                     invariant_vector_field(entry, p - kFdStep * e)) /
                    (2.0 * kFdStep);
      }
      const Vec3 nabla_xx =
          dx * x + christoffel(*entry.metric, p).contract(x, x);
      flow = std::max(flow, inf_norm(Vec(nabla_xx)));
    }
    checks.add("x_flow_geodesic", flow, 1e-5);
  }

  if (entry.isotropy_dim == 3 && entry.has_chart()) {
    const double expected = static_cast<double>(base_curvature_sign(entry.label));
    double residual = 0.0;
    for (int s = 0; s < std::min(samples, 10); ++s) {
      const Vec3 p = point_sample(entry, seed + s);
      Rng rng(seed + 31 * s);
      const Mat3 q = random_rotation(rng, 3);
      residual = std::max(
          residual, std::abs(sectional_curvature(*entry.metric, p, q.col(0),
                                                 q.col(1)) -
                             expected));
    }
    checks.add("constant_curvature", residual, 1e-4);
  }

  if (entry.has_chart()) {
    // geodesic energy conservation from the base point
    const Vec3 p = entry.base_point;
    Vec3 v = entry.isotropy_dim == 1 ? invariant_vector_field(entry, p)
                                     : Vec3(1, 0, 0);
    v /= metric_norm(*entry.metric, p, v);
    const auto path = geodesic_integrate(*entry.metric, p, v, 1.0, 1000);
    double drift = 0.0;
    // recompute the velocity along the path by differencing positions
    for (std::size_t i = 100; i < path.size(); i += 100) {
      const Vec3 vel = (path[i] - path[i - 1]) * 1000.0;
      drift = std::max(drift,
                       std::abs(metric_norm(*entry.metric,
                                            0.5 * (path[i] + path[i - 1]), vel) -
                                1.0));
    }
    checks.add("geodesic_energy_drift", drift, 1e-4);
  }

  if (entry.group_algebra) {
    const StructureConstants& sc = *entry.group_algebra;
    checks.add("group_algebra_jacobi", jacobi_residual(sc), lie_tolerance(sc));
    const Mat dw = connection_curvature_algebraic(sc, 0);
    checks.add_flag("algebraic_domega_e1e2", dw(0, 1) == -1.0, dw(0, 1));
    double ix = 0.0;
    for (int j = 1; j < dw.cols(); ++j) ix = std::max(ix, std::abs(dw(2, j)));
    checks.add("algebraic_i_X_domega_isotropy_row", ix, 0.0);
  }

  Json report;
  report["command"] = "verify";
  report["inputs"] =
      Json{{"entry", to_string(entry.label)}, {"samples", samples}};
  report["seed"] = seed;
  report["tolerances"] = Json{{"invariance", 1e-6},
                              {"composition", 1e-9},
                              {"divergence", 1e-5},
                              {"killing_zero", 1e-6},
                              {"domega_flat", 1e-6},
                              {"domega_nonflat_min", 0.1}};
  report["results"] = checks.checks;
  report["pass"] = checks.pass;
  return report;
}

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"3-dimensional geometry classifier and verifier"};
  app.require_subcommand(1);

  std::string file, cocycle_file, label_str, point_str = "0,0,0",
                                             dir_str = "1,0,0", spec_file;
  int samples = 100, seed = 0, steps = 1000;
  double time = 1.0;

  CLI::App* classify_algebra_cmd =
      app.add_subcommand("classify-algebra",
                         "classify 3-dimensional structure constants");
  classify_algebra_cmd->add_option("file", file, "structure constants JSON")
      ->required();

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "classify a geometry spec");
  classify_cmd->add_option("--spec", spec_file, "geometry spec JSON")
      ->required();

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "catalog access");
  CLI::App* catalog_list = catalog_cmd->add_subcommand("list", "list labels");
  CLI::App* catalog_show =
      catalog_cmd->add_subcommand("show", "show one entry");
  catalog_show->add_option("label", label_str, "geometry label")->required();
  catalog_cmd->require_subcommand(1);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the invariant checks for an entry");
  verify_cmd->add_option("label", label_str, "geometry label")->required();
  verify_cmd->add_option("--samples", samples, "sample count");
  verify_cmd->add_option("--seed", seed, "random seed");

  CLI::App* cohomology_cmd = app.add_subcommand("cohomology", "cohomology");
  CLI::App* h2_cmd = cohomology_cmd->add_subcommand("h2", "second cohomology");
  h2_cmd->add_option("file", file, "structure constants JSON")->required();
  cohomology_cmd->require_subcommand(1);

  CLI::App* extend_cmd =
      app.add_subcommand("extend", "central extension by a cocycle");
  extend_cmd->add_option("file", file, "structure constants JSON")->required();
  extend_cmd->add_option("--cocycle", cocycle_file, "cocycle JSON")
      ->required();

  CLI::App* curvature_cmd =
      app.add_subcommand("curvature", "sectional curvatures at a point");
  curvature_cmd->add_option("label", label_str, "geometry label")->required();
  curvature_cmd->add_option("--point", point_str, "chart point x,y,z");

  CLI::App* geodesic_cmd =
      app.add_subcommand("geodesic", "integrate a geodesic");
  geodesic_cmd->add_option("label", label_str, "geometry label")->required();
  geodesic_cmd->add_option("--point", point_str, "start point x,y,z");
  geodesic_cmd->add_option("--dir", dir_str, "start direction x,y,z");
  geodesic_cmd->add_option("--time", time, "integration time");
  geodesic_cmd->add_option("--steps", steps, "step count");

  std::vector<const char*> argv;
  argv.push_back("geom3");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*classify_algebra_cmd) {
      const StructureConstants sc = sc_from_json(detail::load_json_file(file));
      out << to_json(classify_algebra(sc)).dump(2) << "\n";
      return kExitPass;
    }

    if (*classify_cmd) {
      const GeometrySpec spec =
          spec_from_json(detail::load_json_file(spec_file));
      const Classification c = classify_geometry(spec);
      out << to_json(c).dump(2) << "\n";
      return kExitPass;
    }

    if (*catalog_cmd) {
      if (*catalog_list) {
        Json labels = Json::array();
        for (GeometryLabel l : list_geometries()) labels.push_back(to_string(l));
        out << labels.dump(2) << "\n";
        return kExitPass;
      }
      if (*catalog_show) {
        const auto label = label_from_string(label_str);
        if (!label || *label == GeometryLabel::LieGroup)
          throw InvalidArgumentError("unknown catalog label: " + label_str);
        out << catalog_descriptor(catalog_entry(*label)).dump(2) << "\n";
        return kExitPass;
      }
    }

    if (*verify_cmd) {
      const auto label = label_from_string(label_str);
      if (!label || *label == GeometryLabel::LieGroup)
        throw InvalidArgumentError("unknown catalog label: " + label_str);
      const Json report = run_verify(catalog_entry(*label), samples, seed);
      out << report.dump(2) << "\n";
      return report.at("pass").get<bool>() ? kExitPass : kExitFail;
    }

    if (*cohomology_cmd && *h2_cmd) {
      const StructureConstants sc = sc_from_json(detail::load_json_file(file));
      require_lie_algebra(sc);
      out << to_json(h2(sc)).dump(2) << "\n";
      return kExitPass;
    }

    if (*extend_cmd) {
      const StructureConstants sc = sc_from_json(detail::load_json_file(file));
      const TwoCocycle w =
          cocycle_from_json(detail::load_json_file(cocycle_file));
      out << to_json(central_extension(sc, w)).dump(2) << "\n";
      return kExitPass;
    }

    if (*curvature_cmd) {
      const auto label = label_from_string(label_str);
      if (!label)
        throw InvalidArgumentError("unknown catalog label: " + label_str);
      const CatalogEntry& entry = catalog_entry(*label);
      if (!entry.has_chart())
        throw InvalidArgumentError(std::string(to_string(*label)) +
                                   " has no chart");
      const Vec3 p = detail::parse_triple(point_str);
      Json samples_json = Json::array();
      double mean = 0.0;
      std::vector<double> ks;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          const double k = sectional_curvature(*entry.metric, p,
                                               Vec3::Unit(i), Vec3::Unit(j));
          ks.push_back(k);
          mean += k;
          samples_json.push_back(k);
        }
      mean /= static_cast<double>(ks.size());
      double spread = 0.0;
      for (double k : ks) spread = std::max(spread, std::abs(k - mean));
      Json report;
      report["command"] = "curvature";
      report["entry"] = to_string(*label);
      report["quantity"] = "sectional_curvature(coordinate planes)";
      report["point"] = {p(0), p(1), p(2)};
      report["samples"] = samples_json;
      report["mean"] = mean;
      report["max_residual"] = spread;
      report["pass"] = true;
      out << report.dump(2) << "\n";
      return kExitPass;
    }

    if (*geodesic_cmd) {
      const auto label = label_from_string(label_str);
      if (!label)
        throw InvalidArgumentError("unknown catalog label: " + label_str);
      const CatalogEntry& entry = catalog_entry(*label);
      if (!entry.has_chart())
        throw InvalidArgumentError(std::string(to_string(*label)) +
                                   " has no chart");
      const Vec3 p = detail::parse_triple(point_str);
      const Vec3 v = detail::parse_triple(dir_str);
      const auto path = geodesic_integrate(*entry.metric, p, v, time, steps);
      const double v0 = metric_norm(*entry.metric, p, v);
      double drift = 0.0;
      const double dt = time / steps;
      for (std::size_t i = 1; i < path.size(); ++i) {
        const Vec3 vel = (path[i] - path[i - 1]) / dt;
        drift = std::max(
            drift, std::abs(metric_norm(*entry.metric,
                                        0.5 * (path[i] + path[i - 1]), vel) -
                            v0));
      }
      Json report;
      report["command"] = "geodesic";
      report["entry"] = to_string(*label);
      report["quantity"] = "geodesic_energy_drift";
      report["samples"] = static_cast<int>(path.size());
      report["endpoint"] = {path.back()(0), path.back()(1), path.back()(2)};
      report["max_residual"] = drift;
      report["pass"] = drift < 1e-4;
      out << report.dump(2) << "\n";
      return report["pass"].get<bool>() ? kExitPass : kExitFail;
    }
  } catch (const Json::exception& e) {
    err << "JSON error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "no subcommand\n";
  return kExitUsage;
}

}  // namespace geom3::cli
