#include "mlab/verify.hpp"

#include "mlab/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace mlab {

const std::map<std::string, double>& Tolerances::defaults() {
  static const std::map<std::string, double> table = {
      {"flat", 1e-8},         {"cross_route", 1e-7}, {"eq23", 1e-10},       {"euler", 1e-10},
      {"homogeneity", 1e-10}, {"abs_homog", 1e-9},   {"mean_cartan", 1e-10}, {"g_variation", 1e-10},
      {"relation", 1e-6},     {"constant_K", 1e-6},  {"umbilic", 1e-6},      {"mean_curvature", 1e-6},
      {"normal_part", 1e-10}, {"gradient", 1e-6},    {"obata", 1e-6},        {"parallel", 1e-10},
      {"alignment", 1e-9},
  };
  return table;
}

Tolerances::Tolerances() : values_(defaults()) {}

double Tolerances::operator[](std::string_view name) const {
  const auto it = values_.find(std::string(name));
  if (it == values_.end()) throw Error(ErrorKind::InvalidSpec, "unknown tolerance '" + std::string(name) + "'");
  return it->second;
}

void Tolerances::set(const std::string& name, double value) {
  const auto it = values_.find(name);
  if (it == values_.end()) throw Error(ErrorKind::InvalidSpec, "unknown tolerance '" + name + "'");
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidSpec, "tolerance '" + name + "' must be a positive finite number");
  }
  it->second = value;
}

nlohmann::json to_json(const SamplePlan& plan) {
  return {{"seed", plan.seed}, {"count", plan.count}, {"r_min", plan.r_min}, {"r_max", plan.r_max}};
}

std::vector<std::pair<Vector, Vector>> frame_planes(int tangent_dim, int minimum) {
  if (tangent_dim < 2) throw Error(ErrorKind::DimensionTooSmall, "a tangent plane needs two directions");
  std::vector<std::pair<Vector, Vector>> planes;
  for (int a = 0; a < tangent_dim; ++a)
    for (int b = a + 1; b < tangent_dim; ++b) planes.emplace_back(Vector::Unit(tangent_dim, a), Vector::Unit(tangent_dim, b));
  for (int k = 1; static_cast<int>(planes.size()) < minimum; ++k) {
    const double t = k * std::numbers::pi / 5.0;
    Vector u = Vector::Zero(tangent_dim);
    Vector v = Vector::Zero(tangent_dim);
    u[0] = std::cos(t);
    u[1] = std::sin(t);
    v[0] = -std::sin(t);
    v[1] = std::cos(t);
    planes.emplace_back(std::move(u), std::move(v));
  }
  return planes;
}

namespace {

using detail::Outcome;
using detail::parallel_map;

TheoremReport start(std::string suite, const NormSpec& spec, const SamplePlan& plan) {
  plan.validate();
  TheoremReport r;
  r.suite = std::move(suite);
  r.spec = to_json(spec);
  r.plan = to_json(plan);
  return r;
}

std::string label(std::string_view base, double r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_r=%g", std::string(base).c_str(), r);
  return buf;
}

// Moves per-point failures into the report; returns the successful results
// with their sample indices.
template <typename T>
std::vector<std::pair<int, const T*>> harvest(TheoremReport& report, const std::vector<Outcome<T>>& outcomes,
                                              std::string_view prefix = "sample") {
  std::vector<std::pair<int, const T*>> ok;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].value) {
      ok.emplace_back(static_cast<int>(i), &*outcomes[i].value);
    } else {
      ++report.failed_points;
      report.errors.push_back(std::string(prefix) + " " + std::to_string(i) + ": " + outcomes[i].error);
    }
  }
  return ok;
}

void finish(TheoremReport& report, int samples) {
  report.samples_used = samples;
  report.add(Check::upper("failed_points", report.failed_points, 0.5));
}

void record(TheoremReport& report, int index, const Vector& y, std::string name, double value) {
  report.samples.push_back({index, y, std::move(name), value});
}

// max over entries of (max - min) across the samples.
double g_spread(const std::vector<const Matrix*>& metrics) {
  if (metrics.empty()) return 0.0;
  Matrix lo = *metrics.front();
  Matrix hi = lo;
  for (const Matrix* g : metrics) {
    lo = lo.cwiseMin(*g);
    hi = hi.cwiseMax(*g);
  }
  return (hi - lo).maxCoeff();
}

}  // namespace

TheoremReport axioms_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg) {
  TheoremReport report = start("axioms", spec, plan);
  const auto points = plan.points(spec.dim);
  struct Row {
    double f;
    AxiomReport ax;
  };
  const auto outcomes = parallel_map<Row>(points.size(), cfg.threads, [&](std::size_t i) {
    const std::span<const Vector> one(&points[i], 1);
    return Row{evaluate(spec, points[i]), check_axioms(spec, one)};
  });
  const auto rows = harvest(report, outcomes);

  double min_f = std::numeric_limits<double>::infinity();
  double homog = 0.0;
  double abs_homog = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& [i, row] : rows) {
    min_f = std::min(min_f, row->f);
    homog = std::max(homog, row->ax.homogeneity_residual);
    abs_homog = std::max(abs_homog, row->ax.abs_homogeneity_residual);
    min_eig = std::min(min_eig, row->ax.min_metric_eigenvalue);
    record(report, i, points[static_cast<std::size_t>(i)], "min_metric_eigenvalue", row->ax.min_metric_eigenvalue);
  }
  if (rows.empty()) min_f = min_eig = 0.0;

  report.add(Check::lower("positivity_min_F", min_f, 0.0));
  report.add(Check::upper("positive_homogeneity", homog, cfg.tol["homogeneity"]));
  report.add(Check::lower("min_metric_eigenvalue", min_eig, 0.0));
  const Check& ah = report.add(Check::upper("absolute_homogeneity", abs_homog, cfg.tol["abs_homog"], false));
  report.classification = ah.holds ? "absolutely homogeneous" : "positively homogeneous only";
  finish(report, static_cast<int>(rows.size()));
  return report;
}

TheoremReport identities_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg) {
  TheoremReport report = start("identities", spec, plan);
  const auto points = plan.points(spec.dim);
  struct Row {
    double eq23, c_y, gamma_y, g_yy, g_scale;
  };
  const int n = spec.dim;
  const auto outcomes = parallel_map<Row>(points.size(), cfg.threads, [&](std::size_t idx) {
    const Vector& y = points[idx];
    const PointGeometry geo = PointGeometry::at(spec, y, 3);
    const Tensor3& C = geo.cartan().lower;
    const Tensor3& G = geo.christoffel();
    Row row{};
    row.eq23 = geo.christoffel_cartan_residual() / (1.0 + G.max_abs());
    double cy = 0.0, gy = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double a = 0.0, b = 0.0;
        for (int k = 0; k < n; ++k) {
          a += C(i, j, k) * y[k];
          b += G(i, k, j) * y[k];
        }
        cy = std::max(cy, std::abs(a));
        gy = std::max(gy, std::abs(b));
      }
    row.c_y = cy / (1.0 + C.max_abs());
    row.gamma_y = gy / (1.0 + G.max_abs());
    const Matrix& g = geo.metric().g;
    const double f2 = geo.jet().value;
    row.g_yy = std::abs(y.dot(g * y) - f2) / f2;
    const Matrix g2 = 0.5 * jet_of_F2(spec, 2.0 * y, 2).hessian;
    row.g_scale = (g2 - g).cwiseAbs().maxCoeff() / (1.0 + g.cwiseAbs().maxCoeff());
    return row;
  });
  const auto rows = harvest(report, outcomes);
  Row worst{};
  for (const auto& [i, row] : rows) {
    worst.eq23 = std::max(worst.eq23, row->eq23);
    worst.c_y = std::max(worst.c_y, row->c_y);
    worst.gamma_y = std::max(worst.gamma_y, row->gamma_y);
    worst.g_yy = std::max(worst.g_yy, row->g_yy);
    worst.g_scale = std::max(worst.g_scale, row->g_scale);
    record(report, i, points[static_cast<std::size_t>(i)], "eq23", row->eq23);
  }
  report.add(Check::upper("christoffel_cartan", worst.eq23, cfg.tol["eq23"]));
  report.add(Check::upper("euler_C_y", worst.c_y, cfg.tol["euler"]));
  report.add(Check::upper("euler_gamma_y", worst.gamma_y, cfg.tol["euler"]));
  report.add(Check::upper("euler_g_yy", worst.g_yy, cfg.tol["euler"]));
  report.add(Check::upper("g_degree_zero", worst.g_scale, cfg.tol["euler"]));
  finish(report, static_cast<int>(rows.size()));
  return report;
}

TheoremReport flatness_scan(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg) {
  TheoremReport report = start("flatness", spec, plan);
  const auto points = plan.points(spec.dim);
  struct Row {
    double cartan, connection, gap;
  };
  const auto outcomes = parallel_map<Row>(points.size(), cfg.threads, [&](std::size_t i) {
    const PointGeometry geo = PointGeometry::at(spec, points[i], 4);
    const CurvatureAtPoint rc = geo.curvature_cartan();
    const CurvatureAtPoint rs = geo.curvature_connection();
    const double sup = rc.R.max_abs();
    return Row{sup, rs.R.max_abs(), max_abs_diff(rc.R, rs.R) / (1.0 + sup)};
  });
  const auto rows = harvest(report, outcomes);
  double sup_c = 0.0, sup_s = 0.0, gap = 0.0;
  for (const auto& [i, row] : rows) {
    sup_c = std::max(sup_c, row->cartan);
    sup_s = std::max(sup_s, row->connection);
    gap = std::max(gap, row->gap);
    record(report, i, points[static_cast<std::size_t>(i)], "R_sup", row->cartan);
  }
  const double flat = cfg.tol["flat"];
  report.add(Check::upper("sup_R_cartan", sup_c, flat, false));
  report.add(Check::upper("sup_R_connection", sup_s, flat, false));
  report.add(Check::upper("cross_route_gap", gap, cfg.tol["cross_route"]));
  report.classification = (sup_c < flat && sup_s < flat) ? "flat" : "not flat";
  finish(report, static_cast<int>(rows.size()));
  return report;
}

TheoremReport theorem3_suite(const NormSpec& spec, const std::vector<double>& r_list, const SamplePlan& plan,
                             const SuiteConfig& cfg) {
  if (spec.dim < 3) throw Error(ErrorKind::DimensionTooSmall, "theorem3 sectional checks need n >= 3");
  if (r_list.empty()) throw Error(ErrorKind::InvalidSpec, "theorem3 needs at least one radius");
  for (double r : r_list)
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidSpec, "theorem3 radii must be positive");
  TheoremReport report = start("theorem3", spec, plan);
  report.plan["r_list"] = r_list;
  const double flat = cfg.tol["flat"];
  const double tol_K = cfg.tol["constant_K"];

  const auto points = plan.points(spec.dim);
  const auto flat_out = parallel_map<double>(points.size(), cfg.threads, [&](std::size_t i) {
    return PointGeometry::at(spec, points[i], 3).curvature_cartan().R.max_abs();
  });
  double sup_R = 0.0;
  for (const auto& [i, v] : harvest(report, flat_out, "flatness sample")) sup_R = std::max(sup_R, *v);
  const Check& a = report.add(Check::upper("a_flatness_sup", sup_R, flat, false));
  const bool a_holds = a.holds;

  const auto directions = plan.directions(spec.dim);
  const auto planes = frame_planes(spec.dim - 1);
  bool b_holds = true;
  int used = 0;
  for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
    const double r = r_list[ri];
    const SurfaceSpec surface = SurfaceSpec::level_set(r);
    struct Row {
      Vector y;
      double deviation, relation;
    };
    const auto outcomes = parallel_map<Row>(directions.size(), cfg.threads, [&](std::size_t i) {
      const Vector y = project_to_surface(surface, spec, directions[i]);
      const SurfacePoint sp = analyze_point(surface, spec, y);
      Row row{y, 0.0, 0.0};
      for (const auto& [u, v] : planes) {
        const InducedSectional k = induced_sectional(sp, u, v);
        row.deviation = std::max(row.deviation, std::abs(k.surface - 1.0 / (r * r)));
        row.relation = std::max(row.relation, std::abs(k.surface - k.ambient - 1.0 / (r * r)));
      }
      return row;
    });
    const auto rows = harvest(report, outcomes, label("surface sample", r));
    double dev = 0.0, rel = 0.0;
    for (const auto& [i, row] : rows) {
      dev = std::max(dev, row->deviation);
      rel = std::max(rel, row->relation);
      record(report, i, row->y, label("relation", r), row->relation);
    }
    used += static_cast<int>(rows.size());
    const Check& b = report.add(Check::upper(label("b_K_deviation", r), dev, tol_K, false));
    b_holds = b_holds && b.holds;
    if (ri == 0) report.add(Check::upper(label("c_K_deviation_r0", r), dev, tol_K, false));
    report.add(Check::upper(label("relation", r), rel, cfg.tol["relation"]));
  }
  Check eq = Check::upper("equivalence_a_iff_b", a_holds == b_holds ? 0.0 : 1.0, 0.5);
  eq.note = std::string("flat: ") + (a_holds ? "yes" : "no") + ", level sets of curvature 1/r^2: " + (b_holds ? "yes" : "no");
  report.add(std::move(eq));
  report.classification = a_holds ? "flat" : "not flat";
  finish(report, used);
  return report;
}

TheoremReport deicke_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg) {
  TheoremReport report = start("deicke", spec, plan);
  const auto points = plan.points(spec.dim);
  struct Row {
    double A;
    Matrix g;
  };
  const auto outcomes = parallel_map<Row>(points.size(), cfg.threads, [&](std::size_t i) {
    const PointGeometry geo = PointGeometry::at(spec, points[i], 3);
    return Row{geo.cartan().mean.cwiseAbs().maxCoeff(), geo.metric().g};
  });
  const auto rows = harvest(report, outcomes);
  double sup_A = 0.0;
  std::vector<const Matrix*> metrics;
  for (const auto& [i, row] : rows) {
    sup_A = std::max(sup_A, row->A);
    metrics.push_back(&row->g);
    record(report, i, points[static_cast<std::size_t>(i)], "mean_cartan", row->A);
  }
  const double spread = g_spread(metrics);
  const Check& a = report.add(Check::upper("sup_mean_cartan", sup_A, cfg.tol["mean_cartan"], false));
  const bool antecedent = a.holds;
  report.add(Check::upper("g_variation", spread, cfg.tol["g_variation"], false));
  report.add(Check::implication("vanishing_A_implies_constant_g", antecedent, spread, cfg.tol["g_variation"]));
  if (!antecedent) report.flags.push_back("hypothesis failed: vanishing mean Cartan torsion");
  report.classification = spread < cfg.tol["g_variation"] ? "riemannian (constant g)" : "non-riemannian";
  finish(report, static_cast<int>(rows.size()));
  return report;
}

TheoremReport brickell_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg) {
  if (spec.dim < 3) throw Error(ErrorKind::DimensionTooSmall, "brickell's theorem needs n >= 3");
  TheoremReport report = start("brickell", spec, plan);
  const auto points = plan.points(spec.dim);
  struct Row {
    double abs_homog, R;
    Matrix g;
  };
  const auto outcomes = parallel_map<Row>(points.size(), cfg.threads, [&](std::size_t i) {
    const Vector& y = points[i];
    const PointGeometry geo = PointGeometry::at(spec, y, 3);
    const double f = geo.norm_value();
    return Row{std::abs(evaluate(spec, -y) - f) / f, geo.curvature_cartan().R.max_abs(), geo.metric().g};
  });
  const auto rows = harvest(report, outcomes);
  double abs_h = 0.0, sup_R = 0.0;
  std::vector<const Matrix*> metrics;
  for (const auto& [i, row] : rows) {
    abs_h = std::max(abs_h, row->abs_homog);
    sup_R = std::max(sup_R, row->R);
    metrics.push_back(&row->g);
    record(report, i, points[static_cast<std::size_t>(i)], "R_sup", row->R);
  }
  const double spread = g_spread(metrics);
  const bool h1 = report.add(Check::upper("absolute_homogeneity", abs_h, cfg.tol["abs_homog"], false)).holds;
  const bool h2 = report.add(Check::upper("flatness_sup", sup_R, cfg.tol["flat"], false)).holds;
  report.add(Check::upper("g_variation", spread, cfg.tol["g_variation"], false));
  report.add(Check::implication("homogeneous_and_flat_implies_inner_product", h1 && h2, spread, cfg.tol["g_variation"]));
  if (!h1) report.flags.push_back("hypothesis failed: absolute homogeneity");
  if (!h2) report.flags.push_back("hypothesis failed: flatness");
  report.classification = spread < cfg.tol["g_variation"] ? "inner product" : "not an inner product";
  finish(report, static_cast<int>(rows.size()));
  return report;
}

TheoremReport parallel_vector_suite(const NormSpec& spec, const Vector& b, const SamplePlan& plan,
                                    const SuiteConfig& cfg) {
  if (b.size() != spec.dim) throw Error(ErrorKind::DimensionMismatch, "b must have dim entries");
  if (!(b.norm() > 0.0)) throw Error(ErrorKind::ZeroVector, "b must be non-zero");
  if (spec.dim < 3) throw Error(ErrorKind::DimensionTooSmall, "the parallel-vector theorem needs n >= 3");
  TheoremReport report = start("parallel", spec, plan);
  report.plan["b"] = std::vector<double>(b.data(), b.data() + b.size());
  const int n = spec.dim;
  const auto points = plan.points(n);
  struct Row {
    double parallel, abs_homog;
    Matrix g;
  };
  const auto outcomes = parallel_map<Row>(points.size(), cfg.threads, [&](std::size_t idx) {
    const Vector& y = points[idx];
    const PointGeometry geo = PointGeometry::at(spec, y, 3);
    const Tensor3& G = geo.christoffel();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += G(i, j, k) * b[j];
        worst = std::max(worst, std::abs(acc));
      }
    const double f = geo.norm_value();
    return Row{worst, std::abs(evaluate(spec, -y) - f) / f, geo.metric().g};
  });
  const auto rows = harvest(report, outcomes);
  double par = 0.0, abs_h = 0.0;
  std::vector<const Matrix*> metrics;
  for (const auto& [i, row] : rows) {
    par = std::max(par, row->parallel);
    abs_h = std::max(abs_h, row->abs_homog);
    metrics.push_back(&row->g);
    record(report, i, points[static_cast<std::size_t>(i)], "parallelism", row->parallel);
  }
  const double spread = g_spread(metrics);
  const bool h1 = report.add(Check::upper("parallelism", par, cfg.tol["parallel"], false)).holds;
  const bool h2 = report.add(Check::upper("absolute_homogeneity", abs_h, cfg.tol["abs_homog"], false)).holds;
  report.add(Check::upper("g_variation", spread, cfg.tol["g_variation"], false));
  report.add(Check::implication("parallel_b_implies_inner_product", h1 && h2, spread, cfg.tol["g_variation"]));
  if (!h1) report.flags.push_back("hypothesis failed: parallel b");
  if (!h2) report.flags.push_back("hypothesis failed: absolute homogeneity");

  // f = ĝ(y, b) on the unit indicatrix.
  const SurfaceSpec sphere = SurfaceSpec::level_set(1.0);
  const MomentFunction f = MomentFunction::b_moment(b);
  const auto surface_points = plan.directions(n);
  struct SurfaceRow {
    Vector y;
    double obata, value;
  };
  const auto s_out = parallel_map<SurfaceRow>(surface_points.size(), cfg.threads, [&](std::size_t i) {
    const Vector y = project_to_surface(sphere, spec, surface_points[i]);
    const FrameAtPoint frame = tangent_frame(sphere, spec, y);
    return SurfaceRow{y, obata_residual(sphere, spec, frame, f, 1.0), moment_value(sphere, spec, frame, f)};
  });
  const auto s_rows = harvest(report, s_out, "S(1) sample");
  double obata = 0.0;
  double f_lo = std::numeric_limits<double>::infinity(), f_hi = -f_lo;
  for (const auto& [i, row] : s_rows) {
    obata = std::max(obata, row->obata);
    f_lo = std::min(f_lo, row->value);
    f_hi = std::max(f_hi, row->value);
    record(report, i, row->y, "obata_S1", row->obata);
  }
  const double f_var = s_rows.empty() ? 0.0 : f_hi - f_lo;
  Check ob = Check::upper("obata_S1", obata, cfg.tol["obata"], h1);
  if (!h1) ob.note = "measured only: b is not parallel";
  report.add(std::move(ob));
  report.add(Check::lower("moment_variation_S1", f_var, cfg.tol["alignment"], false));
  finish(report, static_cast<int>(rows.size() + s_rows.size()));
  return report;
}

TheoremReport theorem1_suite(const NormSpec& spec, const SurfaceSpec& surface, const SamplePlan& plan,
                             const SuiteConfig& cfg) {
  surface.validate(spec);
  TheoremReport report = start("theorem1", spec, plan);
  report.plan["surface"] = to_json(surface);
  const bool model = spec.family == Family::euclidean && surface.kind == SurfaceKind::euclid_sphere;
  const bool level = surface.kind == SurfaceKind::level_set;

  const auto directions = plan.directions(spec.dim);
  const Vector centre = surface.kind == SurfaceKind::level_set ? Vector(Vector::Zero(spec.dim)) : surface.center;
  struct Row {
    FrameAtPoint frame;
    double umbilic, H, normal_part, gap;
    bool closed;
  };
  const auto outcomes = parallel_map<Row>(directions.size(), cfg.threads, [&](std::size_t i) {
    const Vector y = project_to_surface(surface, spec, centre + directions[i]);
    const SurfacePoint sp = analyze_point(surface, spec, y);
    const SurfaceGradient grad = surface_gradient(surface, spec, sp.frame, MomentFunction::normal_moment());
    return Row{sp.frame, sp.shape.umbilicity_deviation / (1.0 + std::abs(sp.shape.H)), sp.shape.H,
               ambient_curvature_normal_part(surface, spec, sp.frame), grad.route_gap, grad.closed_form};
  });
  const auto rows = harvest(report, outcomes);

  double min_abs_H = std::numeric_limits<double>::infinity();
  for (const auto& [i, row] : rows) min_abs_H = std::min(min_abs_H, std::abs(row->H));
  if (!rows.empty() && !(min_abs_H >= 1e-6)) {
    throw Error(ErrorKind::NotProper, "sampled mean curvature reaches " + std::to_string(min_abs_H) + " < 1e-6");
  }

  const auto obata_out = parallel_map<double>(rows.size(), cfg.threads, [&](std::size_t k) {
    const Row& row = *rows[k].second;
    return obata_residual(surface, spec, row.frame, MomentFunction::normal_moment(), row.H * row.H);
  });

  double umb = 0.0, normal = 0.0, gap = 0.0, obata = 0.0;
  double H_lo = std::numeric_limits<double>::infinity(), H_hi = -H_lo;
  int closed = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& [i, row] = rows[k];
    umb = std::max(umb, row->umbilic);
    normal = std::max(normal, row->normal_part);
    H_lo = std::min(H_lo, row->H);
    H_hi = std::max(H_hi, row->H);
    if (row->closed) {
      gap = std::max(gap, row->gap);
      ++closed;
    }
    record(report, i, row->frame.point, "H", row->H);
    if (obata_out[k].value) {
      obata = std::max(obata, *obata_out[k].value);
      record(report, i, row->frame.point, "obata", *obata_out[k].value);
    } else {
      ++report.failed_points;
      report.errors.push_back("sample " + std::to_string(i) + " (obata): " + obata_out[k].error);
    }
  }
  const double H_var = rows.empty() ? 0.0 : H_hi - H_lo;

  report.add(Check::upper("umbilicity", umb, cfg.tol["umbilic"], model));
  report.add(Check::upper("normal_curvature_part", normal, cfg.tol["normal_part"], model));
  report.add(Check::upper("H_variation", H_var, cfg.tol["mean_curvature"], model));
  Check g = Check::upper("gradient_gap", closed > 0 ? gap : std::numeric_limits<double>::quiet_NaN(), cfg.tol["gradient"],
                         model);
  if (closed == 0) {
    g.holds = false;
    g.note = "closed form unavailable: surface not umbilical";
  } else if (closed < static_cast<int>(rows.size())) {
    g.note = "closed form available at " + std::to_string(closed) + " of " + std::to_string(rows.size()) + " points";
  }
  report.add(std::move(g));
  report.add(Check::upper("obata", obata, cfg.tol["obata"], model));

  std::vector<Vector> pts;
  for (const auto& [i, row] : rows) pts.push_back(row->frame.point);
  const ConverseCheck rc = remark_converse_check(surface, spec, pts, cfg.tol["alignment"]);
  report.add(Check::upper("converse_misalignment", rc.misalignment, cfg.tol["alignment"], false));
  report.add(Check::upper("converse_F_variation", rc.f_variation, cfg.tol["alignment"] * surface.radius, false));
  Check conv = Check::implication("remark_converse", rc.umbilicity < 1e-6 && rc.misalignment < cfg.tol["alignment"],
                                  rc.f_variation, cfg.tol["alignment"] * surface.radius);
  conv.asserting = level;
  report.add(std::move(conv));

  if (level) report.flags.push_back("hypothesis failed: surface is a level set");
  else if (rc.f_variation < cfg.tol["alignment"] * surface.radius) report.flags.push_back("surface coincides with a level set");
  if (!model) report.flags.push_back("measurement only: not the euclidean model case");
  finish(report, static_cast<int>(rows.size()));
  return report;
}

}  // namespace mlab
