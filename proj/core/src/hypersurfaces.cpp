#include "mlab/hypersurfaces.hpp"

#include "mlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mlab {

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::level_set: return "level_set";
    case SurfaceKind::euclid_sphere: return "euclid_sphere";
    case SurfaceKind::translated_indicatrix: return "translated_indicatrix";
  }
  return "unknown";
}

SurfaceSpec SurfaceSpec::level_set(double r) { return {SurfaceKind::level_set, r, Vector()}; }

SurfaceSpec SurfaceSpec::euclid_sphere(Vector c, double rho) {
  return {SurfaceKind::euclid_sphere, rho, std::move(c)};
}

SurfaceSpec SurfaceSpec::translated_indicatrix(Vector c, double r) {
  return {SurfaceKind::translated_indicatrix, r, std::move(c)};
}

void SurfaceSpec::validate(const NormSpec& spec) const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidSpec, why); };
  if (!(radius > 0.0) || !std::isfinite(radius)) fail("surface radius must be > 0");
  if (kind == SurfaceKind::level_set) return;
  if (center.size() != spec.dim) fail("surface centre must have dim entries");
  if (!center.allFinite()) fail("surface centre has non-finite entries");
  if (kind == SurfaceKind::euclid_sphere) {
    if (spec.family != Family::euclidean) fail("euclid_sphere requires the euclidean family");
    // Euclidean distance from the origin to the sphere is at least
    // |‖c‖_A - rho| / sqrt(lambda_max(A)).
    Eigen::SelfAdjointEigenSolver<Matrix> eig(spec.A, Eigen::EigenvaluesOnly);
    const double c_norm = std::sqrt(center.dot(spec.A * center));
    if (std::abs(c_norm - radius) / std::sqrt(eig.eigenvalues().maxCoeff()) <= kExclusionRadius) {
      fail("euclid_sphere passes through the exclusion ball around the origin");
    }
  } else if (center.norm() >= kExclusionRadius) {
    if (std::abs(evaluate(spec, -center) - radius) <= 1e-6 * radius) {
      fail("translated_indicatrix passes through the origin");
    }
  }
}

namespace {

Vector centre_of(const SurfaceSpec& surface, int dim) {
  return surface.kind == SurfaceKind::level_set ? Vector(Vector::Zero(dim)) : surface.center;
}

double step_for(const Vector& y) { return 1e-4 * (1.0 + y.norm()); }

struct LocalMetric {
  Matrix g;
  Matrix g_inv;
};

LocalMetric local_metric(const NormSpec& spec, const Vector& p) {
  const Jet jet = jet_of_F2(spec, p, 2);
  LocalMetric m{0.5 * jet.hessian, Matrix()};
  Eigen::LLT<Matrix> llt(m.g);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "metric is not positive definite");
  m.g_inv = llt.solve(Matrix::Identity(spec.dim, spec.dim));
  return m;
}

// ĝ-unit gradient of Phi, before orientation.
Vector raw_normal(const SurfaceSpec& surface, const NormSpec& spec, const Vector& p, const Matrix& g_inv) {
  const Vector dphi = defining_gradient(surface, spec, p);
  const Vector sharp = g_inv * dphi;
  const double len2 = dphi.dot(sharp);
  if (!(len2 > 1e-24)) throw Error(ErrorKind::DegeneratePoint, "defining function has a vanishing gradient");
  return sharp / std::sqrt(len2);
}

Vector raw_normal(const SurfaceSpec& surface, const NormSpec& spec, const Vector& p) {
  return raw_normal(surface, spec, p, local_metric(spec, p).g_inv);
}

// Central difference with one Richardson level of a map t -> value(t),
// where value(t) is sampled along the projected curve through y in
// direction e.
template <typename Value, typename Eval>
Value curve_derivative(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y, const Vector& e,
                       Eval&& eval) {
  const double delta = step_for(y);
  auto central = [&](double h) -> Value {
    const Value plus = eval(project_to_surface(surface, spec, y + h * e));
    const Value minus = eval(project_to_surface(surface, spec, y - h * e));
    return (plus - minus) / (2.0 * h);
  };
  const Value coarse = central(delta);
  const Value fine = central(0.5 * delta);
  return (4.0 * fine - coarse) / 3.0;
}

// Covariant derivative along the tangent vector e of a vector field on the
// surface: derivative along the projected curve plus the Christoffel term.
template <typename Field>
Vector covariant_derivative(const SurfaceSpec& surface, const NormSpec& spec, const PointGeometry& geo,
                            const Vector& e, const Vector& field_at_y, Field&& field) {
  const Vector d = curve_derivative<Vector>(surface, spec, geo.point(), e, field);
  return d + geo.christoffel_apply(e, field_at_y);
}

Matrix shape_matrix(const SurfaceSpec& surface, const NormSpec& spec, const PointGeometry& geo,
                    const std::vector<Vector>& tangent, const Vector& normal, int sign) {
  const int m = static_cast<int>(tangent.size());
  Matrix h(m, m);
  auto field = [&](const Vector& p) -> Vector { return static_cast<double>(sign) * raw_normal(surface, spec, p); };
  for (int a = 0; a < m; ++a) {
    const Vector dnu = covariant_derivative(surface, spec, geo, tangent[static_cast<std::size_t>(a)], normal, field);
    for (int b = 0; b < m; ++b) h(a, b) = -geo.inner(dnu, tangent[static_cast<std::size_t>(b)]);
  }
  return 0.5 * (h + h.transpose());
}

struct FrameWithGeometry {
  FrameAtPoint frame;
  PointGeometry geo;
};

FrameWithGeometry build_frame(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y) {
  PointGeometry geo = PointGeometry::at(spec, y, 3);
  const int n = spec.dim;
  const Vector nu = raw_normal(surface, spec, y, geo.metric().g_inv);

  std::vector<Vector> candidates;
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Unit(n, i);
    candidates.push_back(e - geo.inner(e, nu) * nu);
  }
  // Pivoted Gram-Schmidt under ĝ: always take the candidate with the largest
  // remaining length, ties to the lowest coordinate index.
  std::vector<Vector> tangent;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int step = 0; step < n - 1; ++step) {
    int best = -1;
    double best_len = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double len = geo.norm(candidates[static_cast<std::size_t>(i)]);
      if (len > best_len) {
        best_len = len;
        best = i;
      }
    }
    if (best_len < 1e-10) throw Error(ErrorKind::FrameDegenerate, "Gram-Schmidt pivot below 1e-10");
    used[static_cast<std::size_t>(best)] = true;
    Vector e = candidates[static_cast<std::size_t>(best)] / best_len;
    // one reorthogonalisation pass against the accepted frame keeps the
    // contract at rounding level
    for (const Vector& t : tangent) e -= geo.inner(e, t) * t;
    e /= geo.norm(e);
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Vector& c = candidates[static_cast<std::size_t>(i)];
      c -= geo.inner(c, e) * e;
    }
    tangent.push_back(std::move(e));
  }

  const Matrix h_raw = shape_matrix(surface, spec, geo, tangent, nu, 1);
  const int sign = h_raw.trace() < 0.0 ? -1 : 1;

  FrameAtPoint frame;
  frame.point = y;
  frame.tangent = std::move(tangent);
  frame.normal = static_cast<double>(sign) * nu;
  frame.orientation_sign = sign;
  return {std::move(frame), std::move(geo)};
}

ShapeAtPoint shape_from(const SurfaceSpec& surface, const NormSpec& spec, const PointGeometry& geo,
                        const FrameAtPoint& frame) {
  ShapeAtPoint s;
  s.h = shape_matrix(surface, spec, geo, frame.tangent, frame.normal, frame.orientation_sign);
  const int m = static_cast<int>(s.h.rows());
  s.H = s.h.trace() / m;
  s.umbilicity_deviation = (s.h - s.H * Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
  return s;
}

Vector tangential(const PointGeometry& geo, const FrameAtPoint& frame, const Vector& w) {
  return w - geo.inner(w, frame.normal) * frame.normal;
}

double moment_at(const MomentFunction& f, const Vector& p, const Matrix& g, const Vector& nu) {
  return f.kind == MomentFunction::Kind::normal_moment ? p.dot(g * nu) : p.dot(g * f.b);
}

bool normal_closed_form_applies(const SurfaceSpec& surface, const ShapeAtPoint& shape) {
  return surface.kind == SurfaceKind::level_set || shape.umbilicity_deviation < 1e-6 * (1.0 + std::abs(shape.H));
}

SurfaceGradient gradient_with(const SurfaceSpec& surface, const NormSpec& spec, const PointGeometry& geo,
                              const FrameAtPoint& frame, const MomentFunction& f) {
  const int sign = frame.orientation_sign;
  auto value_at = [&](const Vector& p) -> double {
    const LocalMetric m = local_metric(spec, p);
    const Vector nu = static_cast<double>(sign) * raw_normal(surface, spec, p, m.g_inv);
    return moment_at(f, p, m.g, nu);
  };

  SurfaceGradient out;
  out.difference_route = Vector::Zero(spec.dim);
  for (const Vector& e : frame.tangent) {
    out.difference_route += curve_derivative<double>(surface, spec, frame.point, e, value_at) * e;
  }

  const Vector& y = frame.point;
  if (f.kind == MomentFunction::Kind::b_moment) {
    out.value = f.b - geo.inner(f.b, frame.normal) * frame.normal;
    out.closed_form = true;
  } else {
    const ShapeAtPoint shape = shape_from(surface, spec, geo, frame);
    if (normal_closed_form_applies(surface, shape)) {
      out.value = -shape.H * tangential(geo, frame, y);
      out.closed_form = true;
    }
  }
  if (out.closed_form) {
    out.route_gap = geo.norm(out.value - out.difference_route);
  } else {
    out.value = out.difference_route;
  }
  return out;
}

}  // namespace

double defining_function(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y) {
  switch (surface.kind) {
    case SurfaceKind::level_set: return evaluate(spec, y) - surface.radius;
    case SurfaceKind::euclid_sphere: {
      const Vector d = y - surface.center;
      return std::sqrt(d.dot(spec.A * d)) - surface.radius;
    }
    case SurfaceKind::translated_indicatrix: return evaluate(spec, y - surface.center) - surface.radius;
  }
  throw Error(ErrorKind::InvalidSpec, "unknown surface kind");
}

Vector defining_gradient(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y) {
  switch (surface.kind) {
    case SurfaceKind::level_set:
    case SurfaceKind::translated_indicatrix: {
      const Vector at = surface.kind == SurfaceKind::level_set ? y : Vector(y - surface.center);
      const Jet jet = jet_of_F2(spec, at, 2);
      return jet.gradient / (2.0 * std::sqrt(jet.value));
    }
    case SurfaceKind::euclid_sphere: {
      const Vector d = y - surface.center;
      const double len = std::sqrt(d.dot(spec.A * d));
      if (!(len > 0.0)) throw Error(ErrorKind::DegeneratePoint, "point at the sphere centre");
      return spec.A * d / len;
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown surface kind");
}

Vector project_to_surface(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y0) {
  const Vector c = centre_of(surface, spec.dim);
  const Vector dir = y0 - c;
  if (!(dir.norm() >= kExclusionRadius)) throw Error(ErrorKind::ProjectionFailed, "start point at the surface centre");

  // Along the ray c + s dir every catalog Phi is (radial gauge) * s - radius,
  // linear in s; a couple of Newton steps absorb the rounding of the first.
  const double gauge = defining_function(surface, spec, c + dir) + surface.radius;
  if (!(gauge > 0.0)) throw Error(ErrorKind::ProjectionFailed, "ray does not meet the surface");
  double s = surface.radius / gauge;
  const double tol = 1e-12 * (1.0 + surface.radius);
  for (int iter = 0; iter < 50; ++iter) {
    const Vector y = c + s * dir;
    const double phi = defining_function(surface, spec, y);
    if (std::abs(phi) < tol) return y;
    s -= phi / gauge;
  }
  throw Error(ErrorKind::ProjectionFailed, "root solve did not converge within 50 iterations");
}

Vector unit_normal(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y) {
  return build_frame(surface, spec, y).frame.normal;
}

FrameAtPoint tangent_frame(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y) {
  return build_frame(surface, spec, y).frame;
}

ShapeAtPoint second_fundamental_form(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame) {
  return shape_from(surface, spec, PointGeometry::at(spec, frame.point, 3), frame);
}

double induced_sectional(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame, int a, int b) {
  if (spec.dim < 3) throw Error(ErrorKind::DimensionTooSmall, "induced sectional curvature needs n >= 3");
  const int m = static_cast<int>(frame.tangent.size());
  if (a == b || a < 0 || b < 0 || a >= m || b >= m) {
    throw Error(ErrorKind::DegeneratePlane, "frame indices must be distinct and in range");
  }
  const PointGeometry geo = PointGeometry::at(spec, frame.point, 3);
  const ShapeAtPoint shape = shape_from(surface, spec, geo, frame);
  const double ambient =
      sectional(geo, frame.tangent[static_cast<std::size_t>(a)], frame.tangent[static_cast<std::size_t>(b)]);
  return ambient + shape.h(a, a) * shape.h(b, b) - shape.h(a, b) * shape.h(a, b);
}

SurfacePoint analyze_point(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y) {
  FrameWithGeometry fg = build_frame(surface, spec, y);
  ShapeAtPoint shape = shape_from(surface, spec, fg.geo, fg.frame);
  CurvatureAtPoint curvature = fg.geo.curvature_cartan();
  return {std::move(fg.frame), std::move(shape), std::move(fg.geo), std::move(curvature)};
}

InducedSectional induced_sectional(const SurfacePoint& point, const Vector& u, const Vector& v) {
  const int m = static_cast<int>(point.frame.tangent.size());
  if (u.size() != m || v.size() != m) throw Error(ErrorKind::DimensionMismatch, "plane coefficients must match the frame");
  Vector U = Vector::Zero(point.geo.dim());
  Vector V = Vector::Zero(point.geo.dim());
  for (int a = 0; a < m; ++a) {
    U += u[a] * point.frame.tangent[static_cast<std::size_t>(a)];
    V += v[a] * point.frame.tangent[static_cast<std::size_t>(a)];
  }
  const Matrix& h = point.shape.h;
  const double huu = u.dot(h * u);
  const double hvv = v.dot(h * v);
  const double huv = u.dot(h * v);
  const double gram = u.squaredNorm() * v.squaredNorm() - u.dot(v) * u.dot(v);
  InducedSectional out;
  out.ambient = sectional(point.geo, point.curvature, U, V);
  out.surface = out.ambient + (huu * hvv - huv * huv) / gram;
  return out;
}

double ambient_curvature_normal_part(const SurfaceSpec&, const NormSpec& spec, const FrameAtPoint& frame) {
  const PointGeometry geo = PointGeometry::at(spec, frame.point, 3);
  const CurvatureAtPoint curv = geo.curvature_cartan();
  double worst = 0.0;
  for (const Vector& ea : frame.tangent)
    for (const Vector& eb : frame.tangent)
      for (const Vector& ec : frame.tangent) {
        worst = std::max(worst, std::abs(geo.inner(apply_curvature(curv.R, ea, eb, ec), frame.normal)));
      }
  return worst;
}

double moment_value(const SurfaceSpec&, const NormSpec& spec, const FrameAtPoint& frame, const MomentFunction& f) {
  const LocalMetric m = local_metric(spec, frame.point);
  return moment_at(f, frame.point, m.g, frame.normal);
}

SurfaceGradient surface_gradient(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame,
                                 const MomentFunction& f) {
  return gradient_with(surface, spec, PointGeometry::at(spec, frame.point, 3), frame, f);
}

double obata_residual(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame,
                      const MomentFunction& f, double c2) {
  const PointGeometry geo = PointGeometry::at(spec, frame.point, 3);
  const SurfaceGradient grad = gradient_with(surface, spec, geo, frame, f);

  double shifted = moment_value(surface, spec, frame, f);
  if (f.kind == MomentFunction::Kind::normal_moment) {
    const ShapeAtPoint shape = shape_from(surface, spec, geo, frame);
    if (!(std::abs(shape.H) >= 1e-6)) throw Error(ErrorKind::NotProper, "mean curvature vanishes; f + 1/H undefined");
    shifted += 1.0 / shape.H;
  }

  // The gradient field at nearby surface points, computed the same way as
  // at the base point.
  auto field = [&](const Vector& p) -> Vector {
    if (f.kind == MomentFunction::Kind::b_moment && grad.closed_form) {
      const LocalMetric m = local_metric(spec, p);
      const Vector nu = raw_normal(surface, spec, p, m.g_inv);
      return f.b - f.b.dot(m.g * nu) * nu;
    }
    const FrameWithGeometry local = build_frame(surface, spec, p);
    return gradient_with(surface, spec, local.geo, local.frame, f).value;
  };

  double worst = 0.0;
  for (const Vector& e : frame.tangent) {
    const Vector d = covariant_derivative(surface, spec, geo, e, grad.value, field);
    const Vector residual = tangential(geo, frame, d) + c2 * shifted * e;
    worst = std::max(worst, geo.norm(residual));
  }
  return worst;
}

ConverseCheck remark_converse_check(const SurfaceSpec& surface, const NormSpec& spec, std::span<const Vector> points,
                                    double tol) {
  ConverseCheck out;
  double f_min = std::numeric_limits<double>::infinity();
  double f_max = -f_min;
  for (const Vector& y : points) {
    const FrameWithGeometry fg = build_frame(surface, spec, y);
    const double F = fg.geo.norm_value();
    const Vector radial = y / F;
    const double mis = std::min(fg.geo.norm(fg.frame.normal - radial), fg.geo.norm(fg.frame.normal + radial));
    out.misalignment = std::max(out.misalignment, mis);
    const ShapeAtPoint shape = shape_from(surface, spec, fg.geo, fg.frame);
    out.umbilicity = std::max(out.umbilicity, shape.umbilicity_deviation / (1.0 + std::abs(shape.H)));
    f_min = std::min(f_min, F);
    f_max = std::max(f_max, F);
  }
  out.f_variation = points.empty() ? 0.0 : f_max - f_min;
  const bool umbilical = out.umbilicity < 1e-6;
  const bool aligned = out.misalignment < tol;
  out.contract_holds = !(umbilical && aligned) || out.f_variation < tol * surface.radius;
  return out;
}

std::vector<Vector> sample_surface(const SurfaceSpec& surface, const NormSpec& spec, const SamplePlan& plan) {
  const Vector c = centre_of(surface, spec.dim);
  std::vector<Vector> out;
  for (const Vector& u : plan.directions(spec.dim)) out.push_back(project_to_surface(surface, spec, c + u));
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& why) { throw Error(ErrorKind::ParseError, why); }

double number_field(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) parse_fail(std::string("surface field '") + key + "' must be a number");
  return doc[key].get<double>();
}

Vector centre_field(const json& doc) {
  if (!doc.contains("c") || !doc["c"].is_array()) parse_fail("surface field 'c' must be an array");
  const json& c = doc["c"];
  Vector v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].is_number()) parse_fail("surface centre entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = c[i].get<double>();
  }
  return v;
}

}  // namespace

SurfaceSpec parse_surface(std::string_view text, const NormSpec& spec) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("surface spec must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) parse_fail("surface field 'kind' must be a string");
  const std::string kind = doc["kind"].get<std::string>();

  std::set<std::string> allowed;
  SurfaceSpec surface;
  if (kind == "level_set") {
    allowed = {"kind", "r"};
    surface = SurfaceSpec::level_set(number_field(doc, "r"));
  } else if (kind == "euclid_sphere") {
    allowed = {"kind", "c", "rho"};
    surface = SurfaceSpec::euclid_sphere(centre_field(doc), number_field(doc, "rho"));
  } else if (kind == "translated_indicatrix") {
    allowed = {"kind", "c", "r"};
    surface = SurfaceSpec::translated_indicatrix(centre_field(doc), number_field(doc, "r"));
  } else {
    parse_fail("unknown surface kind '" + kind + "'");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) parse_fail("unknown field '" + key + "' for surface kind " + kind);
  }
  surface.validate(spec);
  return surface;
}

SurfaceSpec load_surface(const std::string& path, const NormSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open surface spec '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_surface(buf.str(), spec);
}

nlohmann::json to_json(const SurfaceSpec& surface) {
  json j;
  j["kind"] = std::string(to_string(surface.kind));
  if (surface.kind != SurfaceKind::level_set) {
    json c = json::array();
    for (Eigen::Index i = 0; i < surface.center.size(); ++i) c.push_back(surface.center[i]);
    j["c"] = c;
  }
  j[surface.kind == SurfaceKind::euclid_sphere ? "rho" : "r"] = surface.radius;
  return j;
}

}  // namespace mlab
