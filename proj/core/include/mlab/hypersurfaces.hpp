#pragma once

#include "mlab/dense.hpp"
#include "mlab/norms.hpp"
#include "mlab/sampling.hpp"
#include "mlab/tensors.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlab {

enum class SurfaceKind { level_set, euclid_sphere, translated_indicatrix };

std::string_view to_string(SurfaceKind kind);

/// Implicit hypersurface Phi(y) = 0 in (R^n \ {0}, g):
///
///   level_set              Phi = F(y) - r
///   euclid_sphere          Phi = sqrt((y-c)'A(y-c)) - rho   (euclidean family only, same A)
///   translated_indicatrix  Phi = F(y - c) - r
struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::level_set;
  double radius = 1.0;  // r, or rho for euclid_sphere
  Vector center;        // empty for level_set

  static SurfaceSpec level_set(double r);
  static SurfaceSpec euclid_sphere(Vector c, double rho);
  static SurfaceSpec translated_indicatrix(Vector c, double r);

  /// Checks the surface against the ambient norm: positive radius, matching
  /// dimension, euclid_sphere only over a euclidean norm, and the surface
  /// clear of the exclusion ball around the origin.
  void validate(const NormSpec& spec) const;
};

double defining_function(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y);
Vector defining_gradient(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y);

/// Root-solve along the ray from the surface's centre (the origin for level
/// sets) through y0. Result satisfies |Phi| < 1e-12 (1 + r).
Vector project_to_surface(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y0);

/// ĝ-orthonormal tangent frame plus the oriented unit normal. The normal is
/// the normalised ĝ-gradient of Phi, flipped (orientation_sign = -1) when
/// that makes the mean curvature non-negative.
struct FrameAtPoint {
  Vector point;
  std::vector<Vector> tangent;
  Vector normal;
  int orientation_sign = 1;
};

struct ShapeAtPoint {
  Matrix h;  // second fundamental form in the frame
  double H = 0.0;
  double umbilicity_deviation = 0.0;  // max |h - H delta|
};

Vector unit_normal(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y);
FrameAtPoint tangent_frame(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y);
ShapeAtPoint second_fundamental_form(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame);

/// Frame, shape and ambient geometry at one surface point, computed once.
struct SurfacePoint {
  FrameAtPoint frame;
  ShapeAtPoint shape;
  PointGeometry geo;
  CurvatureAtPoint curvature;  // Cartan route
};

SurfacePoint analyze_point(const SurfaceSpec& surface, const NormSpec& spec, const Vector& y);

/// Gauss-equation sectional curvature on the plane spanned by the tangent
/// vectors with frame coefficients u and v (orthonormal coefficient pairs
/// give orthonormal vectors). Returns {K, K^}.
struct InducedSectional {
  double surface = 0.0;  // K
  double ambient = 0.0;  // K^
};
InducedSectional induced_sectional(const SurfacePoint& point, const Vector& u, const Vector& v);

/// Gauss-equation sectional curvature of the surface on span(e_a, e_b).
double induced_sectional(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame, int a, int b);

/// max over frame triples |ĝ(R(e_a, e_b) e_c, nu)|.
double ambient_curvature_normal_part(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame);

/// f(y) = ĝ(y, nu) (normal moment) or f(y) = ĝ(y, b) for a constant b.
struct MomentFunction {
  enum class Kind { normal_moment, b_moment } kind = Kind::normal_moment;
  Vector b;

  static MomentFunction normal_moment() { return {}; }
  static MomentFunction b_moment(Vector b) { return {Kind::b_moment, std::move(b)}; }
};

double moment_value(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame,
                    const MomentFunction& f);

struct SurfaceGradient {
  Vector value;              // closed form when available, else the difference route
  Vector difference_route;   // directional differences along surface curves
  bool closed_form = false;
  double route_gap = 0.0;    // ĝ-norm of (closed - difference); 0 when no closed form
};

/// Tangential gradient of f. Closed forms: -H y^T for the normal moment
/// (needs an umbilical surface or a level set), b - ĝ(b, nu) nu for the
/// b-moment.
SurfaceGradient surface_gradient(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame,
                                 const MomentFunction& f);

/// max_a |(D_{e_a} grad f)^T + c2 f~ e_a|_ĝ, with f~ = f + 1/H for the
/// normal moment and f~ = f for the b-moment. Near zero on the Obata model
/// cases.
double obata_residual(const SurfaceSpec& surface, const NormSpec& spec, const FrameAtPoint& frame,
                      const MomentFunction& f, double c2);

struct ConverseCheck {
  double misalignment = 0.0;  // max_y min_s |nu - s y/F|_ĝ
  double f_variation = 0.0;   // max F - min F over the points
  double umbilicity = 0.0;    // max umbilicity deviation over the points
  bool contract_holds = true; // umbilical and aligned => F variation < tol r
};

ConverseCheck remark_converse_check(const SurfaceSpec& surface, const NormSpec& spec, std::span<const Vector> points,
                                    double tol = 1e-9);

/// Plan directions pushed out from the surface centre and projected.
std::vector<Vector> sample_surface(const SurfaceSpec& surface, const NormSpec& spec, const SamplePlan& plan);

/// Surface-spec JSON: {"kind": "...", "r": ..., "c": [...], "rho": ...}.
SurfaceSpec parse_surface(std::string_view text, const NormSpec& spec);
SurfaceSpec load_surface(const std::string& path, const NormSpec& spec);
nlohmann::json to_json(const SurfaceSpec& surface);

}  // namespace mlab
