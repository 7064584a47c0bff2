#pragma once

#include "mlab/dense.hpp"
#include "mlab/sampling.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <string_view>

namespace mlab {

enum class Family { euclidean, randers, quartic_reg };

std::string_view to_string(Family family);

/// Points closer than this (Euclidean length) to the origin are rejected by
/// every operation.
inline constexpr double kExclusionRadius = 1e-8;

inline constexpr double kTolAbsHomogeneity = 1e-9;
inline constexpr double kTolHomogeneity = 1e-10;

/// One member of the norm catalog.
///
///   euclidean    F(y) = sqrt(y'Ay)
///   randers      F(y) = sqrt(y'Ay) + b.y        with b'A^{-1}b < 1
///   quartic_reg  F(y) = ((sum y_i^2)^2 + eps sum y_i^4)^(1/4),  eps > 0
///
/// The named constructors validate; `unchecked` skips validation and exists
/// so tests can push an out-of-regime spec through the pipeline.
struct NormSpec {
  int dim = 0;
  Family family = Family::euclidean;
  Matrix A;    // euclidean, randers
  Vector b;    // randers
  double eps = 0.0;  // quartic_reg

  static NormSpec euclidean(Matrix a);
  static NormSpec randers(Matrix a, Vector drift);
  static NormSpec quartic_reg(int dim, double eps);
  static NormSpec unchecked(int dim, Family family, Matrix a, Vector drift, double eps);

  /// Throws Error(InvalidSpec) naming the violated invariant.
  void validate() const;
};

/// Throws DegeneratePoint inside the exclusion ball, DimensionMismatch on a
/// wrongly sized point.
void require_admissible(const NormSpec& spec, const Vector& y);

double evaluate(const NormSpec& spec, const Vector& y);

struct AxiomReport {
  bool positivity_ok = false;
  double homogeneity_residual = 0.0;
  double min_metric_eigenvalue = 0.0;
  double abs_homogeneity_residual = 0.0;
  int samples_used = 0;
};

/// Numerical certificate of the Minkowski-norm axioms over a point set.
/// Homogeneity is probed with lambda in {0.5, 2, 7}.
AxiomReport check_axioms(const NormSpec& spec, std::span<const Vector> points);
AxiomReport check_axioms(const NormSpec& spec, const SamplePlan& plan);

struct AbsHomogeneity {
  bool holds = false;
  double residual = 0.0;  // max |F(-y) - F(y)| / F(y)
};

AbsHomogeneity is_absolutely_homogeneous(const NormSpec& spec, std::span<const Vector> points,
                                         double tol = kTolAbsHomogeneity);
AbsHomogeneity is_absolutely_homogeneous(const NormSpec& spec, const SamplePlan& plan,
                                         double tol = kTolAbsHomogeneity);

/// Parses the JSON norm-spec document: {"dim", "family", "A", "b", "eps"}.
/// Malformed or incomplete documents raise ParseError; well-formed documents
/// that break an invariant raise InvalidSpec.
NormSpec parse_spec(std::string_view text);
NormSpec load_spec(const std::string& path);

nlohmann::json to_json(const NormSpec& spec);

}  // namespace mlab
