#include "mlab/norms.hpp"
#include "mlab/tensors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlab {

AxiomReport check_axioms(const NormSpec& spec, std::span<const Vector> points) {
  AxiomReport report;
  report.positivity_ok = true;
  report.min_metric_eigenvalue = std::numeric_limits<double>::infinity();
  for (const Vector& y : points) {
    const double f = evaluate(spec, y);
    if (!(f > 0.0)) report.positivity_ok = false;
    for (double lambda : {0.5, 2.0, 7.0}) {
      const double scaled = evaluate(spec, lambda * y);
      report.homogeneity_residual = std::max(report.homogeneity_residual, std::abs(scaled - lambda * f) / std::abs(f));
    }
    report.abs_homogeneity_residual =
        std::max(report.abs_homogeneity_residual, std::abs(evaluate(spec, -y) - f) / std::abs(f));
    report.min_metric_eigenvalue = std::min(report.min_metric_eigenvalue, min_metric_eigenvalue(spec, y));
    ++report.samples_used;
  }
  return report;
}

AxiomReport check_axioms(const NormSpec& spec, const SamplePlan& plan) {
  const auto points = plan.points(spec.dim);
  return check_axioms(spec, points);
}

AbsHomogeneity is_absolutely_homogeneous(const NormSpec& spec, std::span<const Vector> points, double tol) {
  AbsHomogeneity out;
  for (const Vector& y : points) {
    const double f = evaluate(spec, y);
    out.residual = std::max(out.residual, std::abs(evaluate(spec, -y) - f) / f);
  }
  out.holds = out.residual < tol;
  return out;
}

AbsHomogeneity is_absolutely_homogeneous(const NormSpec& spec, const SamplePlan& plan, double tol) {
  const auto points = plan.points(spec.dim);
  return is_absolutely_homogeneous(spec, points, tol);
}

}  // namespace mlab
