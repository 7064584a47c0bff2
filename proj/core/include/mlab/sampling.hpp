#pragma once

#include "mlab/dense.hpp"

#include <cstdint>
#include <vector>

namespace mlab {

/// Deterministic stream of admissible sample points. Directions are uniform
/// on the Euclidean unit sphere (normalised standard normals); radii are
/// log-uniform in [r_min, r_max].
struct SamplePlan {
  std::uint64_t seed = 7;
  int count = 200;
  double r_min = 0.5;
  double r_max = 2.0;

  void validate() const;

  std::vector<Vector> points(int dim) const;
  /// Unit directions only (radius 1); used for surface sampling.
  std::vector<Vector> directions(int dim) const;
};

}  // namespace mlab
