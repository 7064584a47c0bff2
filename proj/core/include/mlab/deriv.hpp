#pragma once

#include "mlab/dense.hpp"
#include "mlab/norms.hpp"

namespace mlab {

/// Value and partial derivatives of F^2 at a point. Every derivative array
/// is fully symmetric; arrays above `order` are left empty (dim 0).
struct Jet {
  int order = 0;
  Vector point;
  double value = 0.0;
  Vector gradient;
  Matrix hessian;
  Tensor3 third;
  Tensor4 fourth;
};

/// Exact-to-rounding partials of F^2 up to `order` (2, 3 or 4) by truncated
/// Taylor propagation through the family's closed form.
Jet jet_of_F2(const NormSpec& spec, const Vector& y, int order);

/// Largest relative discrepancy between the jet partials of the given order
/// and central finite differences of F^2 = evaluate(y)^2 (one Richardson
/// level, step h_k max(1, |y|) with h_2 = 3e-3, h_3 = 1e-3, h_4 = 1e-2).
/// Self-test only.
double fd_cross_check(const NormSpec& spec, const Vector& y, int order);

}  // namespace mlab
