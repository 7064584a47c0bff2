#pragma once

#include "mlab/deriv.hpp"
#include "mlab/dense.hpp"
#include "mlab/norms.hpp"

namespace mlab {

struct MetricAtPoint {
  Vector point;
  double norm_value = 0.0;  // F(y)
  Matrix g;                 // g_ij = (1/2) d_i d_j F^2
  Matrix g_inv;
};

struct CartanAtPoint {
  Tensor3 lower;  // C_ijk = (F/4) d_i d_j d_k F^2
  Tensor3 mixed;  // C^i_jk = g^is C_sjk
  Vector mean;    // A_k = g^ij C_ijk
};

enum class CurvatureRoute { cartan_formula, connection_formula };

/// R^i_jkl, with R(U, V)W = R^i_jkl W^j U^k V^l d_i.
///
/// Both routes share this convention. The connection route uses
///   R^i_jkl = d_k G^i_lj - d_l G^i_kj + G^i_km G^m_lj - G^i_lm G^m_kj,
/// i.e. R(X, Y) = [D_X, D_Y] - D_[X,Y]. The Cartan-product route
///   R^i_jkl = F^-2 (C^s_jk C^i_sl - C^s_jl C^i_sk)
/// agrees with it entry for entry with no sign or index remapping; the
/// cross-route tests pin that calibration.
struct CurvatureAtPoint {
  Tensor4 R;
  CurvatureRoute route = CurvatureRoute::cartan_formula;
};

/// Every pointwise tensor of (R^n \ {0}, g) at one point, built from a single
/// jet of F^2 so all of them are mutually consistent.
class PointGeometry {
 public:
  /// order 3 suffices for everything except curvature_connection, which
  /// needs order 4.
  static PointGeometry at(const NormSpec& spec, const Vector& y, int order = 4);

  int dim() const noexcept { return static_cast<int>(metric_.point.size()); }
  const Vector& point() const noexcept { return metric_.point; }
  double norm_value() const noexcept { return metric_.norm_value; }
  const Jet& jet() const noexcept { return jet_; }
  const MetricAtPoint& metric() const noexcept { return metric_; }
  const CartanAtPoint& cartan() const noexcept { return cartan_; }
  /// G^i_jk from the Levi-Civita formula on g (first-derivative terms of g).
  const Tensor3& christoffel() const noexcept { return christoffel_; }

  CurvatureAtPoint curvature_cartan() const;
  CurvatureAtPoint curvature_connection() const;

  double inner(const Vector& u, const Vector& v) const { return u.dot(metric_.g * v); }
  double norm(const Vector& u) const { return std::sqrt(inner(u, u)); }

  /// G^i_jk u^j v^k: the correction turning a coordinate derivative of a
  /// vector field into its covariant derivative.
  Vector christoffel_apply(const Vector& u, const Vector& v) const;

  /// max |G - C^/F|, the residual of the Christoffel/Cartan identity.
  double christoffel_cartan_residual() const;

 private:
  Jet jet_;
  MetricAtPoint metric_;
  CartanAtPoint cartan_;
  Tensor3 christoffel_;
};

/// R(U, V)W for a curvature tensor in the convention above.
Vector apply_curvature(const Tensor4& R, const Vector& u, const Vector& v, const Vector& w);

MetricAtPoint metric(const NormSpec& spec, const Vector& y);
CartanAtPoint cartan(const NormSpec& spec, const Vector& y);
Vector mean_cartan(const NormSpec& spec, const Vector& y);
Tensor3 christoffel(const NormSpec& spec, const Vector& y);
CurvatureAtPoint curvature_cartan(const NormSpec& spec, const Vector& y);
CurvatureAtPoint curvature_connection(const NormSpec& spec, const Vector& y);

/// K(U, V) = g(R(U,V)V, U) / (g(U,U) g(V,V) - g(U,V)^2), curvature from the
/// Cartan route. DegeneratePlane when the Gram determinant is at or below
/// 1e-12 |U|^2 |V|^2.
double sectional(const PointGeometry& geo, const Vector& u, const Vector& v);
double sectional(const PointGeometry& geo, const CurvatureAtPoint& curvature, const Vector& u, const Vector& v);
double sectional(const NormSpec& spec, const Vector& y, const Vector& u, const Vector& v);

/// Smallest eigenvalue of g(y) without requiring positive definiteness, so
/// it can certify (or refute) strong convexity.
double min_metric_eigenvalue(const NormSpec& spec, const Vector& y);

}  // namespace mlab
