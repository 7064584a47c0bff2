#include "mlab/tensors.hpp"

#include "mlab/error.hpp"

#include <cmath>

namespace mlab {

PointGeometry PointGeometry::at(const NormSpec& spec, const Vector& y, int order) {
  if (order < 3 || order > 4) throw Error(ErrorKind::UnsupportedOrder, "point geometry needs a jet of order 3 or 4");
  PointGeometry geo;
  geo.jet_ = jet_of_F2(spec, y, order);
  const int n = spec.dim;

  MetricAtPoint& m = geo.metric_;
  m.point = y;
  m.norm_value = std::sqrt(geo.jet_.value);
  m.g = 0.5 * geo.jet_.hessian;
  Eigen::LLT<Matrix> llt(m.g);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotPositiveDefinite, "metric is not positive definite (spec outside its strong-convexity regime)");
  }
  m.g_inv = llt.solve(Matrix::Identity(n, n));
  m.g_inv = 0.5 * (m.g_inv + m.g_inv.transpose()).eval();

  const Tensor3& d3 = geo.jet_.third;
  const double F = m.norm_value;
  CartanAtPoint& c = geo.cartan_;
  c.lower = d3;
  c.lower *= F / 4.0;
  c.mixed = Tensor3(n);
  c.mean = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int s = 0; s < n; ++s) acc += m.g_inv(i, s) * c.lower(s, j, k);
        c.mixed(i, j, k) = acc;
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c.mean[k] += m.g_inv(i, j) * c.lower(i, j, k);

  // d_k g_sj = (1/2) d_s d_j d_k F^2
  auto dg = [&](int s, int j, int k) { return 0.5 * d3(s, j, k); };
  geo.christoffel_ = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int s = 0; s < n; ++s) acc += m.g_inv(i, s) * (dg(s, j, k) + dg(s, k, j) - dg(j, k, s));
        geo.christoffel_(i, j, k) = 0.5 * acc;
      }
  return geo;
}

CurvatureAtPoint PointGeometry::curvature_cartan() const {
  const int n = dim();
  const Tensor3& C = cartan_.mixed;
  const double inv_f2 = 1.0 / jet_.value;
  CurvatureAtPoint out{Tensor4(n), CurvatureRoute::cartan_formula};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int s = 0; s < n; ++s) acc += C(s, j, k) * C(i, s, l) - C(s, j, l) * C(i, s, k);
          out.R(i, j, k, l) = inv_f2 * acc;
        }
  return out;
}

CurvatureAtPoint PointGeometry::curvature_connection() const {
  if (jet_.order < 4) throw Error(ErrorKind::UnsupportedOrder, "connection-route curvature needs an order-4 jet");
  const int n = dim();
  const Matrix& ginv = metric_.g_inv;
  const Tensor3& d3 = jet_.third;
  const Tensor4& d4 = jet_.fourth;
  const Tensor3& G = christoffel_;

  // First-kind symbols G_sjk = (1/2)(d_k g_sj + d_j g_sk - d_s g_jk) and
  // their derivatives, straight from the F^2 jet.
  Tensor3 first(n);
  Tensor4 dfirst(n);  // dfirst(s, j, k, l) = d_l G_sjk
  for (int s = 0; s < n; ++s)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        first(s, j, k) = 0.25 * (d3(s, j, k) + d3(s, k, j) - d3(j, k, s));
        for (int l = 0; l < n; ++l) dfirst(s, j, k, l) = 0.25 * (d4(s, j, k, l) + d4(s, k, j, l) - d4(j, k, s, l));
      }

  // d_l g^is = -g^ia (d_l g_ab) g^bs
  Tensor3 dginv(n);  // dginv(l, i, s)
  for (int l = 0; l < n; ++l) {
    Matrix dg(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dg(a, b) = 0.5 * d3(a, b, l);
    const Matrix prod = -ginv * dg * ginv;
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < n; ++s) dginv(l, i, s) = prod(i, s);
  }

  Tensor4 dG(n);  // dG(i, j, k, l) = d_l G^i_jk
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int s = 0; s < n; ++s) acc += dginv(l, i, s) * first(s, j, k) + ginv(i, s) * dfirst(s, j, k, l);
          dG(i, j, k, l) = acc;
        }

  CurvatureAtPoint out{Tensor4(n), CurvatureRoute::connection_formula};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = dG(i, l, j, k) - dG(i, k, j, l);
          for (int m = 0; m < n; ++m) acc += G(i, k, m) * G(m, l, j) - G(i, l, m) * G(m, k, j);
          out.R(i, j, k, l) = acc;
        }
  return out;
}

Vector PointGeometry::christoffel_apply(const Vector& u, const Vector& v) const {
  const int n = dim();
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[i] += christoffel_(i, j, k) * u[j] * v[k];
  return out;
}

double PointGeometry::christoffel_cartan_residual() const {
  const double inv_f = 1.0 / metric_.norm_value;
  double worst = 0.0;
  const auto& g = christoffel_.data();
  const auto& c = cartan_.mixed.data();
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(g[i] - c[i] * inv_f));
  return worst;
}

Vector apply_curvature(const Tensor4& R, const Vector& u, const Vector& v, const Vector& w) {
  const int n = R.dim();
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out[i] += R(i, j, k, l) * w[j] * u[k] * v[l];
  return out;
}

MetricAtPoint metric(const NormSpec& spec, const Vector& y) { return PointGeometry::at(spec, y, 3).metric(); }

CartanAtPoint cartan(const NormSpec& spec, const Vector& y) { return PointGeometry::at(spec, y, 3).cartan(); }

Vector mean_cartan(const NormSpec& spec, const Vector& y) { return PointGeometry::at(spec, y, 3).cartan().mean; }

Tensor3 christoffel(const NormSpec& spec, const Vector& y) { return PointGeometry::at(spec, y, 3).christoffel(); }

CurvatureAtPoint curvature_cartan(const NormSpec& spec, const Vector& y) {
  return PointGeometry::at(spec, y, 3).curvature_cartan();
}

CurvatureAtPoint curvature_connection(const NormSpec& spec, const Vector& y) {
  return PointGeometry::at(spec, y, 4).curvature_connection();
}

double sectional(const PointGeometry& geo, const Vector& u, const Vector& v) {
  return sectional(geo, geo.curvature_cartan(), u, v);
}

double sectional(const PointGeometry& geo, const CurvatureAtPoint& curvature, const Vector& u, const Vector& v) {
  const double uu = geo.inner(u, u);
  const double vv = geo.inner(v, v);
  const double uv = geo.inner(u, v);
  const double gram = uu * vv - uv * uv;
  if (!(gram > 1e-12 * u.squaredNorm() * v.squaredNorm())) {
    throw Error(ErrorKind::DegeneratePlane, "U and V do not span a 2-plane");
  }
  return geo.inner(apply_curvature(curvature.R, u, v, v), u) / gram;
}

double sectional(const NormSpec& spec, const Vector& y, const Vector& u, const Vector& v) {
  return sectional(PointGeometry::at(spec, y, 3), u, v);
}

double min_metric_eigenvalue(const NormSpec& spec, const Vector& y) {
  const Jet jet = jet_of_F2(spec, y, 2);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * jet.hessian, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace mlab
