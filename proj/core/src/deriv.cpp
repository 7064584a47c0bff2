#include "mlab/deriv.hpp"

#include "mlab/error.hpp"
#include "mlab/taylor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

namespace mlab {

namespace {

// F^2 as a truncated Taylor expansion about y.
Taylor f2_expansion(const NormSpec& spec, const Vector& y, const std::shared_ptr<const MonomialBasis>& basis) {
  const int n = spec.dim;
  std::vector<Taylor> vars;
  vars.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vars.push_back(Taylor::variable(basis, i, y[i]));

  auto quadratic_form = [&]() {
    Taylor q(basis);
    for (int i = 0; i < n; ++i) {
      Taylor row(basis);
      for (int j = 0; j < n; ++j) row += spec.A(i, j) * vars[static_cast<std::size_t>(j)];
      q += vars[static_cast<std::size_t>(i)] * row;
    }
    return q;
  };

  switch (spec.family) {
    case Family::euclidean: return quadratic_form();
    case Family::randers: {
      Taylor f = sqrt(quadratic_form());
      for (int i = 0; i < n; ++i) f += spec.b[i] * vars[static_cast<std::size_t>(i)];
      return square(f);
    }
    case Family::quartic_reg: {
      Taylor s(basis);
      Taylor quartic(basis);
      for (const Taylor& v : vars) {
        Taylor v2 = square(v);
        s += v2;
        quartic += square(v2);
      }
      return sqrt(square(s) + spec.eps * quartic);
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown family");
}

// Partial derivative d^k / dy_{idx...} from Taylor coefficients:
// alpha! * c_alpha.
double partial(const Taylor& t, std::span<const int> idx) {
  const int n = t.basis().vars();
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (int i : idx) ++counts[static_cast<std::size_t>(i)];
  double factorial = 1.0;
  for (int c : counts) {
    for (int f = 2; f <= c; ++f) factorial *= f;
  }
  const int m = t.basis().index_of(counts);
  return factorial * t.coeff(m);
}

}  // namespace

Jet jet_of_F2(const NormSpec& spec, const Vector& y, int order) {
  if (order < 2 || order > 4) throw Error(ErrorKind::UnsupportedOrder, "jet order must be 2, 3 or 4");
  require_admissible(spec, y);
  const int n = spec.dim;
  auto basis = std::make_shared<const MonomialBasis>(n, order);
  const Taylor f2 = f2_expansion(spec, y, basis);

  Jet jet;
  jet.order = order;
  jet.point = y;
  jet.value = f2.value();
  jet.gradient.resize(n);
  jet.hessian.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const int a[1] = {i};
    jet.gradient[i] = partial(f2, a);
    for (int j = i; j < n; ++j) {
      const int ab[2] = {i, j};
      jet.hessian(i, j) = jet.hessian(j, i) = partial(f2, ab);
    }
  }
  if (order >= 3) {
    jet.third = Tensor3(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const int idx[3] = {i, j, k};
          const double v = partial(f2, idx);
          // every permutation of (i, j, k)
          jet.third(i, j, k) = jet.third(i, k, j) = jet.third(j, i, k) = v;
          jet.third(j, k, i) = jet.third(k, i, j) = jet.third(k, j, i) = v;
        }
  }
  if (order >= 4) {
    jet.fourth = Tensor4(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k)
          for (int l = k; l < n; ++l) {
            std::array<int, 4> idx = {i, j, k, l};
            const double v = partial(f2, idx);
            do {
              jet.fourth(idx[0], idx[1], idx[2], idx[3]) = v;
            } while (std::next_permutation(idx.begin(), idx.end()));
          }
  }
  return jet;
}

namespace {

// Base step for central differences of the given order, before the |y|
// scaling. Central differences carry O(h^2) truncation and O(eps / h^k)
// rounding, so higher orders need wider steps.
double fd_base_step(int order) {
  switch (order) {
    case 2: return 3e-3;
    case 3: return 1e-3;
    default: return 1e-2;
  }
}

// Iterated central difference of F^2 along the directions in idx.
double central_difference(const NormSpec& spec, const Vector& y, std::span<const int> idx, double h) {
  const int k = static_cast<int>(idx.size());
  double acc = 0.0;
  for (int mask = 0; mask < (1 << k); ++mask) {
    Vector p = y;
    double sign = 1.0;
    for (int m = 0; m < k; ++m) {
      const bool minus = (mask >> m) & 1;
      p[idx[static_cast<std::size_t>(m)]] += minus ? -h : h;
      if (minus) sign = -sign;
    }
    const double f = evaluate(spec, p);
    acc += sign * f * f;
  }
  return acc / std::pow(2.0 * h, k);
}

}  // namespace

double fd_cross_check(const NormSpec& spec, const Vector& y, int order) {
  const Jet jet = jet_of_F2(spec, y, order);
  const int n = spec.dim;
  const double h = fd_base_step(order) * std::max(1.0, y.norm());

  std::vector<std::vector<int>> tuples;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == order) {
      tuples.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  gen(gen, 0);

  auto exact = [&](const std::vector<int>& t) {
    switch (order) {
      case 2: return jet.hessian(t[0], t[1]);
      case 3: return jet.third(t[0], t[1], t[2]);
      default: return jet.fourth(t[0], t[1], t[2], t[3]);
    }
  };

  double scale = jet.value / std::pow(y.norm(), order);
  for (const auto& t : tuples) scale = std::max(scale, std::abs(exact(t)));

  double worst = 0.0;
  for (const auto& t : tuples) {
    const double coarse = central_difference(spec, y, t, h);
    const double fine = central_difference(spec, y, t, h / 2);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    worst = std::max(worst, std::abs(extrapolated - exact(t)) / scale);
  }
  return worst;
}

}  // namespace mlab
