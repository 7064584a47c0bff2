#include "mlab/taylor.hpp"

#include "mlab/error.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace mlab {

namespace {

// All exponent vectors of total degree `degree`, first variable's exponent
// descending.
void exponents_of_degree(int vars, int degree, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  const int v = static_cast<int>(prefix.size());
  if (v == vars - 1) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    prefix.push_back(e);
    exponents_of_degree(vars, degree - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int vars, int order) : vars_(vars), order_(order) {
  std::vector<std::vector<int>> all;
  for (int d = 0; d <= order; ++d) {
    std::vector<int> prefix;
    exponents_of_degree(vars, d, prefix, all);
  }
  std::map<std::vector<int>, int> lookup;
  for (std::size_t m = 0; m < all.size(); ++m) {
    int deg = 0;
    for (int e : all[m]) deg += e;
    degree_.push_back(deg);
    exponents_.insert(exponents_.end(), all[m].begin(), all[m].end());
    lookup.emplace(all[m], static_cast<int>(m));
  }
  const std::size_t n = all.size();
  product_.assign(n * n, -1);
  std::vector<int> sum(static_cast<std::size_t>(vars));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      for (int v = 0; v < vars; ++v) sum[static_cast<std::size_t>(v)] = all[a][static_cast<std::size_t>(v)] + all[b][static_cast<std::size_t>(v)];
      product_[a * n + b] = lookup.at(sum);
    }
  }
}

int MonomialBasis::index_of(std::span<const int> alpha) const {
  for (int m = 0; m < size(); ++m) {
    bool match = true;
    for (int v = 0; v < vars_ && match; ++v) match = exponent(m, v) == alpha[static_cast<std::size_t>(v)];
    if (match) return m;
  }
  return -1;
}

Taylor::Taylor(std::shared_ptr<const MonomialBasis> basis, double constant)
    : basis_(std::move(basis)), coeffs_(static_cast<std::size_t>(basis_->size()), 0.0) {
  coeffs_[0] = constant;
}

Taylor Taylor::variable(std::shared_ptr<const MonomialBasis> basis, int v, double at) {
  Taylor t(std::move(basis), at);
  if (t.basis().order() >= 1) t.coeffs_[static_cast<std::size_t>(1 + v)] = 1.0;
  return t;
}

Taylor& Taylor::operator+=(const Taylor& rhs) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& rhs) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Taylor& Taylor::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  const MonomialBasis& basis = a.basis();
  Taylor out(a.basis_, 0.0);
  const int n = basis.size();
  for (int i = 0; i < n; ++i) {
    const double ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const int k = basis.product(i, j);
      if (k < 0) continue;
      out.coeffs_[static_cast<std::size_t>(k)] += ai * b.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

Taylor Taylor::compose(const Taylor& x, std::span<const double> taylor) {
  const int order = x.basis().order();
  Taylor delta = x;
  delta.coeffs_[0] = 0.0;
  // Horner in the nilpotent displacement: terms past the order vanish.
  Taylor acc(x.basis_, taylor[static_cast<std::size_t>(order)]);
  for (int k = order - 1; k >= 0; --k) {
    acc = acc * delta;
    acc.coeffs_[0] += taylor[static_cast<std::size_t>(k)];
  }
  return acc;
}

Taylor sqrt(const Taylor& x) {
  const double x0 = x.value();
  if (!(x0 > 0.0)) throw Error(ErrorKind::DegeneratePoint, "square root of a non-positive jet");
  const int order = x.basis().order();
  std::vector<double> coeffs(static_cast<std::size_t>(order) + 1);
  coeffs[0] = std::sqrt(x0);
  for (int k = 1; k <= order; ++k) {
    coeffs[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k) - 1] * (0.5 - (k - 1)) / (k * x0);
  }
  return Taylor::compose(x, coeffs);
}

Taylor square(const Taylor& x) { return x * x; }

}  // namespace mlab
