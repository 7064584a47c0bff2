#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace mlab {

/// Monomials y^alpha in `vars` variables with |alpha| <= order, in graded
/// order: the constant first, then the `vars` linear monomials (index 1 + i
/// is y_i), then degree 2, and so on. Holds the truncated product table so
/// multiplying two polynomials is a flat loop.
class MonomialBasis {
 public:
  MonomialBasis(int vars, int order);

  int vars() const noexcept { return vars_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(degree_.size()); }
  int degree(int m) const { return degree_[static_cast<std::size_t>(m)]; }

  /// Exponent of variable v in monomial m.
  int exponent(int m, int v) const {
    return exponents_[static_cast<std::size_t>(m) * static_cast<std::size_t>(vars_) + static_cast<std::size_t>(v)];
  }

  /// Index of the monomial with the given exponents, or -1 if its degree
  /// exceeds the truncation order.
  int index_of(std::span<const int> alpha) const;

  /// Index of m1 * m2, or -1 when truncated away.
  int product(int m1, int m2) const {
    return product_[static_cast<std::size_t>(m1) * degree_.size() + static_cast<std::size_t>(m2)];
  }

 private:
  int vars_;
  int order_;
  std::vector<int> degree_;
  std::vector<int> exponents_;
  std::vector<int> product_;
};

/// Multivariate polynomial truncated at the basis order: the Taylor
/// expansion of a smooth function about a base point, in the displacement
/// variables. Arithmetic is closed under truncation, so composing the
/// catalog's closed-form expressions yields exact-to-rounding Taylor
/// coefficients up to the basis order.
class Taylor {
 public:
  explicit Taylor(std::shared_ptr<const MonomialBasis> basis, double constant = 0.0);

  /// The expansion of the coordinate function y_v about base value `at`.
  static Taylor variable(std::shared_ptr<const MonomialBasis> basis, int v, double at);

  const MonomialBasis& basis() const noexcept { return *basis_; }
  double value() const noexcept { return coeffs_[0]; }
  double coeff(int m) const { return coeffs_[static_cast<std::size_t>(m)]; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  Taylor& operator+=(const Taylor& rhs);
  Taylor& operator-=(const Taylor& rhs);
  Taylor& operator*=(double s);
  Taylor& operator+=(double s) {
    coeffs_[0] += s;
    return *this;
  }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator*(Taylor a, double s) { return a *= s; }
  friend Taylor operator*(double s, Taylor a) { return a *= s; }
  friend Taylor operator+(Taylor a, double s) { return a += s; }
  friend Taylor operator*(const Taylor& a, const Taylor& b);

  /// f(x) given the scaled derivatives taylor[k] = f^(k)(x0) / k! at
  /// x0 = x.value(); taylor must have at least order + 1 entries.
  static Taylor compose(const Taylor& x, std::span<const double> taylor);

 private:
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<double> coeffs_;
};

Taylor sqrt(const Taylor& x);
Taylor square(const Taylor& x);

}  // namespace mlab
