#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace mlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense cubic array with every index running over [0, dim). Storage is
/// row-major (last index fastest). Small by construction: dim is the space
/// dimension, so Rank 4 at dim 6 is still only 1296 doubles.
template <int Rank>
class Tensor {
  static_assert(Rank >= 1 && Rank <= 4);

 public:
  Tensor() = default;
  explicit Tensor(int dim) : dim_(dim), data_(extent(dim), 0.0) {}

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size(); }

  template <typename... Idx>
  double& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset(idx...)];
  }
  template <typename... Idx>
  double operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset(idx...)];
  }

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double>& data() noexcept { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Tensor& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  /// Largest entrywise |a - b|; both tensors must share a dimension.
  friend double max_abs_diff(const Tensor& a, const Tensor& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) m = std::max(m, std::abs(a.data_[i] - b.data_[i]));
    return m;
  }

 private:
  static std::size_t extent(int dim) {
    std::size_t e = 1;
    for (int r = 0; r < Rank; ++r) e *= static_cast<std::size_t>(dim);
    return e;
  }

  template <typename... Idx>
  std::size_t offset(Idx... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

}  // namespace mlab
