#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace nsr {

/// Dense real tensor of fixed rank with per-axis extents, row-major.
///
/// Index order is the order written in formulas: `gamma(k, i, j)` is
/// Γ^k_ij, `r_mixed(i, j, k, h)` is R^h_ijk.
template <std::size_t Rank>
class Tensor {
 public:
  using Extents = std::array<std::size_t, Rank>;

  Tensor() { extents_.fill(0); }

  /// All extents equal to `dim`.
  explicit Tensor(std::size_t dim) {
    extents_.fill(dim);
    data_.assign(count(), 0.0);
  }

  explicit Tensor(const Extents& extents) : extents_(extents) {
    data_.assign(count(), 0.0);
  }

  template <typename... Idx>
    requires(sizeof...(Idx) == Rank)
  double& operator()(Idx... idx) {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  template <typename... Idx>
    requires(sizeof...(Idx) == Rank)
  double operator()(Idx... idx) const {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  const Extents& extents() const { return extents_; }
  std::size_t extent(std::size_t axis) const { return extents_[axis]; }
  std::size_t size() const { return data_.size(); }

  std::vector<double>& flat() { return data_; }
  const std::vector<double>& flat() const { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  Tensor& operator+=(const Tensor& o) {
    assert(extents_ == o.extents_);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += o.data_[n];
    return *this;
  }

  Tensor& operator-=(const Tensor& o) {
    assert(extents_ == o.extents_);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= o.data_[n];
    return *this;
  }

  Tensor& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::size_t count() const {
    return std::accumulate(extents_.begin(), extents_.end(), std::size_t{1},
                           std::multiplies<>());
  }

  std::size_t offset(const std::array<std::size_t, Rank>& idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < Rank; ++a) {
      assert(idx[a] < extents_[a]);
      off = off * extents_[a] + idx[a];
    }
    return off;
  }

  Extents extents_;
  std::vector<double> data_;
};

using Vector = std::vector<double>;
using Matrix = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

template <std::size_t Rank>
double max_abs_diff(const Tensor<Rank>& a, const Tensor<Rank>& b) {
  assert(a.extents() == b.extents());
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n)
    m = std::max(m, std::abs(a.flat()[n] - b.flat()[n]));
  return m;
}

inline double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

}  // namespace nsr
