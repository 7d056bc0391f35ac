#pragma once

#include <cstddef>
#include <vector>

namespace nsr {

/// Second-order truncated Taylor value in `dim` variables: value, gradient
/// and a symmetric Hessian (stored dense, row-major).
///
/// Every operation propagates the product and chain rules exactly to second
/// order, so there is no truncation error beyond floating-point rounding.
class Jet2 {
 public:
  Jet2() = default;

  /// Constant jet: zero gradient and Hessian.
  Jet2(double value, std::size_t dim);

  /// Seed for coordinate `index`: value `value`, gradient e_index.
  static Jet2 variable(double value, std::size_t index, std::size_t dim);

  std::size_t dim() const { return grad_.size(); }
  double value() const { return value_; }
  double grad(std::size_t i) const { return grad_[i]; }
  double hess(std::size_t i, std::size_t j) const { return hess_[i * dim() + j]; }
  const std::vector<double>& gradient() const { return grad_; }

  friend Jet2 operator-(const Jet2& a);
  friend Jet2 operator+(const Jet2& a, const Jet2& b);
  friend Jet2 operator-(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);

  /// Composition with a scalar function given f(a), f'(a), f''(a).
  Jet2 compose(double f, double df, double ddf) const;

 private:
  double value_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> hess_;
};

/// Integer power; negative exponents require a nonzero value.
Jet2 pow(const Jet2& a, int k);
Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 exp(const Jet2& a);
/// Requires a.value() > 0.
Jet2 log(const Jet2& a);
/// Requires a.value() > 0.
Jet2 sqrt(const Jet2& a);

}  // namespace nsr
