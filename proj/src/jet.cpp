#include "nsr/jet.hpp"

#include <cassert>
#include <cmath>

namespace nsr {

Jet2::Jet2(double value, std::size_t dim)
    : value_(value), grad_(dim, 0.0), hess_(dim * dim, 0.0) {}

Jet2 Jet2::variable(double value, std::size_t index, std::size_t dim) {
  Jet2 j(value, dim);
  j.grad_[index] = 1.0;
  return j;
}

Jet2 operator-(const Jet2& a) {
  Jet2 r = a;
  r.value_ = -r.value_;
  for (double& g : r.grad_) g = -g;
  for (double& h : r.hess_) h = -h;
  return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  assert(a.dim() == b.dim());
  Jet2 r = a;
  r.value_ += b.value_;
  for (std::size_t i = 0; i < r.grad_.size(); ++i) r.grad_[i] += b.grad_[i];
  for (std::size_t i = 0; i < r.hess_.size(); ++i) r.hess_[i] += b.hess_[i];
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  assert(a.dim() == b.dim());
  Jet2 r = a;
  r.value_ -= b.value_;
  for (std::size_t i = 0; i < r.grad_.size(); ++i) r.grad_[i] -= b.grad_[i];
  for (std::size_t i = 0; i < r.hess_.size(); ++i) r.hess_[i] -= b.hess_[i];
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  assert(a.dim() == b.dim());
  const std::size_t n = a.dim();
  Jet2 r(a.value_ * b.value_, n);
  for (std::size_t i = 0; i < n; ++i)
    r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
  // The cross term a_i b_j + a_j b_i is symmetric by construction.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r.hess_[i * n + j] = a.value_ * b.hess_[i * n + j] + b.value_ * a.hess_[i * n + j] +
                           a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i];
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double v = b.value();
  return a * b.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet2 Jet2::compose(double f, double df, double ddf) const {
  const std::size_t n = dim();
  Jet2 r(f, n);
  for (std::size_t i = 0; i < n; ++i) r.grad_[i] = df * grad_[i];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r.hess_[i * n + j] = df * hess_[i * n + j] + ddf * (grad_[i] * grad_[j]);
  return r;
}

Jet2 pow(const Jet2& a, int k) {
  const double x = a.value();
  if (k == 0) return Jet2(1.0, a.dim());
  const double f = std::pow(x, k);
  const double df = k * std::pow(x, k - 1);
  const double ddf = (k == 1) ? 0.0 : double(k) * (k - 1) * std::pow(x, k - 2);
  return a.compose(f, df, ddf);
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(s, c, -s);
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return a.compose(c, -s, -c);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value());
  return a.compose(e, e, e);
}

Jet2 log(const Jet2& a) {
  const double x = a.value();
  return a.compose(std::log(x), 1.0 / x, -1.0 / (x * x));
}

Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.value());
  return a.compose(s, 0.5 / s, -0.25 / (s * a.value()));
}

}  // namespace nsr
