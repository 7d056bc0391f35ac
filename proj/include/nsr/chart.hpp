#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsr/expr.hpp"
#include "nsr/tensor.hpp"

namespace nsr {

class ManifoldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The horizontal dimension is too small for the requested operation
/// (the conformal tensor divides by ℓ−2).
class EllTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No evaluable point found after the resampling budget.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Adapted coordinates (x^1..x^ℓ horizontal, x^{ℓ+1}..x^n vertical).
struct Point {
  std::vector<double> coords;

  std::size_t size() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  operator std::span<const double>() const { return coords; }
};

/// A nearly sub-Riemannian manifold in adapted coordinates: the frame
/// e_i = ∂/∂x^i − A_i^α ∂/∂x^α spans the horizontal bundle and g_ij = g(e_i, e_j).
class AdaptedManifold {
 public:
  using ExprMatrix = std::vector<std::vector<Expr>>;

  /// Checks shapes, 2 ≤ ℓ < n, variable ranges, structural symmetry of g
  /// (g[i][j] and g[j][i] print identically) and the domain intervals.
  AdaptedManifold(std::size_t n, std::size_t l, ExprMatrix g, ExprMatrix A,
                  std::vector<Interval> domain);

  std::size_t n() const { return n_; }
  std::size_t l() const { return l_; }
  std::size_t vertical_dim() const { return n_ - l_; }
  const Expr& g(std::size_t i, std::size_t j) const { return g_[i][j]; }
  const Expr& A(std::size_t i, std::size_t alpha) const { return A_[i][alpha]; }
  const ExprMatrix& metric_exprs() const { return g_; }
  const ExprMatrix& pfaffian_exprs() const { return A_; }
  const std::vector<Interval>& domain() const { return domain_; }

 private:
  std::size_t n_;
  std::size_t l_;
  ExprMatrix g_;
  ExprMatrix A_;
  std::vector<Interval> domain_;
};

/// Metric data at a point; derivative slots are horizontal only.
struct MetricAtPoint {
  Matrix g;      ///< g(i, j)
  Matrix ginv;   ///< g^{ij}
  Tensor3 dg;    ///< dg(i, j, k) = ∂g_ij/∂x^k
  Tensor4 ddg;   ///< ddg(i, j, k, m) = ∂²g_ij/∂x^k∂x^m
};

MetricAtPoint metric_at(const AdaptedManifold& m, const Point& p);

/// A_i^α(p) as an ℓ×(n−ℓ) matrix.
Matrix frame_coefficients(const AdaptedManifold& m, const Point& p);

/// e_i(f) = ∂f/∂x^i − Σ_α A_i^α ∂f/∂x^α from a jet of f and A(p).
double frame_derivative(const Jet2& f, const Matrix& A, std::size_t i);

/// e_i(f) at p.
double frame_derivative(const AdaptedManifold& m, const Expr& f, std::size_t i, const Point& p);

/// M_ij^α = e_j(A_i^α) − e_i(A_j^α), the vertical components of [e_i, e_j].
/// Extents (ℓ, ℓ, n−ℓ).
Tensor3 vertical_bracket(const AdaptedManifold& m, const Point& p);

/// Horizontal part of [∂/∂x^α, e_k]. In adapted coordinates this bracket is
/// −∂_α A_k^β ∂/∂x^β, purely vertical, so the result is identically zero.
double lambda_check(const AdaptedManifold& m, const Point& p);

/// Predicate applied to candidate points; throwing rejects the candidate.
using PointProbe = std::function<void(const Point&)>;

/// Deterministic sample `index` of stream `seed`: uniform in the domain,
/// redrawn (up to 100 times) while the probe throws DomainError or
/// NotPositiveDefinite. The default probe requires metric_at to succeed.
Point sample_point(const AdaptedManifold& m, std::uint64_t seed, std::size_t index,
                   const PointProbe& probe = {});

struct ValidationReport {
  std::size_t samples = 0;
  double symmetry_residual = 0.0;   ///< max |g_ij − g_ji| (values and derivatives)
  std::size_t spd_failures = 0;     ///< sampled points where Cholesky failed
  double omega_residual = 0.0;      ///< max |∂g_ij/∂x^α|
  double omega_hessian_residual = 0.0;  ///< max |∂²g_ij/∂x^α∂x^·|

  bool symmetric() const { return symmetry_residual == 0.0; }
  bool positive_definite() const { return spd_failures == 0; }
  bool nearly_sub_riemannian() const {
    return omega_residual < 1e-12 && omega_hessian_residual < 1e-12;
  }
  bool pass() const { return symmetric() && positive_definite() && nearly_sub_riemannian(); }
};

/// Samples the domain and checks symmetry, positive definiteness and the
/// vanishing of Ω (g independent of the vertical coordinates).
ValidationReport validate(const AdaptedManifold& m, std::size_t samples, std::uint64_t seed);

}  // namespace nsr
