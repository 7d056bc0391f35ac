#include "nsr/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nsr/weyl.hpp"

namespace nsr {

CurvatureAtPoint curvature_from_mixed(Tensor4 r_mixed, const MetricAtPoint& metric) {
  const std::size_t l = metric.g.extent(0);
  CurvatureAtPoint out{std::move(r_mixed), Tensor4(l), Matrix(l), 0.0};
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h) {
          double s = 0.0;
          for (std::size_t q = 0; q < l; ++q) s += out.r_mixed(i, j, k, q) * metric.g(q, h);
          out.r_low(i, j, k, h) = s;
        }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < l; ++j)
        for (std::size_t h = 0; h < l; ++h) s += out.r_low(i, j, k, h) * metric.ginv(j, h);
      out.ricci(i, k) = s;
    }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) out.scalar += metric.ginv(i, k) * out.ricci(i, k);
  return out;
}

CurvatureAtPoint curvature_direct(const MetricAtPoint& metric, const ChristoffelAtPoint& c) {
  const std::size_t l = metric.g.extent(0);
  Tensor4 r(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h) {
          double s = c.dgamma(i, h, j, k) - c.dgamma(j, h, i, k);
          for (std::size_t e = 0; e < l; ++e)
            s += c.gamma(e, j, k) * c.gamma(h, i, e) - c.gamma(e, i, k) * c.gamma(h, j, e);
          r(i, j, k, h) = s;
        }
  return curvature_from_mixed(std::move(r), metric);
}

CurvatureAtPoint curvature_direct(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p) {
  const LocalFrame frame = local_frame(m, p);
  return curvature_direct(frame.metric, connection_coeffs(frame, spec));
}

Tensor4 sns_curvature_correction(const CharTensors& ch, const MetricAtPoint& metric) {
  const std::size_t l = metric.g.extent(0);
  Tensor4 c(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h)
          c(i, j, k, h) = delta(j, h) * ch.pi_low(i, k) - delta(i, h) * ch.pi_low(j, k) +
                          ch.pi_mixed(j, h) * metric.g(i, k) - ch.pi_mixed(i, h) * metric.g(j, k);
  return c;
}

CurvatureAtPoint curvature_sns_via_relation(const AdaptedManifold& m, const OneFormField& pi,
                                            const Point& p) {
  const LocalFrame frame = local_frame(m, p);
  const CurvatureAtPoint K = curvature_direct(frame.metric, christoffel_horizontal(frame.metric));
  const CharTensors ch = char_tensor(frame, pi);
  return curvature_from_mixed(K.r_mixed + sns_curvature_correction(ch, frame.metric), frame.metric);
}

Matrix ricci_mixed(const CurvatureAtPoint& curv, const MetricAtPoint& metric) {
  const std::size_t l = metric.g.extent(0);
  Matrix r(l);
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t h = 0; h < l; ++h) {
      double s = 0.0;
      for (std::size_t k = 0; k < l; ++k) s += curv.ricci(j, k) * metric.ginv(h, k);
      r(j, h) = s;
    }
  return r;
}

namespace {

double dot(const MetricAtPoint& metric, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += metric.g(i, j) * a[i] * b[j];
  return s;
}

}  // namespace

double sectional(const CurvatureAtPoint& curv, const MetricAtPoint& metric,
                 std::span<const double> u, std::span<const double> v) {
  const std::size_t l = metric.g.extent(0);
  if (u.size() != l || v.size() != l) throw DegeneratePlane("plane vectors must have l components");
  const double uu = dot(metric, u, u), vv = dot(metric, v, v), uv = dot(metric, u, v);
  if (uu * vv - uv * uv <= 1e-12) throw DegeneratePlane("vectors do not span a 2-plane");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h) {
          const double w = u[i] * v[j] * u[k] * v[h];
          num += curv.r_low(i, j, k, h) * w;
          den += (metric.g(i, h) * metric.g(j, k) - metric.g(j, h) * metric.g(i, k)) * w;
        }
  return num / den;
}

double sectional(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p,
                 std::span<const double> u, std::span<const double> v) {
  const LocalFrame frame = local_frame(m, p);
  return sectional(curvature_direct(frame.metric, connection_coeffs(frame, spec)), frame.metric, u, v);
}

Tensor4 isotropic_curvature(double lambda, const MetricAtPoint& metric) {
  const std::size_t l = metric.g.extent(0);
  Tensor4 t(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h)
          t(i, j, k, h) =
              lambda * (metric.g(i, h) * metric.g(j, k) - metric.g(j, h) * metric.g(i, k));
  return t;
}

IsotropyResult isotropy_check(const CurvatureAtPoint& curv, const MetricAtPoint& metric,
                              std::size_t planes, std::uint64_t seed) {
  if (planes < 2) throw DegeneratePlane("isotropy check needs at least 2 planes");
  const std::size_t l = metric.g.extent(0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  std::size_t taken = 0;
  while (taken < planes) {
    Vector u(l), v(l);
    for (std::size_t i = 0; i < l; ++i) {
      u[i] = normal(rng);
      v[i] = normal(rng);
    }
    double lambda = 0.0;
    try {
      lambda = sectional(curv, metric, u, v);
    } catch (const DegeneratePlane&) {
      continue;
    }
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
    sum += lambda;
    ++taken;
  }
  IsotropyResult out;
  out.lambda_mean = sum / double(planes);
  out.lambda_spread = hi - lo;
  out.residual = max_abs_diff(curv.r_low, isotropic_curvature(out.lambda_mean, metric));
  return out;
}

IsotropyResult isotropy_check(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p,
                              std::size_t planes, std::uint64_t seed) {
  const LocalFrame frame = local_frame(m, p);
  return isotropy_check(curvature_direct(frame.metric, connection_coeffs(frame, spec)), frame.metric,
                        planes, seed);
}

}  // namespace nsr
