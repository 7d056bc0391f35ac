#include "nsr/weyl.hpp"

#include <algorithm>
#include <cmath>

namespace nsr {

Matrix covariant_derivative(const OneFormAtPoint& form, const ChristoffelAtPoint& horizontal) {
  const std::size_t l = form.value.size();
  Matrix d(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      double s = form.frame_grad(i, j);
      for (std::size_t e = 0; e < l; ++e) s -= horizontal.gamma(e, i, j) * form.value[e];
      d(i, j) = s;
    }
  return d;
}

CharTensors char_tensor(const LocalFrame& frame, const OneFormField& pi_form) {
  const MetricAtPoint& metric = frame.metric;
  const std::size_t l = metric.g.extent(0);
  if (pi_form.size() != l) throw ManifoldError("pi must have l components");
  const OneFormAtPoint pi = evaluate_form(frame, pi_form);

  CharTensors ch{pi.value, Vector(l, 0.0), Matrix(l), Matrix(l), Matrix(l), 0.0};
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t h = 0; h < l; ++h) ch.pi_up[i] += metric.ginv(i, h) * pi.value[h];
  double norm2 = 0.0;
  for (std::size_t h = 0; h < l; ++h) norm2 += pi.value[h] * ch.pi_up[h];

  ch.nabla_pi = covariant_derivative(pi, christoffel_horizontal(metric));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k)
      ch.pi_low(i, k) = ch.nabla_pi(i, k) - pi.value[i] * pi.value[k] + 0.5 * metric.g(i, k) * norm2;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t h = 0; h < l; ++h) {
      double s = 0.0;
      for (std::size_t k = 0; k < l; ++k) s += ch.pi_low(i, k) * metric.ginv(h, k);
      ch.pi_mixed(i, h) = s;
    }
  for (std::size_t i = 0; i < l; ++i) ch.alpha += ch.pi_mixed(i, i);
  return ch;
}

CharTensors char_tensor(const AdaptedManifold& m, const OneFormField& pi, const Point& p) {
  return char_tensor(local_frame(m, p), pi);
}

Tensor4 conformal_tensor(const CurvatureAtPoint& curv, const MetricAtPoint& metric, std::size_t l) {
  if (l < 3) throw EllTooSmall("conformal tensor needs l >= 3");
  const Matrix rm = ricci_mixed(curv, metric);
  const double a = 1.0 / double(l - 2);
  const double b = curv.scalar / (double(l - 1) * double(l - 2));
  Tensor4 c(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h)
          c(i, j, k, h) = curv.r_mixed(i, j, k, h) -
                          a * (delta(j, h) * curv.ricci(i, k) - delta(i, h) * curv.ricci(j, k) +
                               metric.g(i, k) * rm(j, h) - metric.g(j, k) * rm(i, h)) +
                          b * (metric.g(i, k) * delta(j, h) - metric.g(j, k) * delta(i, h));
  return c;
}

Tensor4 projective_tensor(const CurvatureAtPoint& curv, std::size_t l) {
  const double a = 1.0 / double(l - 1);
  Tensor4 w(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h)
          w(i, j, k, h) = curv.r_mixed(i, j, k, h) -
                          a * (delta(j, h) * curv.ricci(i, k) - delta(i, h) * curv.ricci(j, k));
  return w;
}

Tensor4 projective_change(const Matrix& pi_low, const Matrix& pi_mixed, double alpha,
                          const MetricAtPoint& metric) {
  const std::size_t l = metric.g.extent(0);
  const double a = 1.0 / double(l - 1);
  Tensor4 c(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h)
          c(i, j, k, h) = a * (delta(j, h) * pi_low(i, k) - delta(i, h) * pi_low(j, k)) +
                          (metric.g(i, k) * pi_mixed(j, h) - metric.g(j, k) * pi_mixed(i, h)) -
                          alpha * a * (delta(j, h) * metric.g(i, k) - delta(i, h) * metric.g(j, k));
  return c;
}

Tensor4 trace_adjusted_side(const CurvatureAtPoint& curv, const MetricAtPoint& metric, std::size_t l) {
  if (l < 3) throw EllTooSmall("trace-adjusted identity needs l >= 3");
  const Matrix rm = ricci_mixed(curv, metric);
  const double shift = curv.scalar / (2.0 * double(l - 1));
  const double a = 1.0 / double(l - 2);
  Tensor4 t(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h) {
          const double braces = delta(j, h) * (curv.ricci(i, k) - shift * metric.g(i, k)) -
                                delta(i, h) * (curv.ricci(j, k) - shift * metric.g(j, k)) +
                                metric.g(i, k) * (rm(j, h) - shift * delta(j, h)) -
                                metric.g(j, k) * (rm(i, h) - shift * delta(i, h));
          t(i, j, k, h) = curv.r_mixed(i, j, k, h) - a * braces;
        }
  return t;
}

double RelationResiduals::max() const {
  double m = std::max({eq33, ricci_relation, eq35, eq311_W});
  for (const auto& r : {pi_from_ricci, pi_mixed_from_ricci, eq38})
    if (r) m = std::max(m, *r);
  return m;
}

RelationResiduals relation_residuals(const AdaptedManifold& m, const OneFormField& pi, const Point& p) {
  const LocalFrame frame = local_frame(m, p);
  const MetricAtPoint& metric = frame.metric;
  const std::size_t l = metric.g.extent(0);

  const CurvatureAtPoint K = curvature_direct(metric, christoffel_horizontal(metric));
  const CurvatureAtPoint R = curvature_direct(metric, connection_coeffs(frame, ConnectionSpec::sns(pi)));
  const CharTensors ch = char_tensor(frame, pi);

  RelationResiduals out;
  out.eq33 = max_abs_diff(R.r_mixed, K.r_mixed + sns_curvature_correction(ch, metric));

  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) {
      const double predicted =
          K.ricci(i, k) + double(l - 2) * ch.pi_low(i, k) + ch.alpha * metric.g(i, k);
      out.ricci_relation = std::max(out.ricci_relation, std::abs(R.ricci(i, k) - predicted));
    }
  out.eq35 = std::abs(R.scalar - K.scalar - 2.0 * double(l - 1) * ch.alpha);

  if (l >= 3) {
    const double shift = (R.scalar - K.scalar) / (2.0 * double(l - 1));
    const Matrix Rm = ricci_mixed(R, metric), Km = ricci_mixed(K, metric);
    double pi_res = 0.0, mixed_res = 0.0;
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t k = 0; k < l; ++k) {
        const double pik = (R.ricci(i, k) - K.ricci(i, k) - shift * metric.g(i, k)) / double(l - 2);
        pi_res = std::max(pi_res, std::abs(pik - ch.pi_low(i, k)));
        const double pih = ((Rm(i, k) - Km(i, k)) - shift * delta(i, k)) / double(l - 2);
        mixed_res = std::max(mixed_res, std::abs(pih - ch.pi_mixed(i, k)));
      }
    out.pi_from_ricci = pi_res;
    out.pi_mixed_from_ricci = mixed_res;
    out.eq38 = max_abs_diff(trace_adjusted_side(R, metric, l), trace_adjusted_side(K, metric, l));
  }

  const Tensor4 W = projective_tensor(R, l);
  const Tensor4 W_hat = projective_tensor(K, l);
  out.eq311_W = max_abs_diff(W, W_hat + projective_change(ch.pi_low, ch.pi_mixed, ch.alpha, metric));
  return out;
}

ProjectiveAux projective_aux(const LocalFrame& frame, const OneFormField& p_form,
                             const OneFormField& q_form) {
  const MetricAtPoint& metric = frame.metric;
  const std::size_t l = metric.g.extent(0);
  if (p_form.size() != l || q_form.size() != l) throw ManifoldError("p and q must have l components");
  const ChristoffelAtPoint hor = christoffel_horizontal(metric);
  const OneFormAtPoint p = evaluate_form(frame, p_form);
  const OneFormAtPoint q = evaluate_form(frame, q_form);

  OneFormAtPoint phi{Vector(l), Matrix(l)}, rho{Vector(l), Matrix(l)};
  for (std::size_t i = 0; i < l; ++i) {
    phi.value[i] = 0.5 * (p.value[i] + q.value[i]);
    rho.value[i] = 0.5 * (q.value[i] - p.value[i]);
    for (std::size_t h = 0; h < l; ++h) {
      phi.frame_grad(h, i) = 0.5 * (p.frame_grad(h, i) + q.frame_grad(h, i));
      rho.frame_grad(h, i) = 0.5 * (q.frame_grad(h, i) - p.frame_grad(h, i));
    }
  }

  ProjectiveAux aux;
  aux.phi = phi.value;
  aux.rho = rho.value;
  aux.nabla_phi = covariant_derivative(phi, hor);
  aux.nabla_rho = covariant_derivative(rho, hor);
  const Matrix nabla_p = covariant_derivative(p, hor);
  const Matrix nabla_q = covariant_derivative(q, hor);
  aux.phi_ij = aux.rho_ij = aux.beta = aux.beta_first = aux.alpha_t = aux.alpha_first = Matrix(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      aux.phi_ij(i, j) = aux.nabla_phi(i, j) - phi.value[i] * phi.value[j];
      aux.rho_ij(i, j) = aux.nabla_rho(i, j) - rho.value[i] * rho.value[j];
      aux.beta_first(i, j) = nabla_p(i, j) - nabla_p(j, i);
      aux.alpha_first(i, j) = nabla_q(i, j) - q.value[i] * q.value[j];
    }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      aux.beta(i, j) = aux.phi_ij(i, j) - aux.phi_ij(j, i) + aux.rho_ij(j, i) - aux.rho_ij(i, j);
      aux.alpha_t(i, j) = aux.phi_ij(i, j) + aux.rho_ij(i, j) - phi.value[i] * rho.value[j] -
                          phi.value[j] * rho.value[i];
    }
  return aux;
}

ProjectiveAux projective_aux(const AdaptedManifold& m, const OneFormField& p_form,
                             const OneFormField& q_form, const Point& point) {
  return projective_aux(local_frame(m, point), p_form, q_form);
}

Tensor4 projective_curvature_correction(const ProjectiveAux& aux) {
  const std::size_t l = aux.beta.extent(0);
  Tensor4 c(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h)
          c(i, j, k, h) = aux.beta(i, j) * delta(k, h) + aux.alpha_t(i, k) * delta(j, h) -
                          aux.alpha_t(j, k) * delta(i, h);
  return c;
}

CurvatureAtPoint rtilde_via_relation(const AdaptedManifold& m, const OneFormField& p_form,
                                     const OneFormField& q_form, const Point& point) {
  const LocalFrame frame = local_frame(m, point);
  const CurvatureAtPoint K = curvature_direct(frame.metric, christoffel_horizontal(frame.metric));
  const ProjectiveAux aux = projective_aux(frame, p_form, q_form);
  return curvature_from_mixed(K.r_mixed + projective_curvature_correction(aux), frame.metric);
}

double closedness_check(const AdaptedManifold& m, const OneFormField& form, const Point& p) {
  const LocalFrame frame = local_frame(m, p);
  const OneFormAtPoint w = evaluate_form(frame, form);
  const std::size_t l = w.value.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      worst = std::max(worst, std::abs(w.frame_grad(i, j) - w.frame_grad(j, i)));
  return worst;
}

}  // namespace nsr
