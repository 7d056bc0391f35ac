#include "nsr/connections.hpp"

#include <algorithm>
#include <cmath>

namespace nsr {

OneFormField OneFormField::zero(std::size_t l) {
  return OneFormField{std::vector<Expr>(l, Expr::constant(0.0))};
}

OneFormField OneFormField::parse(std::string_view text, std::size_t n, std::size_t l) {
  OneFormField form;
  std::size_t depth = 0, start = 0;
  for (std::size_t c = 0; c <= text.size(); ++c) {
    if (c < text.size() && text[c] == '(') ++depth;
    if (c < text.size() && text[c] == ')' && depth > 0) --depth;
    if (c == text.size() || (text[c] == ',' && depth == 0)) {
      form.components.push_back(nsr::parse(text.substr(start, c - start), n));
      start = c + 1;
    }
  }
  if (form.size() != l)
    throw ManifoldError("1-form needs " + std::to_string(l) + " components, got " +
                        std::to_string(form.size()));
  return form;
}

OneFormField OneFormField::combine(double a, const OneFormField& p, double b, const OneFormField& q) {
  OneFormField r;
  for (std::size_t i = 0; i < p.size(); ++i)
    r.components.push_back(Expr::constant(a) * p.components[i] + Expr::constant(b) * q.components[i]);
  return r;
}

LocalFrame local_frame(const AdaptedManifold& m, const Point& p) {
  return LocalFrame{p, metric_at(m, p), frame_coefficients(m, p)};
}

OneFormAtPoint evaluate_form(const LocalFrame& frame, const OneFormField& form) {
  const std::size_t l = form.size();
  OneFormAtPoint out{Vector(l), Matrix(l)};
  for (std::size_t i = 0; i < l; ++i) {
    const Jet2 jet = eval_jet2(form.components[i], frame.point);
    out.value[i] = jet.value();
    for (std::size_t h = 0; h < l; ++h) out.frame_grad(h, i) = frame_derivative(jet, frame.A, h);
  }
  return out;
}

void ConnectionSpec::check(std::size_t l) const {
  auto need = [l](const OneFormField& f, const char* name) {
    if (f.size() != l)
      throw ManifoldError(std::string("1-form ") + name + " must have " + std::to_string(l) +
                          " components");
  };
  if (kind == Kind::SNS) need(pi, "pi");
  if (kind == Kind::ProjectiveSNS) {
    need(p, "p");
    need(q, "q");
  }
}

const char* to_string(ConnectionSpec::Kind kind) {
  switch (kind) {
    case ConnectionSpec::Kind::Horizontal: return "horizontal";
    case ConnectionSpec::Kind::SNS: return "sns";
    case ConnectionSpec::Kind::ProjectiveSNS: return "projective_sns";
  }
  return "?";
}

namespace {

// dginv(m, k, h) = ∂_m g^{kh} = −g^{ka} ∂_m g_ab g^{bh}
Tensor3 inverse_metric_derivative(const MetricAtPoint& metric) {
  const std::size_t l = metric.g.extent(0);
  Tensor3 d(l);
  for (std::size_t m = 0; m < l; ++m)
    for (std::size_t k = 0; k < l; ++k)
      for (std::size_t h = 0; h < l; ++h) {
        double s = 0.0;
        for (std::size_t a = 0; a < l; ++a)
          for (std::size_t b = 0; b < l; ++b) s += metric.ginv(k, a) * metric.dg(a, b, m) * metric.ginv(b, h);
        d(m, k, h) = -s;
      }
  return d;
}

}  // namespace

ChristoffelAtPoint christoffel_horizontal(const MetricAtPoint& metric) {
  const std::size_t l = metric.g.extent(0);
  // First-kind symbols lowered on the first slot: L(h, i, j) and their partials.
  Tensor3 L(l);
  Tensor4 dL(l);  // dL(m, h, i, j)
  for (std::size_t h = 0; h < l; ++h)
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) {
        L(h, i, j) = 0.5 * (metric.dg(i, h, j) + metric.dg(j, h, i) - metric.dg(i, j, h));
        for (std::size_t m = 0; m < l; ++m)
          dL(m, h, i, j) =
              0.5 * (metric.ddg(i, h, j, m) + metric.ddg(j, h, i, m) - metric.ddg(i, j, h, m));
      }
  const Tensor3 dginv = inverse_metric_derivative(metric);

  ChristoffelAtPoint c{Tensor3(l), Tensor4(l)};
  for (std::size_t k = 0; k < l; ++k)
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) {
        double s = 0.0;
        for (std::size_t h = 0; h < l; ++h) s += metric.ginv(k, h) * L(h, i, j);
        c.gamma(k, i, j) = s;
        for (std::size_t m = 0; m < l; ++m) {
          double d = 0.0;
          for (std::size_t h = 0; h < l; ++h) d += dginv(m, k, h) * L(h, i, j) + metric.ginv(k, h) * dL(m, h, i, j);
          c.dgamma(m, k, i, j) = d;
        }
      }
  // L is symmetric in (i, j) term by term; enforce bitwise symmetry of the sums too.
  for (std::size_t k = 0; k < l; ++k)
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = i + 1; j < l; ++j) {
        c.gamma(k, j, i) = c.gamma(k, i, j);
        for (std::size_t m = 0; m < l; ++m) c.dgamma(m, k, j, i) = c.dgamma(m, k, i, j);
      }
  return c;
}

ChristoffelAtPoint christoffel_horizontal(const AdaptedManifold& m, const Point& p) {
  return christoffel_horizontal(metric_at(m, p));
}

ChristoffelAtPoint connection_coeffs(const LocalFrame& frame, const ConnectionSpec& spec) {
  const MetricAtPoint& metric = frame.metric;
  const std::size_t l = metric.g.extent(0);
  spec.check(l);
  ChristoffelAtPoint c = christoffel_horizontal(metric);

  switch (spec.kind) {
    case ConnectionSpec::Kind::Horizontal: break;

    case ConnectionSpec::Kind::SNS: {
      const OneFormAtPoint pi = evaluate_form(frame, spec.pi);
      const Tensor3 dginv = inverse_metric_derivative(metric);
      Vector pi_up(l, 0.0);
      Matrix dpi_up(l);  // dpi_up(m, k) = e_m(π^k)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h) {
          pi_up[k] += metric.ginv(k, h) * pi.value[h];
          for (std::size_t m = 0; m < l; ++m)
            dpi_up(m, k) += dginv(m, k, h) * pi.value[h] + metric.ginv(k, h) * pi.frame_grad(m, h);
        }
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t i = 0; i < l; ++i)
          for (std::size_t j = 0; j < l; ++j) {
            c.gamma(k, i, j) += delta(i, k) * pi.value[j] - metric.g(i, j) * pi_up[k];
            for (std::size_t m = 0; m < l; ++m)
              c.dgamma(m, k, i, j) += delta(i, k) * pi.frame_grad(m, j) -
                                      metric.dg(i, j, m) * pi_up[k] - metric.g(i, j) * dpi_up(m, k);
          }
      break;
    }

    case ConnectionSpec::Kind::ProjectiveSNS: {
      const OneFormAtPoint p = evaluate_form(frame, spec.p);
      const OneFormAtPoint q = evaluate_form(frame, spec.q);
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t i = 0; i < l; ++i)
          for (std::size_t j = 0; j < l; ++j) {
            c.gamma(k, i, j) += p.value[i] * delta(j, k) + q.value[j] * delta(i, k);
            for (std::size_t m = 0; m < l; ++m)
              c.dgamma(m, k, i, j) += p.frame_grad(m, i) * delta(j, k) + q.frame_grad(m, j) * delta(i, k);
          }
      break;
    }
  }
  return c;
}

ChristoffelAtPoint connection_coeffs(const AdaptedManifold& m, const ConnectionSpec& spec,
                                     const Point& p) {
  return connection_coeffs(local_frame(m, p), spec);
}

Tensor3 torsion(const ChristoffelAtPoint& c) {
  const std::size_t l = c.gamma.extent(0);
  Tensor3 t(l);
  for (std::size_t k = 0; k < l; ++k)
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) t(k, i, j) = c.gamma(k, i, j) - c.gamma(k, j, i);
  return t;
}

Tensor3 torsion(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p) {
  return torsion(connection_coeffs(m, spec, p));
}

double compatibility_residual(const MetricAtPoint& metric, const ChristoffelAtPoint& c) {
  const std::size_t l = metric.g.extent(0);
  double worst = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k) {
        double r = metric.dg(j, k, i);
        for (std::size_t e = 0; e < l; ++e)
          r -= c.gamma(e, i, j) * metric.g(e, k) + c.gamma(e, i, k) * metric.g(j, e);
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

double compatibility_residual(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p) {
  const LocalFrame frame = local_frame(m, p);
  return compatibility_residual(frame.metric, connection_coeffs(frame, spec));
}

}  // namespace nsr
