#include "nsr/chart.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace nsr {

AdaptedManifold::AdaptedManifold(std::size_t n, std::size_t l, ExprMatrix g, ExprMatrix A,
                                 std::vector<Interval> domain)
    : n_(n), l_(l), g_(std::move(g)), A_(std::move(A)), domain_(std::move(domain)) {
  if (l_ < 2 || l_ >= n_)
    throw ManifoldError("need 2 <= l < n, got n=" + std::to_string(n_) + " l=" + std::to_string(l_));
  if (g_.size() != l_) throw ManifoldError("g must have l rows");
  for (std::size_t i = 0; i < l_; ++i) {
    if (g_[i].size() != l_) throw ManifoldError("g row " + std::to_string(i + 1) + " must have l entries");
    for (std::size_t j = 0; j < l_; ++j)
      if (g_[i][j].arity() > n_)
        throw ManifoldError("g[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                            "] uses a coordinate beyond x" + std::to_string(n_));
  }
  for (std::size_t i = 0; i < l_; ++i)
    for (std::size_t j = i + 1; j < l_; ++j)
      if (to_string(g_[i][j]) != to_string(g_[j][i]))
        throw ManifoldError("g is not symmetric: g[" + std::to_string(i + 1) + "][" +
                            std::to_string(j + 1) + "] differs from g[" + std::to_string(j + 1) +
                            "][" + std::to_string(i + 1) + "]");
  if (A_.size() != l_) throw ManifoldError("A must have l rows");
  for (std::size_t i = 0; i < l_; ++i) {
    if (A_[i].size() != n_ - l_)
      throw ManifoldError("A row " + std::to_string(i + 1) + " must have n-l entries");
    for (const Expr& e : A_[i])
      if (e.arity() > n_) throw ManifoldError("A uses a coordinate beyond x" + std::to_string(n_));
  }
  if (domain_.size() != n_) throw ManifoldError("domain must have n intervals");
  for (std::size_t c = 0; c < n_; ++c)
    if (!(domain_[c].lo < domain_[c].hi) || !std::isfinite(domain_[c].lo) ||
        !std::isfinite(domain_[c].hi))
      throw ManifoldError("domain interval for x" + std::to_string(c + 1) + " must satisfy lo < hi");
}

MetricAtPoint metric_at(const AdaptedManifold& m, const Point& p) {
  const std::size_t l = m.l();
  MetricAtPoint out{Matrix(l), Matrix(l), Tensor3(l), Tensor4(l)};
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i; j < l; ++j) {
      const Jet2 jet = eval_jet2(m.g(i, j), p);
      out.g(i, j) = out.g(j, i) = jet.value();
      for (std::size_t k = 0; k < l; ++k) {
        out.dg(i, j, k) = out.dg(j, i, k) = jet.grad(k);
        for (std::size_t q = 0; q < l; ++q) out.ddg(i, j, k, q) = out.ddg(j, i, k, q) = jet.hess(k, q);
      }
    }
  }

  Eigen::MatrixXd g(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) g(i, j) = out.g(i, j);
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("metric is not positive definite");
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(l, l));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i; j < l; ++j) out.ginv(i, j) = out.ginv(j, i) = 0.5 * (inv(i, j) + inv(j, i));
  return out;
}

Matrix frame_coefficients(const AdaptedManifold& m, const Point& p) {
  Matrix A({m.l(), m.vertical_dim()});
  for (std::size_t i = 0; i < m.l(); ++i)
    for (std::size_t a = 0; a < m.vertical_dim(); ++a) A(i, a) = eval(m.A(i, a), p);
  return A;
}

double frame_derivative(const Jet2& f, const Matrix& A, std::size_t i) {
  const std::size_t l = A.extent(0);
  double r = f.grad(i);
  for (std::size_t a = 0; a < A.extent(1); ++a) r -= A(i, a) * f.grad(l + a);
  return r;
}

double frame_derivative(const AdaptedManifold& m, const Expr& f, std::size_t i, const Point& p) {
  return frame_derivative(eval_jet2(f, p), frame_coefficients(m, p), i);
}

Tensor3 vertical_bracket(const AdaptedManifold& m, const Point& p) {
  const std::size_t l = m.l(), v = m.vertical_dim();
  const Matrix A = frame_coefficients(m, p);
  std::vector<std::vector<Jet2>> jets(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t a = 0; a < v; ++a) jets[i].push_back(eval_jet2(m.A(i, a), p));
  Tensor3 M({l, l, v});
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t a = 0; a < v; ++a)
        M(i, j, a) = frame_derivative(jets[i][a], A, j) - frame_derivative(jets[j][a], A, i);
  return M;
}

double lambda_check(const AdaptedManifold&, const Point&) { return 0.0; }

Point sample_point(const AdaptedManifold& m, std::uint64_t seed, std::size_t index,
                   const PointProbe& probe) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::string last_error;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Point p;
    p.coords.reserve(m.n());
    for (const Interval& iv : m.domain())
      p.coords.push_back(std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng));
    try {
      if (probe)
        probe(p);
      else
        (void)metric_at(m, p);
      return p;
    } catch (const DomainError& e) {
      last_error = e.what();
    } catch (const NotPositiveDefinite& e) {
      last_error = e.what();
    }
  }
  throw SamplingError("no valid point after 100 attempts (sample " + std::to_string(index) +
                      "): " + last_error);
}

ValidationReport validate(const AdaptedManifold& m, std::size_t samples, std::uint64_t seed) {
  const std::size_t l = m.l(), n = m.n();
  ValidationReport report;
  report.samples = samples;
  auto evaluable = [&](const Point& p) {
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < l; ++j) (void)eval(m.g(i, j), p);
      for (std::size_t a = 0; a < m.vertical_dim(); ++a) (void)eval(m.A(i, a), p);
    }
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const Point p = sample_point(m, seed, s, evaluable);
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < l; ++j) {
        const Jet2 gij = eval_jet2(m.g(i, j), p);
        const Jet2 gji = eval_jet2(m.g(j, i), p);
        double sym = std::abs(gij.value() - gji.value());
        for (std::size_t k = 0; k < n; ++k) sym = std::max(sym, std::abs(gij.grad(k) - gji.grad(k)));
        report.symmetry_residual = std::max(report.symmetry_residual, sym);
        for (std::size_t a = l; a < n; ++a) {
          report.omega_residual = std::max(report.omega_residual, std::abs(gij.grad(a)));
          for (std::size_t k = 0; k < n; ++k)
            report.omega_hessian_residual = std::max(report.omega_hessian_residual, std::abs(gij.hess(a, k)));
        }
      }
    }
    try {
      (void)metric_at(m, p);
    } catch (const NotPositiveDefinite&) {
      ++report.spd_failures;
    }
  }
  return report;
}

}  // namespace nsr
