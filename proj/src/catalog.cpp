#include "nsr/catalog.hpp"

#include <charconv>
#include <random>
#include <stdexcept>

namespace nsr {

namespace {

using ExprMatrix = AdaptedManifold::ExprMatrix;

Expr x(std::size_t one_based) { return Expr::variable(one_based - 1); }
Expr c(double v) { return Expr::constant(v); }

std::vector<Interval> box(std::size_t n, double lo = -1.0, double hi = 1.0) {
  return std::vector<Interval>(n, Interval{lo, hi});
}

ExprMatrix identity_metric(std::size_t l) {
  ExprMatrix g(l, std::vector<Expr>(l, c(0.0)));
  for (std::size_t i = 0; i < l; ++i) g[i][i] = c(1.0);
  return g;
}

OneFormField form(std::vector<Expr> comps) { return OneFormField{std::move(comps)}; }

CatalogEntry flat3() {
  ExprMatrix A = {{c(0.3), c(-0.7)}, {c(1.1), c(0.2)}, {c(-0.4), c(0.9)}};
  AdaptedManifold m(5, 3, identity_metric(3), A, box(5));
  FormMap forms;
  forms["special_q"] = lemma43_q(3);
  return {"flat3", m, forms, "Euclidean horizontal metric with a constant Pfaffian matrix; K = 0."};
}

CatalogEntry heisenberg() {
  ExprMatrix A = {{c(-0.5) * x(2)}, {c(0.5) * x(1)}};
  AdaptedManifold m(3, 2, identity_metric(2), A, box(3));
  return {"heisenberg", m, {},
          "First Heisenberg group, symmetric gauge: e1 = dx + (y/2)dz, e2 = dy - (x/2)dz."};
}

CatalogEntry particle() {
  ExprMatrix g = {{c(1.0) + Expr::power(x(2), 2), c(0.0)}, {c(0.0), c(1.0)}};
  ExprMatrix A = {{-x(2)}, {c(0.0)}};
  AdaptedManifold m(3, 2, g, A, box(3));
  return {"particle", m, {},
          "Free particle with the constraint z' = y x'; X = dx + y dz, Y = dy, metric induced from R^3."};
}

CatalogEntry particle3() {
  ExprMatrix g = {{c(1.0) + Expr::power(x(2), 2), c(0.0), c(0.0)},
                  {c(0.0), c(1.0), c(0.0)},
                  {c(0.0), c(0.0), c(1.0) + Expr::power(x(1), 2)}};
  ExprMatrix A = {{-x(2)}, {c(0.0)}, {c(0.0)}};
  AdaptedManifold m(4, 3, g, A, box(4));
  return {"particle3", m, {}, "Anisotropic l = 3 extension of the particle metric."};
}

CatalogEntry hyperbolic3() {
  const Expr h = c(1.0) / Expr::power(x(3), 2);
  ExprMatrix g = {{h, c(0.0), c(0.0)}, {c(0.0), h, c(0.0)}, {c(0.0), c(0.0), h}};
  ExprMatrix A = {{x(2) * x(3)}, {-x(1)}, {c(0.5) * x(1) * x(2)}};
  std::vector<Interval> domain = box(4);
  domain[2] = Interval{0.5, 2.0};
  AdaptedManifold m(4, 3, g, A, domain);

  const OneFormField dlog = form({c(0.0), c(0.0), c(1.0) / x(3)});
  FormMap forms;
  forms["iso_pi"] = dlog;
  forms["special_p"] = OneFormField::zero(3);
  forms["special_q"] = dlog;
  forms["null_q"] = dlog;
  return {"hyperbolic3", m, forms, "Upper half-space metric delta_ij / x3^2; constant horizontal curvature -1."};
}

template <class T>
T parse_field(std::string_view text, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ManifoldError(std::string("bad random ") + what + " '" + std::string(text) + "'");
  return v;
}

CatalogEntry random_entry(std::string_view spec) {
  RandomMetricConfig cfg;
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i)
    if (i == spec.size() || spec[i] == ':') {
      parts.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  if (parts.size() > 4) throw ManifoldError("random takes at most seed:degree:amplitude");
  if (parts.size() > 1) cfg.seed = parse_field<std::uint64_t>(parts[1], "seed");
  if (parts.size() > 2) cfg.degree = parse_field<unsigned>(parts[2], "degree");
  if (parts.size() > 3) cfg.amplitude = std::stod(std::string(parts[3]));
  std::string name = "random:" + std::to_string(cfg.seed) + ":" + std::to_string(cfg.degree) + ":" +
                     std::string(parts.size() > 3 ? parts[3] : "0.3");
  return {name, generate_random_manifold(cfg, 5, 3), {}, "Random nearly sub-Riemannian manifold."};
}

void monomials(std::size_t nvars, unsigned degree, std::vector<unsigned>& cur, std::size_t pos,
               std::vector<std::vector<unsigned>>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  unsigned used = 0;
  for (std::size_t i = 0; i < pos; ++i) used += cur[i];
  for (unsigned e = 0; used + e <= degree; ++e) {
    cur[pos] = e;
    monomials(nvars, degree, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"flat3", "heisenberg", "particle", "particle3", "hyperbolic3", "random"};
}

CatalogEntry catalog_get(std::string_view name) {
  if (name == "flat3") return flat3();
  if (name == "heisenberg") return heisenberg();
  if (name == "particle") return particle();
  if (name == "particle3") return particle3();
  if (name == "hyperbolic3") return hyperbolic3();
  if (name == "random" || name.substr(0, 7) == "random:") return random_entry(name);
  throw ManifoldError("unknown catalog entry '" + std::string(name) + "'");
}

Expr random_polynomial(const std::vector<std::size_t>& vars, unsigned degree, double scale,
                       std::uint64_t seed) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), 0x706f6c79u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coef(-scale, scale);

  std::vector<std::vector<unsigned>> terms;
  std::vector<unsigned> cur(vars.size(), 0);
  monomials(vars.size(), degree, cur, 0, terms);

  Expr sum = c(0.0);
  for (const auto& t : terms) {
    Expr term = c(coef(rng));
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (t[v] == 1) term = term * Expr::variable(vars[v]);
      if (t[v] > 1) term = term * Expr::power(Expr::variable(vars[v]), int(t[v]));
    }
    sum = sum + term;
  }
  return sum;
}

AdaptedManifold generate_random_manifold(const RandomMetricConfig& cfg, std::size_t n, std::size_t l) {
  if (cfg.degree > 3 || cfg.amplitude > 1.0 || cfg.amplitude < 0.0)
    throw ManifoldError("random manifold needs degree <= 3 and 0 <= amplitude <= 1");
  if (l < 2 || l >= n) throw ManifoldError("random manifold needs 2 <= l < n");
  std::vector<std::size_t> hvars(l), allvars(n);
  for (std::size_t i = 0; i < n; ++i) allvars[i] = i;
  for (std::size_t i = 0; i < l; ++i) hvars[i] = i;

  std::uint64_t stream = cfg.seed * 1000003u;
  std::vector<std::vector<Expr>> B(l, std::vector<Expr>(l));
  for (auto& row : B)
    for (auto& b : row) b = cfg.amplitude == 0.0 ? c(0.0) : random_polynomial(hvars, cfg.degree, cfg.amplitude, ++stream);

  ExprMatrix g(l, std::vector<Expr>(l));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i; j < l; ++j) {
      Expr s = c(i == j ? 1.0 : 0.0);
      for (std::size_t k = 0; k < l; ++k) s = s + B[k][i] * B[k][j];
      g[i][j] = g[j][i] = s;
    }

  ExprMatrix A(l, std::vector<Expr>(n - l));
  for (auto& row : A)
    for (auto& a : row) a = random_polynomial(allvars, std::max(cfg.degree, 1u), 1.0, ++stream);
  return AdaptedManifold(n, l, g, A, box(n));
}

OneFormField dhf(const AdaptedManifold& m, const Expr& f) {
  OneFormField out;
  for (std::size_t i = 0; i < m.l(); ++i) {
    Expr e = differentiate(f, i);
    for (std::size_t a = 0; a < m.vertical_dim(); ++a) {
      const Expr fv = differentiate(f, m.l() + a);
      if (!fv.is_constant(0.0)) e = e - m.A(i, a) * fv;
    }
    out.components.push_back(e);
  }
  return out;
}

OneFormField lemma43_q(std::size_t l) {
  Expr u = c(1.0);
  for (std::size_t h = 1; h <= l; ++h) u = u + Expr::power(x(h), 2);
  OneFormField q;
  for (std::size_t j = 1; j <= l; ++j) q.components.push_back(c(-2.0) * x(j) / u);
  return q;
}

OneFormField const_form(const std::vector<double>& values) {
  OneFormField f;
  for (double v : values) f.components.push_back(c(v));
  return f;
}

OneFormField random_one_form(std::size_t n, std::size_t l, unsigned degree, double scale,
                             std::uint64_t seed) {
  std::vector<std::size_t> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = i;
  OneFormField f;
  for (std::size_t i = 0; i < l; ++i)
    f.components.push_back(random_polynomial(vars, degree, scale, seed * 7919u + i));
  return f;
}

}  // namespace nsr
