#include "nsr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "nsr/weyl.hpp"

namespace nsr {

namespace {

struct Ctx {
  const AdaptedManifold& m;
  const FormMap& forms;
  double tol;

  const OneFormField& form(const char* key) const { return forms.at(key); }
};

struct SampleResult {
  std::vector<std::pair<std::string, double>> parts;
  double residual = 0.0;
  bool premise_met = false;

  void add(std::string name, double v) { parts.emplace_back(std::move(name), v); }
};

using CheckFn = std::function<SampleResult(const Ctx&, const Point&, std::uint64_t)>;

struct CheckDef {
  std::string id;
  double tol;
  std::size_t min_l;
  bool implication;  ///< some component only counts once a premise holds
  CheckFn fn;
};

double implied(double premise, double conclusion, double tol, SampleResult& r) {
  if (premise >= tol) return 0.0;
  r.premise_met = true;
  return conclusion;
}

double asym(const Matrix& a) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.extent(0); ++i)
    for (std::size_t j = i + 1; j < a.extent(1); ++j) w = std::max(w, std::abs(a(i, j) - a(j, i)));
  return w;
}

/// max |a − λ g| with λ = tr(a g⁻¹)/ℓ.
double metric_fit(const Matrix& a, const MetricAtPoint& metric) {
  const std::size_t l = a.extent(0);
  double lambda = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) lambda += a(i, k) * metric.ginv(i, k);
  lambda /= double(l);
  double w = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) w = std::max(w, std::abs(a(i, k) - lambda * metric.g(i, k)));
  return w;
}

struct SuiteResiduals {
  double antisym_kh = 0.0, antisym_ij = 0.0, pair = 0.0, bianchi = 0.0;
  double special() const { return std::max({antisym_kh, pair, bianchi}); }
};

SuiteResiduals symmetry_suite(const Tensor4& r) {
  const std::size_t l = r.extent(0);
  SuiteResiduals s;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h) {
          s.antisym_kh = std::max(s.antisym_kh, std::abs(r(i, j, k, h) + r(i, j, h, k)));
          s.antisym_ij = std::max(s.antisym_ij, std::abs(r(i, j, k, h) + r(j, i, k, h)));
          s.pair = std::max(s.pair, std::abs(r(i, j, k, h) - r(k, h, i, j)));
          s.bianchi = std::max(s.bianchi, std::abs(r(i, j, k, h) + r(j, k, i, h) + r(k, i, j, h)));
        }
  return s;
}

CurvatureAtPoint horizontal_curvature(const LocalFrame& f) {
  return curvature_direct(f.metric, christoffel_horizontal(f.metric));
}

CurvatureAtPoint curvature_of(const LocalFrame& f, const ConnectionSpec& spec) {
  return curvature_direct(f.metric, connection_coeffs(f, spec));
}

/// Spread of sectional curvature over random planes, and max |R_ijkh − λ̄(g_ih g_jk − g_jh g_ik)|.
std::pair<double, double> isotropy(const CurvatureAtPoint& c, const MetricAtPoint& metric,
                                   std::uint64_t seed) {
  const IsotropyResult iso = isotropy_check(c, metric, 6, seed);
  return {iso.lambda_spread, iso.residual};
}

SampleResult check_sym26(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const SuiteResiduals s = symmetry_suite(horizontal_curvature(f).r_low);
  SampleResult r;
  r.add("antisym_kh", s.antisym_kh);
  r.add("antisym_ij", s.antisym_ij);
  r.add("pair", s.pair);
  r.add("bianchi", s.bianchi);
  r.residual = std::max({s.antisym_kh, s.antisym_ij, s.pair, s.bianchi});
  return r;
}

SampleResult check_bianchi1(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const CurvatureAtPoint K = horizontal_curvature(f);
  const std::size_t l = ctx.m.l();
  double w = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h)
          w = std::max(w, std::abs(K.r_mixed(i, j, k, h) + K.r_mixed(j, k, i, h) + K.r_mixed(k, i, j, h)));
  SampleResult r;
  r.add("cyclic", w);
  r.residual = w;
  return r;
}

SampleResult check_twopath_sns(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const OneFormField& pi = ctx.form("pi");
  const CurvatureAtPoint R = curvature_of(f, ConnectionSpec::sns(pi));
  const CurvatureAtPoint K = horizontal_curvature(f);
  const CharTensors ch = char_tensor(f, pi);
  const CurvatureAtPoint Rrel =
      curvature_from_mixed(K.r_mixed + sns_curvature_correction(ch, f.metric), f.metric);
  SampleResult r;
  r.add("mixed", max_abs_diff(R.r_mixed, Rrel.r_mixed));
  r.add("ricci", max_abs_diff(R.ricci, Rrel.ricci));
  r.add("scalar", std::abs(R.scalar - Rrel.scalar));
  for (const auto& [_, v] : r.parts) r.residual = std::max(r.residual, v);
  return r;
}

SampleResult check_twopath_psns(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const OneFormField &pf = ctx.form("p"), &qf = ctx.form("q");
  const CurvatureAtPoint R = curvature_of(f, ConnectionSpec::projective(pf, qf));
  const CurvatureAtPoint K = horizontal_curvature(f);
  const ProjectiveAux aux = projective_aux(f, pf, qf);
  const Tensor4 Rrel = K.r_mixed + projective_curvature_correction(aux);
  const std::size_t l = ctx.m.l();
  double ricci = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) {
      const double pred = K.ricci(i, k) + aux.beta(i, k) + double(l - 1) * aux.alpha_t(i, k);
      ricci = std::max(ricci, std::abs(R.ricci(i, k) - pred));
    }
  SampleResult r;
  r.add("mixed", max_abs_diff(R.r_mixed, Rrel));
  r.add("ricci", ricci);
  r.add("beta_forms", max_abs_diff(aux.beta, aux.beta_first));
  r.add("alpha_forms", max_abs_diff(aux.alpha_t, aux.alpha_first));
  for (const auto& [_, v] : r.parts) r.residual = std::max(r.residual, v);
  return r;
}

SampleResult check_compat(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  SampleResult r;
  r.add("horizontal", compatibility_residual(f.metric, christoffel_horizontal(f.metric)));
  r.add("sns", compatibility_residual(f.metric, connection_coeffs(f, ConnectionSpec::sns(ctx.form("pi")))));
  r.residual = std::max(r.parts[0].second, r.parts[1].second);
  return r;
}

SampleResult check_torsion31(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const OneFormField& pi = ctx.form("pi");
  const Tensor3 T = torsion(connection_coeffs(f, ConnectionSpec::sns(pi)));
  const OneFormAtPoint w = evaluate_form(f, pi);
  const std::size_t l = ctx.m.l();
  double shape = 0.0;
  for (std::size_t k = 0; k < l; ++k)
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j)
        shape = std::max(shape, std::abs(T(k, i, j) - (w.value[j] * delta(i, k) - w.value[i] * delta(j, k))));
  SampleResult r;
  r.add("sns_shape", shape);
  r.add("horizontal", torsion(christoffel_horizontal(f.metric)).max_abs());
  r.residual = std::max(r.parts[0].second, r.parts[1].second);
  return r;
}

SampleResult check_thm31(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const std::size_t l = ctx.m.l();
  const Tensor4 C = conformal_tensor(curvature_of(f, ConnectionSpec::sns(ctx.form("pi"))), f.metric, l);
  const Tensor4 C_hat = conformal_tensor(horizontal_curvature(f), f.metric, l);
  SampleResult r;
  r.add("C_minus_Chat", max_abs_diff(C, C_hat));
  r.residual = r.parts[0].second;
  return r;
}

SampleResult check_thm32_fwd(const Ctx& ctx, const Point& p, std::uint64_t seed) {
  const LocalFrame f = local_frame(ctx.m, p);
  const std::size_t l = ctx.m.l();
  std::mt19937_64 rng(seed);
  const double lambda = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
  Matrix pi_low(l), pi_mixed(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k) {
      pi_low(i, k) = lambda * f.metric.g(i, k);
      pi_mixed(i, k) = lambda * delta(i, k);
    }
  SampleResult r;
  r.add("substituted", projective_change(pi_low, pi_mixed, lambda * double(l), f.metric).max_abs());

  const OneFormField& pi = ctx.form("iso_pi");
  const CharTensors ch = char_tensor(f, pi);
  const double iso = metric_fit(ch.pi_low, f.metric);
  const double dW = max_abs_diff(projective_tensor(curvature_of(f, ConnectionSpec::sns(pi)), l),
                                 projective_tensor(horizontal_curvature(f), l));
  r.add("witness_isotropy", iso);
  r.add("witness_W_minus_What", dW);
  r.residual = std::max(r.parts[0].second, implied(iso, dW, ctx.tol, r));
  r.premise_met = true;
  return r;
}

SampleResult check_thm33(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const std::size_t l = ctx.m.l();
  const OneFormField& pi = ctx.form("pi");
  const CurvatureAtPoint R = curvature_of(f, ConnectionSpec::sns(pi));
  const CurvatureAtPoint K = horizontal_curvature(f);
  const CharTensors ch = char_tensor(f, pi);
  const double same = max_abs_diff(R.r_mixed, K.r_mixed);
  SampleResult r;
  r.add("scalar_shift", std::abs(R.scalar - K.scalar - 2.0 * double(l - 1) * ch.alpha));
  r.add("R_minus_K", same);
  r.add("alpha", std::abs(ch.alpha));
  r.residual = std::max(r.parts[0].second, implied(same, std::abs(ch.alpha), ctx.tol, r));
  r.premise_met = true;
  return r;
}

SampleResult check_thm34(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const std::size_t l = ctx.m.l();
  const MetricAtPoint& metric = f.metric;
  const CurvatureAtPoint K = horizontal_curvature(f);
  const double dl = double(l);

  CharTensors ch;
  ch.pi_low = ch.pi_mixed = Matrix(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k)
      ch.pi_low(i, k) = (K.ricci(i, k) - K.scalar / (2.0 * (dl - 1.0)) * metric.g(i, k)) / (2.0 - dl);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t h = 0; h < l; ++h)
      for (std::size_t k = 0; k < l; ++k) ch.pi_mixed(i, h) += ch.pi_low(i, k) * metric.ginv(h, k);
  for (std::size_t i = 0; i < l; ++i) ch.alpha += ch.pi_mixed(i, i);

  const CurvatureAtPoint R = curvature_from_mixed(K.r_mixed + sns_curvature_correction(ch, metric), metric);
  const Tensor4 C_hat = conformal_tensor(K, metric, l);
  const double c_hat = C_hat.max_abs(), rmax = R.r_mixed.max_abs();

  SampleResult r;
  r.add("R_minus_Chat", max_abs_diff(R.r_mixed, C_hat));
  r.add("alpha_trace", std::abs(ch.alpha - K.scalar / (2.0 * (1.0 - dl))));
  r.add("ricci", R.ricci.max_abs());
  r.add("scalar", std::abs(R.scalar));
  r.add("Chat", c_hat);
  r.add("R", rmax);
  r.residual = std::max({r.parts[0].second, r.parts[1].second, r.parts[2].second, r.parts[3].second,
                         implied(c_hat, rmax, ctx.tol, r)});
  r.premise_met = true;
  return r;
}

SampleResult check_prop35(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  auto probe = [&](const OneFormField& pi) {
    const double suite = symmetry_suite(curvature_of(f, ConnectionSpec::sns(pi)).r_low).special();
    const double nabla_asym = asym(char_tensor(f, pi).nabla_pi);
    return std::pair{suite, nabla_asym};
  };
  const auto [closed_suite, closed_asym] = probe(ctx.form("closed_pi"));
  const auto [open_suite, open_asym] = probe(ctx.form("open_pi"));
  const auto [gen_suite, gen_asym] = probe(ctx.form("pi"));

  SampleResult r;
  r.add("closed_suite", closed_suite);
  r.add("closed_nabla_asym", closed_asym);
  r.add("open_suite", open_suite);
  r.add("open_shortfall", std::max(0.0, 10.0 * ctx.tol - open_suite));
  r.add("pi_suite", gen_suite);
  r.add("pi_nabla_asym", gen_asym);
  r.residual = std::max({closed_suite, closed_asym, r.parts[3].second,
                         implied(gen_asym, gen_suite, ctx.tol, r), implied(gen_suite, gen_asym, ctx.tol, r)});
  r.premise_met = true;
  return r;
}

SampleResult check_thm37(const Ctx& ctx, const Point& p, std::uint64_t seed) {
  const LocalFrame f = local_frame(ctx.m, p);
  const CurvatureAtPoint R = curvature_of(f, ConnectionSpec::sns(ctx.form("iso_pi")));
  const auto [spread, fit] = isotropy(R, f.metric, seed);
  const double iso = std::max(spread, fit);
  const double W = projective_tensor(R, ctx.m.l()).max_abs();
  SampleResult r;
  r.add("spread", spread);
  r.add("isotropy_fit", fit);
  r.add("W", W);
  r.residual = std::max(implied(iso, W, ctx.tol, r), implied(W, iso, ctx.tol, r));
  return r;
}

SampleResult check_thm38(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const std::size_t l = ctx.m.l();
  const OneFormField& pi = ctx.form("iso_pi");
  const CurvatureAtPoint R = curvature_of(f, ConnectionSpec::sns(pi));
  const CurvatureAtPoint K = horizontal_curvature(f);
  const CharTensors ch = char_tensor(f, pi);
  const double W = projective_tensor(R, l).max_abs();
  const double C_hat = conformal_tensor(K, f.metric, l).max_abs();
  double ricci_fit = 0.0;
  const double shift = (K.scalar + double(l - 2) * ch.alpha) / double(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      ricci_fit = std::max(ricci_fit, std::abs(double(l - 2) * ch.pi_low(i, j) - shift * f.metric.g(i, j) + K.ricci(i, j)));
  const double rhs = std::max(C_hat, ricci_fit);
  SampleResult r;
  r.add("W", W);
  r.add("Chat", C_hat);
  r.add("ricci_fit", ricci_fit);
  r.residual = std::max(implied(W, rhs, ctx.tol, r), implied(rhs, W, ctx.tol, r));
  return r;
}

struct SpecialConditions {
  double phi_asym, rho_asym, alpha_fit, suite;
  double conditions() const { return std::max({phi_asym, rho_asym, alpha_fit}); }
};

SpecialConditions special_conditions(const LocalFrame& f, const OneFormField& pf, const OneFormField& qf) {
  const ProjectiveAux aux = projective_aux(f, pf, qf);
  const CurvatureAtPoint Rt = curvature_of(f, ConnectionSpec::projective(pf, qf));
  return {asym(aux.nabla_phi), asym(aux.nabla_rho), metric_fit(aux.alpha_t, f.metric),
          symmetry_suite(Rt.r_low).special()};
}

SampleResult check_lemma43(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const SpecialConditions s = special_conditions(f, ctx.form("special_p"), ctx.form("special_q"));
  SampleResult r;
  r.add("nabla_phi_asym", s.phi_asym);
  r.add("nabla_rho_asym", s.rho_asym);
  r.add("alpha_metric_fit", s.alpha_fit);
  r.add("special_suite", s.suite);
  r.residual = std::max(implied(s.conditions(), s.suite, ctx.tol, r), implied(s.suite, s.conditions(), ctx.tol, r));
  return r;
}

SampleResult check_thm44(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const std::size_t l = ctx.m.l();
  const Tensor4 W_hat = projective_tensor(horizontal_curvature(f), l);
  auto dW = [&](const OneFormField& pf, const OneFormField& qf) {
    return max_abs_diff(projective_tensor(curvature_of(f, ConnectionSpec::projective(pf, qf)), l), W_hat);
  };
  const OneFormField &sp = ctx.form("special_p"), &sq = ctx.form("special_q");
  const SpecialConditions s = special_conditions(f, sp, sq);
  const double special = std::max(s.conditions(), s.suite);
  const double d_special = dW(sp, sq);
  const double d_dhf = dW(ctx.form("closed_pi"), ctx.form("closed_pi"));
  SampleResult r;
  r.add("special_conditions", special);
  r.add("special_W_minus_What", d_special);
  r.add("dhf_W_minus_What", d_dhf);
  r.residual = std::max(d_dhf, implied(special, d_special, ctx.tol, r));
  r.premise_met = true;
  return r;
}

SampleResult check_thm49_fwd(const Ctx& ctx, const Point& p, std::uint64_t) {
  const LocalFrame f = local_frame(ctx.m, p);
  const OneFormField &pf = ctx.form("null_p"), &qf = ctx.form("null_q");
  const CurvatureAtPoint Rt = curvature_of(f, ConnectionSpec::projective(pf, qf));
  const ProjectiveAux aux = projective_aux(f, pf, qf);
  const double premise = std::max(Rt.r_mixed.max_abs(), aux.beta.max_abs());
  const double W_hat = projective_tensor(horizontal_curvature(f), ctx.m.l()).max_abs();
  SampleResult r;
  r.add("Rtilde", Rt.r_mixed.max_abs());
  r.add("beta", aux.beta.max_abs());
  r.add("What", W_hat);
  r.residual = implied(premise, W_hat, ctx.tol, r);
  return r;
}

SampleResult check_prop46(const Ctx& ctx, const Point& p, std::uint64_t seed) {
  const LocalFrame f = local_frame(ctx.m, p);
  SampleResult r;
  for (const char* which : {"special", "null"}) {
    const std::string w(which);
    const CurvatureAtPoint Rt =
        curvature_of(f, ConnectionSpec::projective(ctx.form((w + "_p").c_str()), ctx.form((w + "_q").c_str())));
    const auto [spread, fit] = isotropy(Rt, f.metric, seed);
    r.add(w + "_spread", spread);
    r.add(w + "_form_fit", fit);
    r.residual = std::max({r.residual, implied(spread, fit, ctx.tol, r), implied(fit, spread, ctx.tol, r)});
  }
  return r;
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"sym26", 1e-10, 2, false, check_sym26},
      {"bianchi1", 1e-10, 2, false, check_bianchi1},
      {"twopath_sns", 1e-9, 2, false, check_twopath_sns},
      {"twopath_psns", 1e-9, 2, false, check_twopath_psns},
      {"compat", 1e-10, 2, false, check_compat},
      {"torsion31", 1e-12, 2, false, check_torsion31},
      {"thm31", 1e-9, 3, false, check_thm31},
      {"thm32_fwd", 1e-10, 2, false, check_thm32_fwd},
      {"thm33", 1e-9, 2, false, check_thm33},
      {"thm34", 1e-8, 3, false, check_thm34},
      {"prop35", 1e-9, 3, false, check_prop35},
      {"thm37", 1e-8, 2, true, check_thm37},
      {"thm38", 1e-8, 3, true, check_thm38},
      {"lemma43", 1e-8, 2, true, check_lemma43},
      {"thm44", 1e-9, 2, false, check_thm44},
      {"thm49_fwd", 1e-9, 2, true, check_thm49_fwd},
      {"prop46", 1e-8, 2, true, check_prop46},
  };
  return defs;
}

const CheckDef& find(const std::string& id) {
  for (const auto& d : registry())
    if (d.id == id) return d;
  throw std::invalid_argument("unknown check '" + id + "'");
}

}  // namespace

std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const auto& d : registry()) ids.push_back(d.id);
  return ids;
}

double default_tolerance(const std::string& id) { return find(id).tol; }
std::size_t min_ell(const std::string& id) { return find(id).min_l; }

double tolerance_for(const std::string& id, const RunConfig& cfg) {
  if (auto it = cfg.tolerances.find(id); it != cfg.tolerances.end()) return it->second;
  if (cfg.tolerance) return *cfg.tolerance;
  return default_tolerance(id);
}

FormMap with_default_forms(const AdaptedManifold& m, FormMap given, std::uint64_t seed) {
  const std::size_t n = m.n(), l = m.l();
  auto x = [](std::size_t one_based) { return Expr::variable(one_based - 1); };
  auto fill = [&](const char* key, auto make) {
    if (!given.count(key)) given[key] = make();
  };
  std::vector<std::size_t> hvars(l);
  for (std::size_t i = 0; i < l; ++i) hvars[i] = i;

  fill("pi", [&] { return random_one_form(n, l, 2, 0.5, seed * 3 + 1); });
  fill("p", [&] { return random_one_form(n, l, 2, 0.5, seed * 3 + 2); });
  fill("q", [&] { return random_one_form(n, l, 2, 0.5, seed * 3 + 3); });
  fill("closed_pi", [&] { return dhf(m, random_polynomial(hvars, 3, 0.5, seed * 3 + 4)); });
  fill("open_pi", [&] {
    OneFormField f = OneFormField::zero(l);
    f.components[0] = x(2);
    return f;
  });
  fill("iso_pi", [&] { return OneFormField::zero(l); });
  fill("special_p", [&] { return OneFormField::zero(l); });
  fill("special_q", [&] {
    Expr u = Expr::constant(1.0);
    for (std::size_t h = 1; h <= l; ++h) u = u + Expr::power(x(h), 2);
    return dhf(m, -Expr::function(Expr::Func::Log, u));
  });
  fill("null_p", [&] { return dhf(m, x(1) * x(2)); });
  fill("null_q", [&] {
    return dhf(m, -Expr::function(Expr::Func::Log, Expr::constant(3.0) + x(1) + x(2)));
  });
  return given;
}

Verdict run_check(const std::string& id, const AdaptedManifold& m, const RunConfig& cfg) {
  const CheckDef& def = find(id);
  Verdict v;
  v.theorem_id = id;
  v.samples = cfg.samples;
  v.seed = cfg.seed;
  v.tolerance = tolerance_for(id, cfg);
  if (m.l() < def.min_l) {
    v.skipped = true;
    v.note = "needs l >= " + std::to_string(def.min_l);
    return v;
  }
  const FormMap forms = with_default_forms(m, cfg.forms, cfg.seed);
  const Ctx ctx{m, forms, v.tolerance};

  std::vector<Witness> all;
  std::size_t premise_hits = 0;
  double sum = 0.0, comp = 0.0;
  try {
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      SampleResult res;
      const std::uint64_t sample_seed = cfg.seed * 0x9E3779B97F4A7C15ull + s;
      const Point p = sample_point(m, cfg.seed, s, [&](const Point& q) { res = def.fn(ctx, q, sample_seed); });
      if (res.premise_met) ++premise_hits;
      v.max_residual = std::max(v.max_residual, res.residual);
      const double y = res.residual - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      all.push_back(Witness{p, res.residual, std::move(res.parts)});
    }
  } catch (const std::exception& e) {
    v.pass = false;
    v.note = e.what();
    v.max_residual = std::numeric_limits<double>::infinity();
    return v;
  }
  v.mean_residual = cfg.samples ? sum / double(cfg.samples) : 0.0;
  v.pass = v.max_residual < v.tolerance;
  if (def.implication && premise_hits == 0) v.note = "vacuous: premise never met";

  std::stable_sort(all.begin(), all.end(),
                   [](const Witness& a, const Witness& b) { return a.residual > b.residual; });
  if (all.size() > 3) all.resize(3);
  v.witnesses = std::move(all);
  return v;
}

std::vector<Verdict> run_suite(const AdaptedManifold& m, const RunConfig& cfg) {
  std::vector<Verdict> out;
  for (const auto& id : check_ids()) out.push_back(run_check(id, m, cfg));
  return out;
}

nlohmann::ordered_json to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["theorem_id"] = v.theorem_id;
  j["samples"] = v.samples;
  j["seed"] = v.seed;
  j["tolerance"] = v.tolerance;
  if (std::isfinite(v.max_residual))
    j["max_residual"] = v.max_residual;
  else
    j["max_residual"] = nullptr;
  j["mean_residual"] = v.mean_residual;
  j["pass"] = v.pass;
  j["skipped"] = v.skipped;
  if (!v.note.empty()) j["note"] = v.note;
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : v.witnesses) {
    nlohmann::ordered_json wj;
    wj["point"] = w.point.coords;
    wj["residual"] = w.residual;
    nlohmann::ordered_json parts = nlohmann::ordered_json::object();
    for (const auto& [name, value] : w.residuals) parts[name] = value;
    wj["residuals"] = parts;
    j["witnesses"].push_back(wj);
  }
  return j;
}

}  // namespace nsr
