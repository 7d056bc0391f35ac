// One line per acceptance criterion. Pass criterion ids (c01 .. c13) to run a
// subset; exit status is nonzero when any selected criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nsr/cli.hpp"
#include "nsr/verify.hpp"
#include "nsr/weyl.hpp"
#include "support.hpp"

using namespace nsr;

namespace {

constexpr std::size_t kSamples = 100;
constexpr std::uint64_t kSeed = 42;

struct Line {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& label, double value, const char* op, double bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g (%s %.0e)", detail.empty() ? "" : ", ", label.c_str(), value, op, bound);
    detail += buf;
    pass = pass && ok;
  }
  void below(const std::string& label, double value, double bound) { require(value < bound, label, value, "<", bound); }
  void above(const std::string& label, double value, double bound) { require(value > bound, label, value, ">", bound); }
};

const std::vector<std::string> kRandom = {"random:1", "random:2", "random:3", "random:4", "random:5"};

// Riemann symmetry suite evaluated straight from the lowered tensor.
struct Suite {
  double antisym_ij = 0, antisym_kh = 0, pair = 0, cyclic = 0;
  double max() const { return std::max({antisym_ij, antisym_kh, pair, cyclic}); }
};

Suite suite_of(const Tensor4& R) {
  const std::size_t l = R.extent(0);
  Suite s;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t h = 0; h < l; ++h) {
          s.antisym_ij = std::max(s.antisym_ij, std::abs(R(i, j, k, h) + R(j, i, k, h)));
          s.antisym_kh = std::max(s.antisym_kh, std::abs(R(i, j, k, h) + R(i, j, h, k)));
          s.pair = std::max(s.pair, std::abs(R(i, j, k, h) - R(k, h, i, j)));
          s.cyclic = std::max(s.cyclic, std::abs(R(i, j, k, h) + R(j, k, i, h) + R(k, i, j, h)));
        }
  return s;
}

CurvatureAtPoint horizontal(const LocalFrame& f) { return curvature_direct(f.metric, christoffel_horizontal(f.metric)); }

// Relation path with the π-correction scaled by `sign`; sign = −1 is the
// falsification double.
CurvatureAtPoint relation_path(const LocalFrame& f, const CurvatureAtPoint& K, const CharTensors& ch, double sign) {
  return curvature_from_mixed(K.r_mixed + sign * sns_curvature_correction(ch, f.metric), f.metric);
}

struct Sweep {
  double twopath = 0, twopath_psns = 0, conformal = 0, scalar = 0;
};

// 20 random π (and 20 random (p, q)) × 5 points on flat3, hyperbolic3 and
// five random ℓ = 3 manifolds.
Sweep sweep(double sign) {
  std::vector<std::string> names = {"flat3", "hyperbolic3"};
  names.insert(names.end(), kRandom.begin(), kRandom.end());
  Sweep out;
  for (const auto& name : names) {
    const auto m = catalog_get(name).manifold;
    const std::size_t l = m.l();
    for (std::uint64_t k = 0; k < 20; ++k) {
      const OneFormField pi = random_one_form(m.n(), l, 2, 0.5, kSeed + 3 * k);
      const OneFormField pf = random_one_form(m.n(), l, 2, 0.5, kSeed + 3 * k + 1);
      const OneFormField qf = random_one_form(m.n(), l, 2, 0.5, kSeed + 3 * k + 2);
      for (std::size_t s = 0; s < 5; ++s) {
        const Point p = sample_point(m, kSeed + k, s);
        const LocalFrame f = local_frame(m, p);
        const CurvatureAtPoint K = horizontal(f);
        const CharTensors ch = char_tensor(f, pi);
        const CurvatureAtPoint direct = curvature_direct(f.metric, connection_coeffs(f, ConnectionSpec::sns(pi)));
        const CurvatureAtPoint rel = relation_path(f, K, ch, sign);
        out.twopath = std::max(out.twopath, max_abs_diff(direct.r_mixed, rel.r_mixed));

        const Tensor4 C_hat = conformal_tensor(K, f.metric, l);
        out.conformal = std::max({out.conformal, max_abs_diff(conformal_tensor(direct, f.metric, l), C_hat),
                                  max_abs_diff(conformal_tensor(rel, f.metric, l), C_hat)});
        const double shift = K.scalar + 2.0 * (double(l) - 1.0) * ch.alpha;
        out.scalar = std::max({out.scalar, std::abs(direct.scalar - shift), std::abs(rel.scalar - shift)});

        const CurvatureAtPoint pd = curvature_direct(f.metric, connection_coeffs(f, ConnectionSpec::projective(pf, qf)));
        const ProjectiveAux aux = projective_aux(f, pf, qf);
        const Tensor4 pr = K.r_mixed + projective_curvature_correction(aux);
        out.twopath_psns = std::max(out.twopath_psns, max_abs_diff(pd.r_mixed, pr));
      }
    }
  }
  return out;
}

const Sweep& honest_sweep() {
  static const Sweep s = sweep(1.0);
  return s;
}

Line c01() {
  Line line;
  std::vector<std::string> names = {"flat3", "hyperbolic3", "particle", "heisenberg"};
  names.insert(names.end(), kRandom.begin(), kRandom.end());
  Suite worst;
  for (const auto& name : names) {
    const auto m = catalog_get(name).manifold;
    for (std::size_t s = 0; s < kSamples; ++s) {
      const Suite x = suite_of(horizontal(local_frame(m, sample_point(m, kSeed, s))).r_low);
      worst = {std::max(worst.antisym_ij, x.antisym_ij), std::max(worst.antisym_kh, x.antisym_kh),
               std::max(worst.pair, x.pair), std::max(worst.cyclic, x.cyclic)};
    }
    RunConfig cfg;
    cfg.samples = kSamples;
    cfg.seed = kSeed;
    const Verdict v = run_check("sym26", m, cfg);
    if (!v.pass) line.below("sym26[" + name + "]", v.max_residual, 1e-10);
  }
  line.below("antisym_ij", worst.antisym_ij, 1e-10);
  line.below("antisym_kh", worst.antisym_kh, 1e-10);
  line.below("pair", worst.pair, 1e-10);
  line.below("bianchi", worst.cyclic, 1e-10);
  return line;
}

// Richardson-extrapolated central differences, independent of the jets.
double fd_hess(const Expr& e, const std::vector<double>& p, std::size_t i, std::size_t j) {
  const double h = 1e-4;
  return (4.0 * testing::fd_second(e, p, i, j, h) - testing::fd_second(e, p, i, j, 2 * h)) / 3.0;
}

double fd_grad(const Expr& e, const std::vector<double>& p, std::size_t i) {
  const double h = 1e-3;
  return (4.0 * testing::fd_partial(e, p, i, h) - testing::fd_partial(e, p, i, 2 * h)) / 3.0;
}

Line c02() {
  std::mt19937_64 rng(kSeed);
  double grad = 0, hess = 0;
  for (int t = 0; t < 200; ++t) {
    const Expr e = testing::random_expr(rng, 3, 3);
    const auto p = testing::random_point(rng, 3);
    const Jet2 j = eval_jet2(e, p);
    for (std::size_t a = 0; a < 3; ++a) {
      grad = std::max(grad, testing::rel_err(j.grad(a), fd_grad(e, p, a)));
      for (std::size_t b = 0; b < 3; ++b) hess = std::max(hess, testing::rel_err(j.hess(a, b), fd_hess(e, p, a, b)));
    }
  }
  Line line;
  line.below("grad_rel", grad, 1e-6);
  line.below("hess_rel", hess, 1e-6);
  return line;
}

Line c03() {
  Line line;
  line.below("sns", honest_sweep().twopath, 1e-9);
  line.below("psns", honest_sweep().twopath_psns, 1e-9);
  return line;
}

Line c04() {
  Line line;
  line.below("C_minus_Chat", honest_sweep().conformal, 1e-9);
  return line;
}

Line c05() {
  Line line;
  line.below("scalar_shift", honest_sweep().scalar, 1e-9);
  return line;
}

// Expected values carry the signs stated in the criterion.
Line c06() {
  const auto m = catalog_get("hyperbolic3").manifold;
  std::mt19937_64 rng(kSeed);
  std::normal_distribution<double> nd;
  double sec = 0, ricci = 0, scalar = 0, c_hat = 0, w_hat = 0;
  for (std::size_t s = 0; s < 50; ++s) {
    const LocalFrame f = local_frame(m, sample_point(m, kSeed, s));
    const CurvatureAtPoint K = horizontal(f);
    double u[3], v[3];
    for (int i = 0; i < 3; ++i) u[i] = nd(rng), v[i] = nd(rng);
    sec = std::max(sec, std::abs(sectional(K, f.metric, u, v) + 1.0));
    ricci = std::max(ricci, (K.ricci + 2.0 * f.metric.g).max_abs());
    scalar = std::max(scalar, std::abs(K.scalar + 6.0));
    c_hat = std::max(c_hat, conformal_tensor(K, f.metric, 3).max_abs());
    w_hat = std::max(w_hat, projective_tensor(K, 3).max_abs());
  }
  Line line;
  line.below("|sec+1|", sec, 1e-9);
  line.below("|Ric+2g|", ricci, 1e-9);
  line.below("|R+6|", scalar, 1e-8);
  line.below("|Chat|", c_hat, 1e-9);
  line.below("|What|", w_hat, 1e-9);
  return line;
}

Line c07() {
  const auto m = catalog_get("particle").manifold;
  const ValidationReport rep = validate(m, kSamples, kSeed);
  const Point origin{{0, 0, 0}};
  const CurvatureAtPoint K = horizontal(local_frame(m, origin));
  const double oracle = -1.0 / (1.0 + origin[1] * origin[1]);
  Line line;
  line.below("omega", rep.omega_residual, 1e-14);
  line.below("|R_1212-(-1/(1+y^2))|", std::abs(K.r_low(0, 1, 0, 1) - oracle), 1e-10);
  const double M = vertical_bracket(m, origin)(0, 1, 0);
  line.require(M == -1.0, "M_12^3", M, "==", -1.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, ", R_1212=%.6g", K.r_low(0, 1, 0, 1));
  line.detail += buf;
  return line;
}

Line c08() {
  const auto m = catalog_get("heisenberg").manifold;
  const ValidationReport rep = validate(m, kSamples, kSeed);
  double curv = 0, min_bracket = INFINITY;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Point p = sample_point(m, kSeed, s);
    curv = std::max(curv, horizontal(local_frame(m, p)).r_mixed.max_abs());
    min_bracket = std::min(min_bracket, std::abs(vertical_bracket(m, p)(0, 1, 0)));
  }
  Line line;
  line.require(rep.omega_residual == 0.0, "omega", rep.omega_residual, "==", 0.0);
  line.require(curv == 0.0, "|K|", curv, "==", 0.0);
  line.above("min|M_12^3|", min_bracket, 0.0);
  return line;
}

Line c09() {
  const auto m = catalog_get("flat3").manifold;
  const OneFormField closed = with_default_forms(m, {}, kSeed).at("closed_pi");
  const OneFormField open = OneFormField::parse("x2, 0, 0", m.n(), m.l());
  double closed_worst = 0, open_least = INFINITY, closedness = 0;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Point p = sample_point(m, kSeed, s);
    closedness = std::max(closedness, closedness_check(m, closed, p));
    closed_worst = std::max(closed_worst, suite_of(curvature_direct(m, ConnectionSpec::sns(closed), p).r_low).max());
    open_least = std::min(open_least, suite_of(curvature_direct(m, ConnectionSpec::sns(open), p).r_low).max());
  }
  Line line;
  line.below("closed_dpi", closedness, 1e-12);
  line.below("closed_suite", closed_worst, 1e-9);
  line.above("open_suite_min", open_least, 1e-2);
  return line;
}

Line c10() {
  const auto m = catalog_get("flat3").manifold;
  const OneFormField p0 = OneFormField::zero(m.l());
  const OneFormField q = lemma43_q(m.l());
  double diff = 0, w = 0, spread = 0;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const Point p = sample_point(m, kSeed, s);
    const LocalFrame f = local_frame(m, p);
    const Tensor4 W_t = projective_tensor(curvature_direct(f.metric, connection_coeffs(f, ConnectionSpec::projective(p0, q))), 3);
    diff = std::max(diff, max_abs_diff(W_t, projective_tensor(horizontal(f), 3)));
    w = std::max(w, W_t.max_abs());
    const ProjectiveAux aux = projective_aux(f, p0, q);
    double lambda = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) lambda += aux.alpha_t(i, j) * f.metric.ginv(j, i) / 3.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) spread = std::max(spread, std::abs(aux.alpha_t(i, j) - lambda * f.metric.g(i, j)));
  }
  RunConfig cfg;
  cfg.samples = kSamples;
  cfg.seed = kSeed;
  cfg.forms["special_p"] = p0;
  cfg.forms["special_q"] = q;
  const Verdict v = run_check("lemma43", m, cfg);
  Line line;
  line.below("|Wt-What|", diff, 1e-9);
  line.below("|Wt|", w, 1e-9);
  line.below("alpha/g spread", spread, 1e-8);
  line.require(v.pass, "lemma43", v.max_residual, "<", v.tolerance);
  return line;
}

// π_ik from the Ricci data of K, pushed through the curvature relation.
Line c11() {
  const auto m = catalog_get("hyperbolic3").manifold;
  const double l = 3.0;
  double R = 0, ricci = 0, scalar = 0;
  for (std::size_t s = 0; s < kSamples; ++s) {
    const LocalFrame f = local_frame(m, sample_point(m, kSeed, s));
    const CurvatureAtPoint K = horizontal(f);
    CharTensors ch;
    ch.pi_low = ch.pi_mixed = Matrix(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 3; ++k)
        ch.pi_low(i, k) = -(K.ricci(i, k) - K.scalar / (2.0 * (l - 1.0)) * f.metric.g(i, k)) / (l - 2.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t h = 0; h < 3; ++h)
        for (std::size_t k = 0; k < 3; ++k) ch.pi_mixed(i, h) += ch.pi_low(i, k) * f.metric.ginv(h, k);
    const CurvatureAtPoint Rs = relation_path(f, K, ch, 1.0);
    R = std::max(R, Rs.r_mixed.max_abs());
    ricci = std::max(ricci, Rs.ricci.max_abs());
    scalar = std::max(scalar, std::abs(Rs.scalar));
  }
  Line line;
  line.below("|R|", R, 1e-8);
  line.below("|Ric|", ricci, 1e-8);
  line.below("|scalar|", scalar, 1e-8);
  return line;
}

// The flipped double must break every one of criteria 3 to 5.
Line c12() {
  const Sweep s = sweep(-1.0);
  Line line;
  line.above("c03", s.twopath, 1e-3);
  line.above("c04", s.conformal, 1e-3);
  line.above("c05", s.scalar, 1e-3);
  return line;
}

Line c13() {
  const std::vector<std::string> args = {"suite", "catalog:hyperbolic3", "--samples", "100", "--seed", "42", "--json"};
  std::ostringstream a, b, err;
  run_cli(args, a, err);
  run_cli(args, b, err);
  Line line;
  line.require(!a.str().empty() && a.str() == b.str(), "bytes", double(a.str().size()), "identical", 0.0);
  return line;
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<Line()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {"c01", "symmetry suite", c01},
      {"c02", "jet derivatives vs finite differences", c02},
      {"c03", "two-path curvature", c03},
      {"c04", "conformal invariance", c04},
      {"c05", "scalar relation", c05},
      {"c06", "constant-curvature witness", c06},
      {"c07", "particle example", c07},
      {"c08", "Heisenberg example", c08},
      {"c09", "closed and non-closed pi", c09},
      {"c10", "flat projective construction", c10},
      {"c11", "flattening pi on hyperbolic3", c11},
      {"c12", "falsifiability double", c12},
      {"c13", "determinism", c13},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Line line;
    try {
      line = c.run();
    } catch (const std::exception& e) {
      line.pass = false;
      line.detail = std::string("error: ") + e.what();
    }
    std::printf("[%s] %s %s: %s\n", line.pass ? "PASS" : "FAIL", c.id, c.title, line.detail.c_str());
    ok = ok && line.pass;
  }
  return ok ? 0 : 1;
}
