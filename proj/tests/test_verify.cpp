#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nsr/verify.hpp"

using namespace nsr;

namespace {

RunConfig config(std::size_t samples, std::uint64_t seed = 42) {
  RunConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("registry") {
  const auto ids = check_ids();
  CHECK(ids.size() == 17);
  for (const auto& id : ids) {
    CHECK(default_tolerance(id) > 0.0);
    CHECK(min_ell(id) >= 2);
  }
  CHECK(min_ell("thm31") == 3);
  CHECK_THROWS_AS(run_check("thm99", catalog_get("flat3").manifold, config(1)), std::invalid_argument);

  RunConfig cfg = config(1);
  cfg.tolerance = 1e-3;
  cfg.tolerances["sym26"] = 1e-5;
  CHECK(tolerance_for("sym26", cfg) == 1e-5);
  CHECK(tolerance_for("thm33", cfg) == 1e-3);
}

TEST_CASE("suite passes on manifolds with witnesses") {
  for (const char* name : {"flat3", "hyperbolic3"}) {
    CAPTURE(name);
    const CatalogEntry e = catalog_get(name);
    RunConfig cfg = config(25);
    cfg.forms = e.forms;
    for (const Verdict& v : run_suite(e.manifold, cfg)) {
      CAPTURE(v.theorem_id);
      CAPTURE(v.note);
      CHECK(v.pass);
      CHECK_FALSE(v.skipped);
      CHECK(v.max_residual <= v.tolerance);
      CHECK(v.mean_residual <= v.max_residual);
      CHECK(v.witnesses.size() <= 3);
      for (std::size_t w = 1; w < v.witnesses.size(); ++w) CHECK(v.witnesses[w - 1].residual >= v.witnesses[w].residual);
    }
  }
  // The catalog witnesses make the hyperbolic implication checks non-vacuous.
  const CatalogEntry h = catalog_get("hyperbolic3");
  RunConfig cfg = config(10);
  cfg.forms = h.forms;
  for (const char* id : {"thm34", "thm37", "thm38", "lemma43", "prop46"}) {
    CAPTURE(id);
    CHECK(run_check(id, h.manifold, cfg).note.find("vacuous") == std::string::npos);
  }
}

TEST_CASE("two-dimensional horizontal bundles skip the conformal checks") {
  const auto m = catalog_get("heisenberg").manifold;
  std::size_t skipped = 0;
  for (const Verdict& v : run_suite(m, config(10))) {
    CAPTURE(v.theorem_id);
    if (v.skipped) {
      ++skipped;
      CHECK(min_ell(v.theorem_id) == 3);
      CHECK(v.note == "needs l >= 3");
      CHECK(v.witnesses.empty());
    } else {
      CHECK(v.pass);
    }
  }
  CHECK(skipped == 4);
}

TEST_CASE("verdicts are bitwise reproducible") {
  const auto m = catalog_get("random:3").manifold;
  const auto a = run_suite(m, config(15, 7)), b = run_suite(m, config(15, 7));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
  CHECK(to_json(run_check("thm33", m, config(15, 8))).dump() != to_json(a[8]).dump());
}

TEST_CASE("prop35 rejects a non-closed form posing as closed") {
  const auto m = catalog_get("flat3").manifold;
  RunConfig cfg = config(20);
  cfg.forms["closed_pi"] = OneFormField::parse("x2, 0, 0", 5, 3);
  const Verdict v = run_check("prop35", m, cfg);
  CHECK_FALSE(v.pass);
  CHECK(v.max_residual > 10 * v.tolerance);
  REQUIRE_FALSE(v.witnesses.empty());
  CHECK(v.witnesses[0].residuals.size() >= 2);
}

TEST_CASE("curvature checks fail on a wrong tolerance") {
  const auto m = catalog_get("particle").manifold;
  RunConfig cfg = config(10);
  cfg.tolerances["thm33"] = 0.0;
  cfg.forms["pi"] = OneFormField::parse("0.3 + x1*x2, sin(x3)", 3, 2);
  const Verdict v = run_check("thm33", m, cfg);
  CHECK(v.tolerance == 0.0);
  CHECK(v.max_residual > 0.0);
  CHECK_FALSE(v.pass);
}

TEST_CASE("verdict JSON layout") {
  const Verdict v = run_check("sym26", catalog_get("particle").manifold, config(5));
  const auto j = to_json(v);
  std::vector<std::string> keys;
  for (const auto& [k, val] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"theorem_id", "samples", "seed", "tolerance", "max_residual",
                                         "mean_residual", "pass", "skipped", "witnesses"});
  CHECK(j["samples"] == 5);
  CHECK(j["witnesses"].size() == 3);
  CHECK(j["witnesses"][0]["point"].size() == 3);
  CHECK(j["witnesses"][0]["residuals"].contains("bianchi"));
}

TEST_CASE("default forms respect the given ones") {
  const auto m = catalog_get("particle").manifold;
  FormMap given;
  given["pi"] = OneFormField::parse("1, 2", 3, 2);
  const FormMap all = with_default_forms(m, given, 1);
  for (const char* key : {"pi", "p", "q", "closed_pi", "open_pi", "iso_pi", "special_p", "special_q", "null_p", "null_q"})
    CHECK(all.count(key) == 1);
  const OneFormAtPoint w = evaluate_form(local_frame(m, Point{{0, 0, 0}}), all.at("pi"));
  CHECK(w.value[0] == 1.0);
  CHECK(w.value[1] == 2.0);
}
