#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsr/manifold_io.hpp"
#include "nsr/weyl.hpp"

using namespace nsr;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_manifold_json(text);
  } catch (const ManifoldError& e) {
    return e.what();
  }
  return "";
}

bool same_geometry(const AdaptedManifold& a, const AdaptedManifold& b) {
  if (a.n() != b.n() || a.l() != b.l()) return false;
  for (std::size_t s = 0; s < 10; ++s) {
    const Point p = sample_point(a, 3, s);
    const LocalFrame fa = local_frame(a, p), fb = local_frame(b, p);
    if (max_abs_diff(fa.metric.g, fb.metric.g) != 0.0) return false;
    if (max_abs_diff(fa.metric.dg, fb.metric.dg) != 0.0) return false;
    if (max_abs_diff(vertical_bracket(a, p), vertical_bracket(b, p)) != 0.0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("every catalog entry validates") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const CatalogEntry e = catalog_get(name);
    CHECK(validate(e.manifold, 50, 42).pass());
    CHECK_FALSE(e.notes.empty());
    for (const auto& [key, form] : e.forms) CHECK(form.size() == e.manifold.l());
  }
  CHECK_THROWS_AS(catalog_get("sphere"), ManifoldError);
  CHECK_THROWS_AS(catalog_get("random:x"), ManifoldError);
  CHECK_THROWS_AS(catalog_get("random:1:4"), ManifoldError);
  CHECK_THROWS_AS(catalog_get("random:1:1:1.5"), ManifoldError);
}

TEST_CASE("catalog entries survive a JSON round trip") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const CatalogEntry e = catalog_get(name);
    const ManifoldSource back = parse_manifold_json(manifold_to_json(e.manifold, e.forms).dump(2), name);
    CHECK(same_geometry(e.manifold, back.manifold));
    CHECK(back.forms.size() == e.forms.size());
    for (const auto& [key, form] : e.forms) CHECK(form_to_string(back.forms.at(key)) == form_to_string(form));
  }
}

TEST_CASE("manifold file diagnostics") {
  const std::string good = R"({"n": 3, "l": 2, "g": [["1", "0"], ["0", "1"]], "A": [["-x2/2"], ["x1/2"]],
    "domain": [[-1, 1], [-1, 1], [-1, 1]]})";
  CHECK_NOTHROW(parse_manifold_json(good));

  CHECK(error_of(R"({"n": 3, "l": 2, "g": [["1", "0"], ["x1", "1"]], "A": [["0"], ["0"]],
    "domain": [[-1, 1], [-1, 1], [-1, 1]]})").find("not symmetric") != std::string::npos);
  CHECK(error_of(R"({"n": 3, "l": 2, "g": [["1", "0"], ["0", "1 +"]], "A": [["0"], ["0"]],
    "domain": [[-1, 1], [-1, 1], [-1, 1]]})").find("field 'g[1][1]'") != std::string::npos);
  CHECK(error_of(R"({"n": 3, "l": 2, "g": [["1", "0"], ["0", "1"]], "A": [["0"], ["0"]],
    "domain": [[-1, 1], [-1, 1]]})").find("domain") != std::string::npos);
  CHECK(error_of(R"({"l": 2})").find("'n'") != std::string::npos);
  CHECK(error_of("{\n  \"n\": 3,\n  \"l\": 2,,\n}").find("line 3") != std::string::npos);

  const ManifoldSource withpi = parse_manifold_json(R"({"n": 3, "l": 2, "g": [["1", "0"], ["0", "1"]],
    "A": [["0"], ["0"]], "domain": [[-1, 1], [-1, 1], [-1, 1]], "pi": "x2, 0", "q": ["1", "x1"]})");
  CHECK(withpi.forms.size() == 2);
  CHECK(form_to_string(withpi.forms.at("q")) == "1, x1");
  CHECK(error_of(R"({"n": 3, "l": 2, "g": [["1", "0"], ["0", "1"]],
    "A": [["0"], ["0"]], "domain": [[-1, 1], [-1, 1], [-1, 1]], "pi": "x2"})").find("field 'pi'") != std::string::npos);

  CHECK(load_manifold("catalog:particle").manifold.n() == 3);
  CHECK_THROWS(load_manifold("/nonexistent/file.json"));
}

TEST_CASE("random manifolds are reproducible") {
  const AdaptedManifold a = generate_random_manifold({2, 0.4, 17}, 5, 3);
  const AdaptedManifold b = generate_random_manifold({2, 0.4, 17}, 5, 3);
  const AdaptedManifold c = generate_random_manifold({2, 0.4, 18}, 5, 3);
  CHECK(same_geometry(a, b));
  CHECK_FALSE(same_geometry(a, c));
  CHECK(to_string(random_polynomial({0, 1}, 2, 1.0, 5)) == to_string(random_polynomial({0, 1}, 2, 1.0, 5)));
  CHECK_THROWS_AS(generate_random_manifold({4, 0.3, 1}, 5, 3), ManifoldError);
  CHECK_THROWS_AS(generate_random_manifold({1, -0.1, 1}, 5, 3), ManifoldError);
}

TEST_CASE("random metric amplitude controls curvature") {
  const AdaptedManifold flat = generate_random_manifold({1, 0.0, 3}, 5, 3);
  const AdaptedManifold curved = generate_random_manifold({1, 0.3, 3}, 5, 3);
  double kflat = 0.0, kcurved = 0.0;
  for (std::size_t s = 0; s < 20; ++s) {
    kflat = std::max(kflat, curvature_direct(flat, ConnectionSpec::horizontal(), sample_point(flat, 1, s)).r_mixed.max_abs());
    kcurved = std::max(kcurved, curvature_direct(curved, ConnectionSpec::horizontal(), sample_point(curved, 1, s)).r_mixed.max_abs());
  }
  CHECK(kflat == 0.0);
  CHECK(kcurved > 1e-4);
}

TEST_CASE("horizontal differential") {
  const auto m = catalog_get("flat3").manifold;
  const OneFormField d = dhf(m, parse("x1*x2", 5));
  const Point p{{0.3, -0.5, 0.7, 0.2, 0.1}};
  const OneFormAtPoint w = evaluate_form(local_frame(m, p), d);
  CHECK(w.value[0] == doctest::Approx(-0.5));
  CHECK(w.value[1] == doctest::Approx(0.3));
  CHECK(w.value[2] == 0.0);

  // A vertical-dependent f picks up the −A_i^α ∂_α f terms.
  const auto h = catalog_get("heisenberg").manifold;
  const OneFormAtPoint v = evaluate_form(local_frame(h, Point{{0.4, 0.6, 0.0}}), dhf(h, parse("x3", 3)));
  CHECK(v.value[0] == doctest::Approx(0.3));
  CHECK(v.value[1] == doctest::Approx(-0.2));

  for (std::size_t s = 0; s < 10; ++s) {
    const auto r = catalog_get("random:2:2:0.5").manifold;
    CHECK(closedness_check(r, dhf(r, random_polynomial({0, 1, 2}, 3, 1.0, s)), sample_point(r, 1, s)) < 1e-12);
  }
}
