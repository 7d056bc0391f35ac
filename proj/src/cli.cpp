#include "nsr/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "nsr/manifold_io.hpp"
#include "nsr/verify.hpp"
#include "nsr/weyl.hpp"

namespace nsr {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0, depth = 0;
  for (std::size_t c = 0; c <= text.size(); ++c) {
    if (c < text.size() && text[c] == '(') ++depth;
    if (c < text.size() && text[c] == ')' && depth > 0) --depth;
    if (c == text.size() || (text[c] == sep && depth == 0)) {
      parts.push_back(text.substr(start, c - start));
      start = c + 1;
    }
  }
  return parts;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(eval(parse(part, 0), std::span<const double>{}));
  if (values.size() != expected)
    throw UsageError(std::string(what) + " needs " + std::to_string(expected) + " values, got " +
                     std::to_string(values.size()));
  return values;
}

template <std::size_t Rank>
ojson tensor_json(const Tensor<Rank>& t, std::size_t axis = 0, std::size_t offset = 0) {
  ojson arr = ojson::array();
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < Rank; ++a) stride *= t.extent(a);
  for (std::size_t i = 0; i < t.extent(axis); ++i) {
    const std::size_t base = offset + i * stride;
    if (axis + 1 == Rank)
      arr.push_back(t.flat()[base]);
    else
      arr.push_back(tensor_json(t, axis + 1, base));
  }
  return arr;
}

template <std::size_t Rank>
void tensor_human(std::ostream& out, const char* label, const Tensor<Rank>& t) {
  std::size_t shown = 0;
  for (std::size_t f = 0; f < t.flat().size(); ++f) {
    if (t.flat()[f] == 0.0) continue;
    out << label;
    std::size_t rem = f, stride = t.flat().size();
    for (std::size_t a = 0; a < Rank; ++a) {
      stride /= t.extent(a);
      out << '[' << rem / stride + 1 << ']';
      rem %= stride;
    }
    out << " = " << t.flat()[f] << '\n';
    ++shown;
  }
  if (shown == 0) out << label << " = 0\n";
}

struct Options {
  std::string manifold;
  std::string at, pi, p, q, theorem, show_name;
  std::vector<std::string> tols, planes;
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  bool json = false;
};

void apply_form_flags(const Options& o, const AdaptedManifold& m, FormMap& forms) {
  if (!o.pi.empty() && (!o.p.empty() || !o.q.empty())) throw UsageError("--pi cannot be combined with --p/--q");
  const std::size_t n = m.n(), l = m.l();
  if (!o.pi.empty()) {
    const OneFormField pi = OneFormField::parse(o.pi, n, l);
    for (const char* key : {"pi", "closed_pi", "iso_pi"}) forms[key] = pi;
  }
  if (!o.p.empty()) {
    const OneFormField p = OneFormField::parse(o.p, n, l);
    for (const char* key : {"p", "special_p", "null_p"}) forms[key] = p;
  }
  if (!o.q.empty()) {
    const OneFormField q = OneFormField::parse(o.q, n, l);
    for (const char* key : {"q", "special_q", "null_q"}) forms[key] = q;
  }
}

void apply_tolerances(const Options& o, RunConfig& cfg) {
  const auto ids = check_ids();
  for (const auto& t : o.tols) {
    const auto eq = t.find('=');
    std::size_t used = 0;
    try {
      if (eq == std::string::npos) {
        cfg.tolerance = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
      } else {
        const std::string id = t.substr(0, eq), value = t.substr(eq + 1);
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown check '" + id + "' in --tol");
        cfg.tolerances[id] = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad --tol value '" + t + "'");
    }
  }
}

ojson envelope(const std::string& manifold, const std::string& command) {
  ojson j;
  j["manifold"] = manifold;
  j["command"] = command;
  j["results"] = ojson::object();
  j["verdicts"] = ojson::array();
  return j;
}

int cmd_check(const Options& o, std::ostream& out) {
  const ManifoldSource src = load_manifold(o.manifold);
  const ValidationReport r = validate(src.manifold, o.samples, o.seed);
  ojson res;
  res["samples"] = r.samples;
  res["seed"] = o.seed;
  res["symmetry_residual"] = r.symmetry_residual;
  res["spd_failures"] = r.spd_failures;
  res["omega_residual"] = r.omega_residual;
  res["omega_hessian_residual"] = r.omega_hessian_residual;
  res["symmetric"] = r.symmetric();
  res["positive_definite"] = r.positive_definite();
  res["nearly_sub_riemannian"] = r.nearly_sub_riemannian();
  res["pass"] = r.pass();
  if (o.json) {
    ojson j = envelope(src.name, "check");
    j["results"] = res;
    out << j.dump(2) << '\n';
  } else {
    out << src.name << ": n=" << src.manifold.n() << " l=" << src.manifold.l() << '\n';
    out << "  symmetric            " << (r.symmetric() ? "yes" : "no") << " (" << r.symmetry_residual << ")\n";
    out << "  positive definite    " << (r.positive_definite() ? "yes" : "no") << " (" << r.spd_failures
        << " failures)\n";
    out << "  Omega residual       " << r.omega_residual << " / " << r.omega_hessian_residual << '\n';
    out << (r.pass() ? "PASS" : "FAIL") << '\n';
  }
  return r.pass() ? 0 : 1;
}

int cmd_tensors(const Options& o, std::ostream& out) {
  const ManifoldSource src = load_manifold(o.manifold);
  const AdaptedManifold& m = src.manifold;
  const std::size_t l = m.l();
  if (!o.pi.empty() && (!o.p.empty() || !o.q.empty())) throw UsageError("--pi cannot be combined with --p/--q");
  const Point point{parse_numbers(o.at, m.n(), "--at")};

  ConnectionSpec spec = ConnectionSpec::horizontal();
  if (!o.pi.empty()) spec = ConnectionSpec::sns(OneFormField::parse(o.pi, m.n(), l));
  if (!o.p.empty() || !o.q.empty())
    spec = ConnectionSpec::projective(o.p.empty() ? OneFormField::zero(l) : OneFormField::parse(o.p, m.n(), l),
                                      o.q.empty() ? OneFormField::zero(l) : OneFormField::parse(o.q, m.n(), l));

  const LocalFrame frame = local_frame(m, point);
  const ChristoffelAtPoint gamma = connection_coeffs(frame, spec);
  const CurvatureAtPoint R = curvature_direct(frame.metric, gamma);
  const Tensor4 W = projective_tensor(R, l);

  std::vector<std::pair<Vector, Vector>> planes;
  for (const auto& text : o.planes) {
    const auto uv = split(text, ':');
    if (uv.size() != 2) throw UsageError("--plane expects u1,..,ul:v1,..,vl");
    planes.emplace_back(parse_numbers(uv[0], l, "--plane u"), parse_numbers(uv[1], l, "--plane v"));
  }
  if (o.planes.empty())
    for (std::size_t a = 0; a < l; ++a)
      for (std::size_t b = a + 1; b < l; ++b) {
        Vector u(l, 0.0), v(l, 0.0);
        u[a] = v[b] = 1.0;
        planes.emplace_back(u, v);
      }
  std::vector<double> lambdas;
  for (const auto& [u, v] : planes) lambdas.push_back(sectional(R, frame.metric, u, v));

  if (o.json) {
    ojson res;
    res["point"] = point.coords;
    res["connection"] = to_string(spec.kind);
    res["metric"] = tensor_json(frame.metric.g);
    res["christoffel"] = tensor_json(gamma.gamma);
    res["torsion"] = tensor_json(torsion(gamma));
    res["vertical_bracket"] = tensor_json(vertical_bracket(m, point));
    res["r_mixed"] = tensor_json(R.r_mixed);
    res["r_low"] = tensor_json(R.r_low);
    res["ricci"] = tensor_json(R.ricci);
    res["scalar"] = R.scalar;
    if (l >= 3) res["conformal"] = tensor_json(conformal_tensor(R, frame.metric, l));
    res["projective"] = tensor_json(W);
    res["sectional"] = ojson::array();
    for (std::size_t i = 0; i < planes.size(); ++i)
      res["sectional"].push_back({{"u", planes[i].first}, {"v", planes[i].second}, {"lambda", lambdas[i]}});
    ojson j = envelope(src.name, "tensors");
    j["results"] = res;
    out << j.dump(2) << '\n';
    return 0;
  }

  out << src.name << " at (";
  for (std::size_t i = 0; i < point.size(); ++i) out << (i ? ", " : "") << point[i];
  out << "), connection " << to_string(spec.kind) << "; entries not listed are zero\n";
  tensor_human(out, "Gamma", gamma.gamma);
  tensor_human(out, "T", torsion(gamma));
  tensor_human(out, "R^h", R.r_mixed);
  tensor_human(out, "R", R.r_low);
  tensor_human(out, "Ric", R.ricci);
  out << "scalar = " << R.scalar << '\n';
  if (l >= 3) tensor_human(out, "C", conformal_tensor(R, frame.metric, l));
  tensor_human(out, "W", W);
  for (std::size_t i = 0; i < planes.size(); ++i) {
    out << "sectional(u=";
    for (std::size_t a = 0; a < l; ++a) out << (a ? "," : "") << planes[i].first[a];
    out << "; v=";
    for (std::size_t a = 0; a < l; ++a) out << (a ? "," : "") << planes[i].second[a];
    out << ") = " << lambdas[i] << '\n';
  }
  return 0;
}

int report_verdicts(const Options& o, const std::string& command, const std::string& manifold,
                    const std::vector<Verdict>& verdicts, std::ostream& out) {
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& v : verdicts) (v.skipped ? skipped : v.pass ? passed : failed) += 1;
  if (o.json) {
    ojson j = envelope(manifold, command);
    j["results"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    for (const auto& v : verdicts) j["verdicts"].push_back(to_json(v));
    out << j.dump(2) << '\n';
  } else {
    for (const auto& v : verdicts) {
      out << std::left << std::setw(13) << v.theorem_id << (v.skipped ? "SKIP" : v.pass ? "PASS" : "FAIL");
      if (!v.skipped) out << "  max " << std::setprecision(3) << v.max_residual << "  tol " << v.tolerance;
      if (!v.note.empty()) out << "  (" << v.note << ')';
      out << std::setprecision(6) << '\n';
    }
    out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  }
  return failed == 0 ? 0 : 1;
}

int cmd_verify(const Options& o, bool all, std::ostream& out) {
  const ManifoldSource src = load_manifold(o.manifold);
  RunConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.forms = src.forms;
  apply_form_flags(o, src.manifold, cfg.forms);
  apply_tolerances(o, cfg);
  if (all) return report_verdicts(o, "suite", src.name, run_suite(src.manifold, cfg), out);
  const auto ids = check_ids();
  if (std::find(ids.begin(), ids.end(), o.theorem) == ids.end())
    throw UsageError("unknown theorem id '" + o.theorem + "'");
  return report_verdicts(o, "verify", src.name, {run_check(o.theorem, src.manifold, cfg)}, out);
}

int cmd_catalog_list(const Options& o, std::ostream& out) {
  if (o.json) {
    ojson j = envelope("", "catalog");
    j["manifold"] = nullptr;
    j["results"] = catalog_names();
    out << j.dump(2) << '\n';
  } else {
    for (const auto& name : catalog_names()) {
      if (name == "random") {
        out << "random[:seed[:degree[:amplitude]]]  n=5 l=3\n";
        continue;
      }
      const CatalogEntry e = catalog_get(name);
      out << std::left << std::setw(12) << name << " n=" << e.manifold.n() << " l=" << e.manifold.l() << "  "
          << e.notes << '\n';
    }
  }
  return 0;
}

int cmd_catalog_show(const Options& o, std::ostream& out) {
  const CatalogEntry e = catalog_get(o.show_name);
  out << manifold_to_json(e.manifold, e.forms).dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Curvature of SNS-Riemannian connections on nearly sub-Riemannian manifolds", "nsr"};
  app.require_subcommand(1);

  auto manifold_arg = [&](CLI::App* sub) {
    sub->add_option("manifold", o.manifold, "catalog:<name> or a manifold JSON file")->required();
    sub->add_flag("--json", o.json, "JSON output");
  };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "sample points")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "sampling seed");
  };
  auto forms = [&](CLI::App* sub) {
    sub->add_option("--pi", o.pi, "SNS 1-form, comma-separated expressions");
    sub->add_option("--p", o.p, "projective 1-form p");
    sub->add_option("--q", o.q, "projective 1-form q");
  };

  CLI::App* check = app.add_subcommand("check", "validate a manifold");
  manifold_arg(check);
  sampling(check);

  CLI::App* tensors = app.add_subcommand("tensors", "connection and curvature tensors at a point");
  manifold_arg(tensors);
  forms(tensors);
  tensors->add_option("--at", o.at, "point, n comma-separated values")->required();
  tensors->add_option("--plane", o.planes, "u1,..,ul:v1,..,vl (repeatable)");

  CLI::App* verify = app.add_subcommand("verify", "run one theorem check");
  manifold_arg(verify);
  sampling(verify);
  forms(verify);
  verify->add_option("--theorem", o.theorem, "check id")->required();
  verify->add_option("--tol", o.tols, "tolerance, or id=value (repeatable)");

  CLI::App* suite = app.add_subcommand("suite", "run every applicable check");
  manifold_arg(suite);
  sampling(suite);
  forms(suite);
  suite->add_option("--tol", o.tols, "tolerance, or id=value (repeatable)");

  CLI::App* catalog = app.add_subcommand("catalog", "built-in manifolds");
  catalog->require_subcommand(1);
  CLI::App* list = catalog->add_subcommand("list", "list entries");
  list->add_flag("--json", o.json, "JSON output");
  CLI::App* show = catalog->add_subcommand("show", "print an entry as manifold JSON");
  show->add_option("name", o.show_name)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (tensors->parsed()) return cmd_tensors(o, out);
    if (verify->parsed()) return cmd_verify(o, false, out);
    if (suite->parsed()) return cmd_verify(o, true, out);
    if (list->parsed()) return cmd_catalog_list(o, out);
    if (show->parsed()) return cmd_catalog_show(o, out);
  } catch (const std::exception& e) {
    err << "nsr: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace nsr
