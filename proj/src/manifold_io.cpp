#include "nsr/manifold_io.hpp"

#include <fstream>
#include <sstream>

namespace nsr {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ManifoldError("field '" + field + "': " + what);
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(key, "missing");
  return doc.at(key);
}

std::size_t read_size(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Expr read_expr(const json& v, const std::string& field, std::size_t n) {
  if (!v.is_string()) fail(field, "expected an expression string");
  try {
    return parse(v.get<std::string>(), n);
  } catch (const ParseError& e) {
    fail(field, e.what());
  }
}

AdaptedManifold::ExprMatrix read_matrix(const json& doc, const char* key, std::size_t rows,
                                        std::size_t cols, std::size_t n) {
  const json& v = require(doc, key);
  if (!v.is_array() || v.size() != rows)
    fail(key, "expected " + std::to_string(rows) + " rows");
  AdaptedManifold::ExprMatrix out(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_field = std::string(key) + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != cols)
      fail(row_field, "expected " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j)
      out[i].push_back(read_expr(v[i][j], row_field + "[" + std::to_string(j) + "]", n));
  }
  return out;
}

OneFormField read_form(const json& v, const std::string& field, std::size_t n, std::size_t l) {
  try {
    if (v.is_string()) return OneFormField::parse(v.get<std::string>(), n, l);
    if (!v.is_array()) fail(field, "expected a string or an array of strings");
    OneFormField f;
    for (std::size_t i = 0; i < v.size(); ++i)
      f.components.push_back(read_expr(v[i], field + "[" + std::to_string(i) + "]", n));
    if (f.size() != l) fail(field, "expected " + std::to_string(l) + " components");
    return f;
  } catch (const ParseError& e) {
    fail(field, e.what());
  } catch (const ManifoldError& e) {
    if (std::string(e.what()).rfind("field", 0) == 0) throw;
    fail(field, e.what());
  }
}

const char* const kFormKeys[] = {"pi",        "p",         "q",      "closed_pi", "open_pi",
                                 "iso_pi",    "special_p", "special_q", "null_p", "null_q"};

}  // namespace

ManifoldSource parse_manifold_json(std::string_view text, std::string name) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ManifoldError("malformed JSON at line " + std::to_string(line) + ", column " +
                        std::to_string(col));
  }
  if (!doc.is_object()) fail("<root>", "expected an object");

  const std::size_t n = read_size(doc, "n");
  const std::size_t l = read_size(doc, "l");
  if (l < 2 || l >= n) fail("l", "need 2 <= l < n");
  auto g = read_matrix(doc, "g", l, l, n);
  auto A = read_matrix(doc, "A", l, n - l, n);

  const json& d = require(doc, "domain");
  if (!d.is_array() || d.size() != n) fail("domain", "expected " + std::to_string(n) + " intervals");
  std::vector<Interval> domain;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string field = "domain[" + std::to_string(i) + "]";
    if (!d[i].is_array() || d[i].size() != 2 || !d[i][0].is_number() || !d[i][1].is_number())
      fail(field, "expected [lo, hi]");
    domain.push_back(Interval{d[i][0].get<double>(), d[i][1].get<double>()});
  }

  FormMap forms;
  for (const char* key : kFormKeys)
    if (doc.contains(key)) forms[key] = read_form(doc.at(key), key, n, l);

  try {
    return ManifoldSource{std::move(name), AdaptedManifold(n, l, g, A, domain), std::move(forms)};
  } catch (const ManifoldError& e) {
    fail("<manifold>", e.what());
  }
}

ManifoldSource load_manifold(const std::string& source) {
  if (source.rfind("catalog:", 0) == 0) {
    CatalogEntry e = catalog_get(source.substr(8));
    return ManifoldSource{source, e.manifold, e.forms};
  }
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifold_json(buf.str(), source);
}

nlohmann::ordered_json manifold_to_json(const AdaptedManifold& m, const FormMap& forms) {
  nlohmann::ordered_json j;
  j["n"] = m.n();
  j["l"] = m.l();
  auto matrix = [](const AdaptedManifold::ExprMatrix& e) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : e) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const auto& x : r) row.push_back(to_string(x));
      rows.push_back(row);
    }
    return rows;
  };
  j["g"] = matrix(m.metric_exprs());
  j["A"] = matrix(m.pfaffian_exprs());
  j["domain"] = nlohmann::ordered_json::array();
  for (const auto& iv : m.domain()) j["domain"].push_back({iv.lo, iv.hi});
  for (const auto& [key, f] : forms) {
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& e : f.components) comps.push_back(to_string(e));
    j[key] = comps;
  }
  return j;
}

std::string form_to_string(const OneFormField& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + to_string(f.components[i]);
  return s;
}

}  // namespace nsr
