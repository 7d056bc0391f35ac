#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "nsr/catalog.hpp"

namespace nsr {

struct ManifoldSource {
  std::string name;
  AdaptedManifold manifold;
  FormMap forms;
};

/// Parses the manifold file format: n, l, g (ℓ×ℓ strings), A (ℓ×(n−ℓ)
/// strings), domain (n pairs) and optional 1-forms under the FormMap keys,
/// each a comma-separated string or an array of strings. Errors name the
/// field and, for JSON syntax errors, the line and column.
ManifoldSource parse_manifold_json(std::string_view text, std::string name = "<input>");

/// "catalog:<name>" or a path to a manifold file.
ManifoldSource load_manifold(const std::string& source);

nlohmann::ordered_json manifold_to_json(const AdaptedManifold& m, const FormMap& forms = {});

/// Components joined with ", ".
std::string form_to_string(const OneFormField& f);

}  // namespace nsr
