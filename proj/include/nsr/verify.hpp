#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nsr/catalog.hpp"

namespace nsr {

struct Witness {
  Point point;
  double residual = 0.0;
  std::vector<std::pair<std::string, double>> residuals;
};

struct Verdict {
  std::string theorem_id;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
  std::vector<Witness> witnesses;  ///< up to 3, residual descending
};

struct RunConfig {
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  std::optional<double> tolerance;          ///< applies to every check
  std::map<std::string, double> tolerances; ///< per check id, wins over `tolerance`
  FormMap forms;                            ///< missing keys get defaults
};

std::vector<std::string> check_ids();
double default_tolerance(const std::string& id);
/// Smallest ℓ the check accepts.
std::size_t min_ell(const std::string& id);
double tolerance_for(const std::string& id, const RunConfig& cfg);

/// Fills the FormMap keys absent from `given`:
/// pi, p, q random polynomial forms; closed_pi = d_h f with f a random
/// horizontal polynomial; open_pi = (x2, 0, ...); iso_pi = 0;
/// special_p = 0, special_q = −d_h log(1 + |x_h|²);
/// null_p = d_h(x1 x2), null_q = −d_h log(3 + x1 + x2).
FormMap with_default_forms(const AdaptedManifold& m, FormMap given, std::uint64_t seed);

/// Throws std::invalid_argument for an unknown id.
Verdict run_check(const std::string& id, const AdaptedManifold& m, const RunConfig& cfg);
std::vector<Verdict> run_suite(const AdaptedManifold& m, const RunConfig& cfg);

nlohmann::ordered_json to_json(const Verdict& v);

}  // namespace nsr
