#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nsr/connections.hpp"

namespace nsr {

/// Named 1-forms attached to a manifold. Keys used by the checks:
/// pi, p, q, closed_pi, open_pi, iso_pi, special_p, special_q, null_p, null_q.
using FormMap = std::map<std::string, OneFormField>;

struct CatalogEntry {
  std::string name;
  AdaptedManifold manifold;
  FormMap forms;
  std::string notes;
};

struct RandomMetricConfig {
  unsigned degree = 1;
  double amplitude = 0.3;
  std::uint64_t seed = 42;
};

std::vector<std::string> catalog_names();

/// flat3, heisenberg, particle, particle3, hyperbolic3, or
/// random[:seed[:degree[:amplitude]]] (n = 5, ℓ = 3).
CatalogEntry catalog_get(std::string_view name);

/// g = I + BᵀB with B polynomial in x1..xℓ, A polynomial in all
/// coordinates, domain [−1, 1]^n. Requires degree ≤ 3 and amplitude ≤ 1.
AdaptedManifold generate_random_manifold(const RandomMetricConfig& cfg, std::size_t n, std::size_t l);

/// Sum of c · monomial over all monomials of total degree ≤ `degree` in the
/// variables `vars`, with c uniform in [−scale, scale].
Expr random_polynomial(const std::vector<std::size_t>& vars, unsigned degree, double scale,
                       std::uint64_t seed);

/// Components e_i(f) = ∂_i f − A_i^α ∂_α f as expressions.
OneFormField dhf(const AdaptedManifold& m, const Expr& f);

/// q_j = −2 x_j / (1 + Σ_h x_h²), i.e. −d_h log(1 + |x_h|²) when A does not
/// act on horizontal-only functions.
OneFormField lemma43_q(std::size_t l);

OneFormField const_form(const std::vector<double>& c);

/// Random polynomial 1-form over all n coordinates.
OneFormField random_one_form(std::size_t n, std::size_t l, unsigned degree, double scale,
                             std::uint64_t seed);

}  // namespace nsr
