#pragma once

#include <vector>

#include "nsr/chart.hpp"

namespace nsr {

/// A 1-form on HM by its components ω_i = ω(e_i) in the adapted coframe;
/// each component may depend on all n coordinates.
struct OneFormField {
  std::vector<Expr> components;

  std::size_t size() const { return components.size(); }

  static OneFormField zero(std::size_t l);
  /// Parses "e1,e2,...,el" (comma-separated expressions).
  static OneFormField parse(std::string_view text, std::size_t n, std::size_t l);
  /// ω = (p + q)/2 style combinations.
  static OneFormField combine(double a, const OneFormField& p, double b, const OneFormField& q);
};

/// Values ω_i and frame derivatives e_h(ω_i) of a 1-form at a point.
struct OneFormAtPoint {
  Vector value;        ///< value[i] = ω_i
  Matrix frame_grad;   ///< frame_grad(h, i) = e_h(ω_i)
};

/// Everything about a point that every connection needs.
struct LocalFrame {
  Point point;
  MetricAtPoint metric;
  Matrix A;  ///< A_i^α(p)
};

LocalFrame local_frame(const AdaptedManifold& m, const Point& p);

OneFormAtPoint evaluate_form(const LocalFrame& frame, const OneFormField& form);

/// Which connection to build.
struct ConnectionSpec {
  enum class Kind { Horizontal, SNS, ProjectiveSNS };

  Kind kind = Kind::Horizontal;
  OneFormField pi;  ///< SNS torsion form
  OneFormField p;   ///< projective SNS: Γ̃ = {} + p_i δ_j^k + q_j δ_i^k
  OneFormField q;

  static ConnectionSpec horizontal() { return {}; }
  static ConnectionSpec sns(OneFormField pi) { return {Kind::SNS, std::move(pi), {}, {}}; }
  static ConnectionSpec projective(OneFormField p, OneFormField q) {
    return {Kind::ProjectiveSNS, {}, std::move(p), std::move(q)};
  }

  /// Throws ManifoldError when a referenced form does not have ℓ components.
  void check(std::size_t l) const;
};

const char* to_string(ConnectionSpec::Kind kind);

struct ChristoffelAtPoint {
  Tensor3 gamma;   ///< gamma(k, i, j) = Γ^k_ij, with D_{e_i} e_j = Γ^k_ij e_k
  Tensor4 dgamma;  ///< dgamma(h, k, i, j) = e_h(Γ^k_ij)
};

/// Horizontal sub-Riemannian connection ∇:
/// {^k_ij} = ½ g^{kh}(∂_j g_ih + ∂_i g_jh − ∂_h g_ij), derivatives in closed form.
ChristoffelAtPoint christoffel_horizontal(const MetricAtPoint& metric);
ChristoffelAtPoint christoffel_horizontal(const AdaptedManifold& m, const Point& p);

/// Horizontal, SNS (Γ = {} + δ_i^k π_j − g_ij π^k) or projective SNS
/// (Γ̃ = {} + p_i δ_j^k + q_j δ_i^k) coefficients with their frame derivatives.
ChristoffelAtPoint connection_coeffs(const LocalFrame& frame, const ConnectionSpec& spec);
ChristoffelAtPoint connection_coeffs(const AdaptedManifold& m, const ConnectionSpec& spec,
                                     const Point& p);

/// T^k_ij = Γ^k_ij − Γ^k_ji, as T(k, i, j). The horizontal part of [e_i, e_j]
/// vanishes in adapted frames, so no bracket term appears.
Tensor3 torsion(const ChristoffelAtPoint& c);
Tensor3 torsion(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p);

/// max_{i,j,k} |e_i(g_jk) − Γ^e_ij g_ek − Γ^e_ik g_je|.
double compatibility_residual(const MetricAtPoint& metric, const ChristoffelAtPoint& c);
double compatibility_residual(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p);

}  // namespace nsr
