#pragma once

#include <optional>

#include "nsr/curvature.hpp"

namespace nsr {

/// Characteristic data of an SNS connection built from π.
struct CharTensors {
  Vector pi;          ///< π_i
  Vector pi_up;       ///< π^i = g^{ij} π_j
  Matrix nabla_pi;    ///< (i, j): ∇_i π_j = e_i(π_j) − {^e_ij} π_e
  Matrix pi_low;      ///< (i, k): π_ik = ∇_i π_k − π_i π_k + ½ g_ik π_h π^h
  Matrix pi_mixed;    ///< (i, h): π_i^h = π_ik g^{hk}
  double alpha = 0.0; ///< π_i^i
};

/// ∇_i ω_j = e_i(ω_j) − {^e_ij} ω_e, as (i, j).
Matrix covariant_derivative(const OneFormAtPoint& form, const ChristoffelAtPoint& horizontal);

CharTensors char_tensor(const LocalFrame& frame, const OneFormField& pi);
CharTensors char_tensor(const AdaptedManifold& m, const OneFormField& pi, const Point& p);

/// Conformal-type tensor of any horizontal curvature (Ĉ for ∇, C for D):
/// R^h_ijk − (δ_j^h R_ik − δ_i^h R_jk + g_ik R^h_j − g_jk R^h_i)/(ℓ−2)
///        + R (g_ik δ_j^h − g_jk δ_i^h)/((ℓ−1)(ℓ−2)).
/// Throws EllTooSmall for ℓ < 3.
Tensor4 conformal_tensor(const CurvatureAtPoint& curv, const MetricAtPoint& metric, std::size_t l);

/// Projective-type tensor (Ŵ, W or W̃ depending on the input curvature):
/// R^h_ijk − (δ_j^h R_ik − δ_i^h R_jk)/(ℓ−1).
Tensor4 projective_tensor(const CurvatureAtPoint& curv, std::size_t l);

/// W − Ŵ predicted from the characteristic tensor:
/// (δ_j^h π_ik − δ_i^h π_jk)/(ℓ−1) + (g_ik π_j^h − g_jk π_i^h) − α(δ_j^h g_ik − δ_i^h g_jk)/(ℓ−1).
Tensor4 projective_change(const Matrix& pi_low, const Matrix& pi_mixed, double alpha,
                          const MetricAtPoint& metric);

/// One side of the two-sided trace-adjusted identity, written out term by
/// term with the R/(2(ℓ−1)) shifts. Requires ℓ ≥ 3.
Tensor4 trace_adjusted_side(const CurvatureAtPoint& curv, const MetricAtPoint& metric, std::size_t l);

struct RelationResiduals {
  double eq33 = 0.0;   ///< R (direct SNS) vs K + π-correction
  double ricci_relation = 0.0;  ///< R_ik vs K_ik + (ℓ−2)π_ik + α g_ik
  double eq35 = 0.0;   ///< |R − K − 2(ℓ−1)α|
  std::optional<double> pi_from_ricci;  ///< π_ik recovered from Ricci data vs char_tensor (ℓ ≥ 3)
  std::optional<double> pi_mixed_from_ricci;  ///< π_i^h recovered vs char_tensor (ℓ ≥ 3)
  std::optional<double> eq38;  ///< trace-adjusted side built from R vs from K (ℓ ≥ 3)
  double eq311_W = 0.0;  ///< W − Ŵ vs projective_change

  double max() const;
};

RelationResiduals relation_residuals(const AdaptedManifold& m, const OneFormField& pi, const Point& p);

/// Auxiliary tensors of a projective SNS connection Γ̃ = {} + p_i δ_j^k + q_j δ_i^k.
struct ProjectiveAux {
  Vector phi;          ///< (p + q)/2
  Vector rho;          ///< (q − p)/2
  Matrix phi_ij;       ///< ∇_i φ_j − φ_i φ_j
  Matrix rho_ij;       ///< ∇_i ρ_j − ρ_i ρ_j
  Matrix nabla_phi;    ///< ∇_i φ_j
  Matrix nabla_rho;    ///< ∇_i ρ_j
  Matrix beta;         ///< φ_ij − φ_ji + ρ_ji − ρ_ij
  Matrix beta_first;   ///< (∇_i p)(e_j) − (∇_j p)(e_i)
  Matrix alpha_t;      ///< φ_ij + ρ_ij − φ_i ρ_j − φ_j ρ_i
  Matrix alpha_first;  ///< (∇_i q)(e_j) − q_i q_j
};

ProjectiveAux projective_aux(const LocalFrame& frame, const OneFormField& p_form,
                             const OneFormField& q_form);
ProjectiveAux projective_aux(const AdaptedManifold& m, const OneFormField& p_form,
                             const OneFormField& q_form, const Point& point);

/// β_ij δ_k^h + α_ik δ_j^h − α_jk δ_i^h in (i, j, k, h) order.
Tensor4 projective_curvature_correction(const ProjectiveAux& aux);

/// R̃^h_ijk = K^h_ijk + β_ij δ_k^h + α_ik δ_j^h − α_jk δ_i^h, lowered and
/// contracted like any other curvature.
CurvatureAtPoint rtilde_via_relation(const AdaptedManifold& m, const OneFormField& p_form,
                                     const OneFormField& q_form, const Point& point);

/// max_{i<j} |e_i(ω_j) − e_j(ω_i)|; the bracket term drops because
/// [e_i, e_j] has no horizontal part.
double closedness_check(const AdaptedManifold& m, const OneFormField& form, const Point& p);

}  // namespace nsr
