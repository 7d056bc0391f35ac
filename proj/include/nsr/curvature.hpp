#pragma once

#include <cstdint>
#include <span>

#include "nsr/connections.hpp"

namespace nsr {

/// Horizontal curvature data, all rank-4 tensors in (i, j, k, h) order.
struct CurvatureAtPoint {
  Tensor4 r_mixed;  ///< R^h_ijk, coefficient of e_h in R(e_i, e_j)e_k
  Tensor4 r_low;    ///< R_ijkh = R^l_ijk g_lh
  Matrix ricci;     ///< R_ik = R_ijkh g^{jh}
  double scalar = 0.0;  ///< R = g^{ik} R_ik
};

/// Lowers, contracts and traces a mixed curvature tensor.
CurvatureAtPoint curvature_from_mixed(Tensor4 r_mixed, const MetricAtPoint& metric);

/// R^h_ijk = e_i(Γ^h_jk) − e_j(Γ^h_ik) + Γ^e_jk Γ^h_ie − Γ^e_ik Γ^h_je.
///
/// D_[e_i,e_j] e_k has no horizontal part ([e_i, e_j] is vertical and
/// D_{X_v}Y_h = [X_v, Y_h]_h vanishes on frame fields), so no bracket
/// correction appears; R^h_αjk and R^h_αβk are zero and never stored.
CurvatureAtPoint curvature_direct(const MetricAtPoint& metric, const ChristoffelAtPoint& c);
CurvatureAtPoint curvature_direct(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p);

struct CharTensors;

/// The π-dependent part of R − K for an SNS connection:
/// δ_j^h π_ik − δ_i^h π_jk + π_j^h g_ik − π_i^h g_jk, in (i, j, k, h) order.
Tensor4 sns_curvature_correction(const CharTensors& ch, const MetricAtPoint& metric);

/// SNS curvature rebuilt from the horizontal curvature K and the
/// characteristic tensor instead of from the SNS coefficients.
CurvatureAtPoint curvature_sns_via_relation(const AdaptedManifold& m, const OneFormField& pi,
                                            const Point& p);

/// R^h_j = R_jk g^{hk}, stored as (j, h).
Matrix ricci_mixed(const CurvatureAtPoint& curv, const MetricAtPoint& metric);

class DegeneratePlane : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// λ = R_ijkh u^i v^j u^k v^h / ((g_ih g_jk − g_jh g_ik) u^i v^j u^k v^h).
/// Throws DegeneratePlane when the Gram determinant is ≤ 1e-12.
double sectional(const CurvatureAtPoint& curv, const MetricAtPoint& metric,
                 std::span<const double> u, std::span<const double> v);
double sectional(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p,
                 std::span<const double> u, std::span<const double> v);

struct IsotropyResult {
  double lambda_mean = 0.0;
  double lambda_spread = 0.0;  ///< max − min over sampled planes
  double residual = 0.0;       ///< max |R_ijkh − λ_mean (g_ih g_jk − g_jh g_ik)|
};

/// Samples `planes` random horizontal 2-planes (planes ≥ 2).
IsotropyResult isotropy_check(const CurvatureAtPoint& curv, const MetricAtPoint& metric,
                              std::size_t planes, std::uint64_t seed);
IsotropyResult isotropy_check(const AdaptedManifold& m, const ConnectionSpec& spec, const Point& p,
                              std::size_t planes, std::uint64_t seed);

/// λ (g_ih g_jk − g_jh g_ik) in (i, j, k, h) order.
Tensor4 isotropic_curvature(double lambda, const MetricAtPoint& metric);

}  // namespace nsr
