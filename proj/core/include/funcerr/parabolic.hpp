#pragma once

#include "funcerr/elliptic.hpp"
#include "funcerr/field.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/quadrature.hpp"
#include "funcerr/reports.hpp"

namespace funcerr::parabolic {

// All norms below are over Ξ = (0,T) × Ω unless they carry a time slice.
// Space-time error reports reuse EqualityReport / BoundReport; trace terms
// appear as components with a _T (terminal) or initial_ prefix.

/// ‖u‖²_H11 + ‖∇u‖²_Hdiv + ‖u(T)‖²_H1 = ‖f‖² + ‖u0‖²_H1.
EqualityReport trd_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q = {});

/// ‖(∂t−Δ+ω)w‖² = ‖∂tw‖² + ω²‖w‖² + 2ω‖∇w‖² + ‖Δw‖² + ‖∇w(T)‖² − ‖∇w(0)‖² + ω‖w(T)‖² − ω‖w(0)‖²
/// for boundary-vanishing w. Terms are moved so that both sides are sums of
/// non-negative components.
EqualityReport omega_identity_check(const ScalarField& w, const BoxDomain& dom, double omega,
                                    const QuadratureRule& q = {});

/// Conforming mixed pair:
///   ‖u−ũ‖²_H01 + ‖p−p̃‖² + ‖∂t(u−ũ)+div(p̃−p)‖² + ‖(u−ũ)(T)‖²
///     = ‖f−∂tũ−ũ+div p̃‖² + ‖p̃−∇ũ‖² + ‖u0−ũ(0)‖².
/// The middle term is also evaluated as ‖f−u−∂tũ+div p̃‖² (extras).
EqualityReport trd_equality(const mms::ProblemCase& c, const mms::ApproxPair& a, const QuadratureRule& q = {});

/// ‖u−ũ‖²_H11 + ‖∇(u−ũ)‖²_Hdiv + ‖(u−ũ)(T)‖²_H1 = ‖f−∂tũ−ũ+Δũ‖² + ‖u0−ũ(0)‖²_H1.
EqualityReport trd_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& u_tilde,
                                            const QuadratureRule& q = {});

/// ‖∂tu‖² + ‖Δu‖² + ‖∇u(T)‖² = ‖f‖² + ‖∇u0‖².
EqualityReport heat_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q = {});

/// ‖∂t(u−ũ)‖² + ‖Δ(u−ũ)‖² + ‖∇(u−ũ)(T)‖² = ‖f+Δũ−∂tũ‖² + ‖∇(u0−ũ(0))‖².
EqualityReport heat_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& u_tilde,
                                             const QuadratureRule& q = {});

/// Two-sided bound with R = ‖f+div p̃−∂tũ‖, G = ‖p̃−∇ũ‖, I = ‖u0−ũ(0)‖:
///   max{R² + ½G²; (G²+I²)/(1+c²)}
///     ≤ ‖∇(u−ũ)‖² + ‖p−p̃‖² + ‖∂t(u−ũ)+div(p̃−p)‖² + ‖(u−ũ)(T)‖²
///     ≤ R² + γ/(γ−1)·(γc²R² + G² + I²),   γ > 1.
/// γ = 2 gives (1+4c²)R² + 2G² + 2I². The middle term is taken as R² and its
/// exact-side value is attached for comparison.
BoundReport heat_two_sided(const mms::ProblemCase& c, const mms::ApproxPair& a,
                           const elliptic::FriedrichsConstant& cf, double gamma = 2.0, const QuadratureRule& q = {});

}  // namespace funcerr::parabolic
