#pragma once

#include "funcerr/domain.hpp"
#include "funcerr/field.hpp"
#include "funcerr/quadrature.hpp"

namespace funcerr {

/// Norms over Ω (elliptic domain) or Ξ (parabolic domain).
enum class NormKind {
  L2,      ///< ‖w‖²
  H1,      ///< ‖w‖² + ‖∇w‖²
  Hdiv,    ///< ‖ψ‖² + ‖div ψ‖²        (vector fields)
  V,       ///< ‖w‖² + 2‖∇w‖² + ‖Δw‖²
  H11,     ///< ‖w‖² + ‖∇w‖² + ‖∂t w‖²  (parabolic)
  WStar,   ///< ‖w‖²_H11 + ‖∇w‖²_Hdiv + ‖w(T)‖²_H1  (parabolic)
  Triple,  ///< ‖∂t w‖² + ‖Δw‖² + ‖∇w(T)‖²          (parabolic)
};

const char* to_string(NormKind kind);

enum class TimeSlice { Initial, Terminal };
enum class TraceVariant { Value, Gradient, H1 };

/// Two evaluations of an identity and their disagreement.
struct IdentityResidual {
  double left = 0.0;
  double right = 0.0;
  double absolute = 0.0;
  /// absolute / max(|left|, |right|, floor)
  double relative = 0.0;
};

inline constexpr double kResidualFloor = 1e-14;

IdentityResidual make_identity_residual(double left, double right);

double l2_inner(const ScalarField& a, const ScalarField& b, const BoxDomain& dom, const QuadratureRule& q);
double l2_inner(const VectorField& a, const VectorField& b, const BoxDomain& dom, const QuadratureRule& q);
/// Rank-generic form; throws ContractError on a rank mismatch.
double l2_inner(const AnyField& a, const AnyField& b, const BoxDomain& dom, const QuadratureRule& q);

double norm_sq(NormKind kind, const ScalarField& w, const BoxDomain& dom, const QuadratureRule& q);
/// Only L2 and Hdiv apply to vector fields.
double norm_sq(NormKind kind, const VectorField& w, const BoxDomain& dom, const QuadratureRule& q);

/// Spatial norm of the slice w(0,·) or w(T,·).
double trace_norm_sq(const ScalarField& w, TimeSlice at, TraceVariant variant, const BoxDomain& dom,
                     const QuadratureRule& q);
double trace_norm_sq(const VectorField& w, TimeSlice at, const BoxDomain& dom, const QuadratureRule& q);

/// 2⟨∂t w, w⟩ against ‖w(T)‖² − ‖w(0)‖².
IdentityResidual timecross_check(const ScalarField& w, const BoxDomain& dom, const QuadratureRule& q);
IdentityResidual timecross_check(const VectorField& w, const BoxDomain& dom, const QuadratureRule& q);

/// ⟨∇u, ψ⟩ against −⟨u, div ψ⟩ for boundary-vanishing u. Over Ξ on a
/// parabolic domain.
IdentityResidual partint_residual(const ScalarField& u, const VectorField& psi, const BoxDomain& dom,
                                  const QuadratureRule& q);

/// c_f‖∇w‖ − ‖w‖; non-negative for boundary-vanishing w when c_f is valid.
double friedrichs_margin(const ScalarField& w, double friedrichs_constant, const BoxDomain& dom,
                         const QuadratureRule& q);

/// Largest |w| over sample points on ∂Ω (and, on a parabolic domain, over
/// the mantle I × ∂Ω).
double boundary_sup(const ScalarField& w, const BoxDomain& dom, int samples_per_axis = 7);

/// Throws ContractError unless w is (numerically) zero on the sampled boundary.
void require_vanishing_on_boundary(const ScalarField& w, const BoxDomain& dom, const char* what);

}  // namespace funcerr
