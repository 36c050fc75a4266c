#pragma once

#include <optional>

#include "funcerr/domain.hpp"
#include "funcerr/field.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/quadrature.hpp"
#include "funcerr/reports.hpp"

namespace funcerr::elliptic {

struct FriedrichsConstant {
  enum class Provenance { BoxClosedForm, UserSupplied };
  double value = 0.0;
  Provenance provenance = Provenance::BoxClosedForm;
};

const char* to_string(FriedrichsConstant::Provenance p);

/// 1/(π·sqrt(Σ 1/Lᵢ²)): the inverse square root of the first Dirichlet
/// eigenvalue of the box.
FriedrichsConstant friedrichs_constant(const BoxDomain& dom);
/// Caller-supplied override; must be positive and finite.
FriedrichsConstant friedrichs_constant(double value);

/// ‖u‖² + 2‖∇u‖² + ‖Δu‖² = ‖f‖² for the exact reaction-diffusion solution.
EqualityReport rd_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q = {});
/// ‖Δu‖² = ‖f‖² for the exact Poisson solution.
EqualityReport poisson_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q = {});

/// Conforming mixed pair: ‖u−ũ‖²_H1 + ‖p−p̃‖²_Hdiv = ‖f−ũ+div p̃‖² + ‖p̃−∇ũ‖².
EqualityReport rd_equality(const mms::ProblemCase& c, const mms::ApproxPair& a, const QuadratureRule& q = {});

/// ‖u−ũ‖²_H1 + ‖∇(u−ũ)‖²_Hdiv = ‖f−ũ+Δũ‖² for boundary-vanishing ũ with a laplacian.
EqualityReport rd_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& u_tilde,
                                           const QuadratureRule& q = {});

enum class RdPart { I, II, III };

/// Majorants for L²-only (ũ, p̃) with free fields φ ∈ H¹₀, ϕ ∈ H(div):
///   (i)   ‖u−ũ‖²            ≤ (1+1/γ)(‖f−φ+divϕ‖² + ½‖ϕ−∇φ‖²) + (1+γ)‖φ−ũ‖²
///   (ii)  ‖p−p̃‖²            ≤ (1+1/γ)(½‖f−φ+divϕ‖² + ‖ϕ−∇φ‖²) + (1+γ)‖ϕ−p̃‖²
///   (iii) ‖u−ũ‖²+‖p−p̃‖²     ≤ (1+1/γ)(‖f−φ+divϕ‖² + ‖ϕ−∇φ‖²) + (1+γ)(‖φ−ũ‖² + ‖ϕ−p̃‖²)
BoundReport rd_nonconforming_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a,
                                    const mms::FreeFields& free, double gamma, RdPart which,
                                    const QuadratureRule& q = {});

/// Semi-conforming two-sided bounds.
///
/// ũ ∈ H¹₀, p̃ ∈ L², free ϕ:
///   ½‖p̃−∇ũ‖² ≤ ‖u−ũ‖²_H1 + ‖p−p̃‖²
///            ≤ (1+1/(2γ))‖f−ũ+divϕ‖² + (1+1/γ)‖ϕ−∇ũ‖² + (1+γ)‖ϕ−p̃‖²
/// The coarser bound on ‖u−ũ‖² + ‖p−p̃‖² is attached as extras.
BoundReport rd_semiconforming_primal_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a,
                                            const VectorField& flux, double gamma, const QuadratureRule& q = {});
/// ũ ∈ L², p̃ ∈ H(div), free φ:
///   ½‖f−ũ+div p̃‖² ≤ ‖u−ũ‖² + ‖p−p̃‖²_Hdiv
///                ≤ (1+1/γ)‖f−φ+div p̃‖² + (1+1/(2γ))‖p̃−∇φ‖² + (1+γ)‖φ−ũ‖²
BoundReport rd_semiconforming_dual_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a,
                                          const ScalarField& phi, double gamma, const QuadratureRule& q = {});
/// Dispatches on a.level (SemiConformingPrimal uses free.flux, SemiConformingDual free.phi).
BoundReport rd_semiconforming_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a,
                                     const mms::FreeFields& free, double gamma, const QuadratureRule& q = {});

/// ‖u−ũ‖²_H1 ≤ ‖f−ũ+divϕ‖² + ‖ϕ−∇ũ‖² for ũ ∈ H¹₀.
BoundReport rd_primal_majorant(const mms::ProblemCase& c, const ScalarField& u_tilde, const VectorField& flux,
                               const QuadratureRule& q = {});

/// Two-sided bound for conforming mixed Poisson approximations, R = ‖f+div p̃‖,
/// G = ‖p̃−∇ũ‖:
///   max{R² + ½G²; G²/(1+c²)} ≤ ‖∇(u−ũ)‖² + ‖p−p̃‖²_Hdiv ≤ R² + γ/(γ−1)·(γc²R² + G²)
/// for γ > 1; γ = 2 gives (1+4c²)R² + 2G². ‖div(p−p̃)‖ is taken as R and the
/// exact-side value is attached for comparison.
BoundReport poisson_two_sided(const mms::ProblemCase& c, const mms::ApproxPair& a, const FriedrichsConstant& cf,
                              double gamma = 2.0, const QuadratureRule& q = {});

/// ‖Δ(u−ũ)‖² = ‖f+Δũ‖².
EqualityReport poisson_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& u_tilde,
                                                const QuadratureRule& q = {});

struct PoissonFreeFields {
  ScalarField phi;                   ///< φ ∈ H¹₀
  VectorField flux;                  ///< ϕ ∈ H(div)
  std::optional<VectorField> theta;  ///< θ ∈ H(div); defaults to ϕ
  std::optional<ScalarField> psi;    ///< ψ ∈ H¹₀; defaults to φ
};

enum class PoissonPart { I, II, MixedI, MixedII };

/// Poisson majorants with free fields:
///   (i)       ‖u−ũ‖ ≤ c²‖f+divϕ‖ + c‖ϕ−∇φ‖ + ‖φ−ũ‖   (reported squared; unsquared in extras)
///   (ii)      ‖p−p̃‖² ≤ (c‖f+divϕ‖ + ‖ϕ−p̃‖)² + ‖p̃−∇φ‖²
///   (mixed-i) ũ ∈ H¹₀: ½‖p̃−∇ũ‖² ≤ ‖∇(u−ũ)‖² + ‖p−p̃‖²
///                     ≤ (c‖f+divθ‖ + ‖θ−∇ũ‖)² + (c‖f+divϕ‖ + ‖ϕ−p̃‖)² + ‖p̃−∇φ‖²
///   (mixed-ii) p̃ ∈ H(div): ‖u−ũ‖² + ‖p−p̃‖²_Hdiv
///                     ≤ (c²‖f+divθ‖ + c‖θ−∇ψ‖ + ‖ψ−ũ‖)² + (c‖f+divϕ‖ + ‖ϕ−p̃‖)² + ‖p̃−∇φ‖² + ‖f+div p̃‖²
BoundReport poisson_nonconforming(const mms::ProblemCase& c, const mms::ApproxPair& a, const PoissonFreeFields& free,
                                  const FriedrichsConstant& cf, PoissonPart which, const QuadratureRule& q = {});

/// ‖∇(u−ũ)‖² ≤ (c‖f+divϕ‖ + ‖ϕ−∇ũ‖)² for ũ ∈ H¹₀.
BoundReport poisson_primal_majorant(const mms::ProblemCase& c, const ScalarField& u_tilde, const VectorField& flux,
                                    const FriedrichsConstant& cf, const QuadratureRule& q = {});

/// Friedrichs-type margins; non-negative when the inequality holds.
/// c‖∇w‖ − ‖w‖ for boundary-vanishing w.
double cf_check(const ScalarField& w, const BoxDomain& dom, const FriedrichsConstant& cf, const QuadratureRule& q = {});
/// c‖Δw‖ − ‖∇w‖ for boundary-vanishing w with a laplacian.
double cftwo_check(const ScalarField& w, const BoxDomain& dom, const FriedrichsConstant& cf,
                   const QuadratureRule& q = {});
/// c‖div ψ‖ − ‖ψ‖; only meaningful for ψ ∈ ∇H¹₀, which the caller guarantees.
double cfthree_check(const VectorField& psi, const BoxDomain& dom, const FriedrichsConstant& cf,
                     const QuadratureRule& q = {});

}  // namespace funcerr::elliptic
