#pragma once

#include <optional>
#include <vector>

#include "funcerr/elliptic.hpp"
#include "funcerr/field.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/quadrature.hpp"
#include "funcerr/reports.hpp"

namespace funcerr::opt {

struct GammaOptimum {
  double gamma = 0.0;  ///< +inf when B = 0, 0 when A = 0
  double bound = 0.0;
};

/// Minimizes (1+1/γ)A + (1+γ)B over γ > 0: γ* = sqrt(A/B), bound (√A+√B)².
GammaOptimum optimal_gamma(double A, double B);

/// (1+1/γ)A + (1+γ)B.
double young_majorant(double A, double B, double gamma);

/// Re-evaluates a bound at its optimal Young parameter, using the
/// components stored in the report's extras. Supported estimates:
/// rd_nonconforming_{i,ii,iii}, rd_semiconforming_{primal,dual},
/// poisson_two_sided, heat_two_sided. The returned upper bound never exceeds
/// the input's.
BoundReport reoptimize_gamma(const BoundReport& report);

/// M(ϕ) = residual_weight·‖g + div ϕ‖² + gap_weight·‖ϕ − ∇ũ‖², with
/// g = f − ũ for reaction-diffusion and g = f for Poisson.
struct MajorantWeights {
  double residual_weight = 1.0;
  double gap_weight = 1.0;
};

/// Weights of ‖u−ũ‖²_H1 ≤ ‖f−ũ+divϕ‖² + ‖ϕ−∇ũ‖².
MajorantWeights rd_weights();
/// Weights of the Young split (c‖f+divϕ‖ + ‖ϕ−∇ũ‖)² ≤ (1+β)c²‖f+divϕ‖² + (1+1/β)‖ϕ−∇ũ‖².
MajorantWeights poisson_weights(double friedrichs, double beta);

struct FluxFit {
  VectorField flux;
  std::vector<double> coefficients;
  double majorant = 0.0;         ///< M(ϕ*) by direct quadrature
  double quadratic_value = 0.0;  ///< M(ϕ*) from the assembled quadratic form
  bool regularized = false;      ///< ridge added after a failed Cholesky
};

/// Minimizes M over span(basis) through the normal equations.
FluxFit minimize_flux_majorant(const mms::ProblemCase& c, const ScalarField& u_tilde,
                               const std::vector<VectorField>& basis, const MajorantWeights& weights,
                               const QuadratureRule& q = {});

/// Linear combination Σ coeffs[k]·basis[k] with divergence.
VectorField combine(const std::vector<VectorField>& basis, const std::vector<double>& coeffs);

/// Successive enrichment of the primal majorant for a conforming ũ:
/// step s minimizes over the first s·d members of TrigFluxFamily (d = dim),
/// alternating with the Young parameter for Poisson. Each report's upper
/// bound is the minimum over the initial bound and all candidates so far.
/// `initial` must come from rd_primal_majorant or poisson_primal_majorant.
std::vector<BoundReport> improve_bound(const mms::ProblemCase& c, const ScalarField& u_tilde,
                                       const BoundReport& initial, int budget,
                                       std::optional<elliptic::FriedrichsConstant> cf = std::nullopt,
                                       const QuadratureRule& q = {});

}  // namespace funcerr::opt
