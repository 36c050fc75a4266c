#include "funcerr/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "checks.hpp"

namespace funcerr::opt {

GammaOptimum optimal_gamma(double A, double B) {
  if (!(A >= 0.0) || !(B >= 0.0) || !std::isfinite(A) || !std::isfinite(B))
    throw ContractError("optimal_gamma requires finite non-negative A and B");
  if (A == 0.0 && B == 0.0) return {1.0, 0.0};
  if (B == 0.0) return {std::numeric_limits<double>::infinity(), A};
  if (A == 0.0) return {0.0, B};
  const double sa = std::sqrt(A), sb = std::sqrt(B);
  return {sa / sb, (sa + sb) * (sa + sb)};
}

double young_majorant(double A, double B, double gamma) {
  detail::require_gamma(gamma);
  return (1.0 + 1.0 / gamma) * A + (1.0 + gamma) * B;
}

namespace {

BoundReport with_upper(const BoundReport& r, double upper, double gamma, const char* suffix) {
  std::vector<NamedValue> extras = r.extras;
  extras.push_back({"input_upper", r.upper_bound});
  if (r.gamma) extras.push_back({"input_gamma", *r.gamma});
  // A non-finite optimum (degenerate term) is reported through extras only.
  std::optional<double> g;
  if (std::isfinite(gamma)) g = gamma;
  else extras.push_back({"gamma_unbounded", 1.0});
  return BoundReport::make(r.estimate + suffix, r.lower_bounds, r.true_components, std::min(upper, r.upper_bound), g,
                           std::move(extras));
}

}  // namespace

BoundReport reoptimize_gamma(const BoundReport& r) {
  const auto& e = r.extras;
  auto x = [&](const char* name) { return value_of(e, name); };
  const std::string& k = r.estimate;
  if (k == "rd_nonconforming_i") {
    const auto o = optimal_gamma(x("residual_free") + 0.5 * x("gap_free"), x("dist_u"));
    return with_upper(r, o.bound, o.gamma, "_optimal");
  }
  if (k == "rd_nonconforming_ii") {
    const auto o = optimal_gamma(0.5 * x("residual_free") + x("gap_free"), x("dist_p"));
    return with_upper(r, o.bound, o.gamma, "_optimal");
  }
  if (k == "rd_nonconforming_iii") {
    const auto o = optimal_gamma(x("residual_free") + x("gap_free"), x("dist_u") + x("dist_p"));
    return with_upper(r, o.bound, o.gamma, "_optimal");
  }
  if (k == "rd_semiconforming_primal") {
    // (1+1/(2γ))R + (1+1/γ)G + (1+γ)B = R/2 + (1+1/γ)(R/2 + G) + (1+γ)B
    const double R = x("residual_free");
    const auto o = optimal_gamma(0.5 * R + x("gap_free"), x("dist_p"));
    return with_upper(r, 0.5 * R + o.bound, o.gamma, "_optimal");
  }
  if (k == "rd_semiconforming_dual") {
    const double G = x("gap_free");
    const auto o = optimal_gamma(x("residual_free") + 0.5 * G, x("dist_u"));
    return with_upper(r, 0.5 * G + o.bound, o.gamma, "_optimal");
  }
  if (k == "poisson_two_sided" || k == "heat_two_sided") {
    // R² + γ/(γ−1)(γc²R² + S) with S = G² (+ I²); substituting s = γ − 1
    // gives R² + (1+1/s)(c²R² + S) + (1+s)c²R².
    const double R2 = x("residual"), c2 = x("friedrichs") * x("friedrichs");
    double S = x("flux_gap");
    if (k == "heat_two_sided") S += x("initial_err");
    const auto o = optimal_gamma(c2 * R2 + S, c2 * R2);
    return with_upper(r, R2 + o.bound, 1.0 + o.gamma, "_optimal");
  }
  throw ContractError("reoptimize_gamma does not support estimate '" + k + "'");
}

MajorantWeights rd_weights() { return {1.0, 1.0}; }

MajorantWeights poisson_weights(double friedrichs, double beta) {
  if (!(friedrichs > 0.0)) throw ContractError("Friedrichs constant must be positive");
  detail::require_gamma(beta);
  return {(1.0 + beta) * friedrichs * friedrichs, 1.0 + 1.0 / beta};
}

VectorField combine(const std::vector<VectorField>& basis, const std::vector<double>& coeffs) {
  if (basis.empty()) throw ContractError("empty flux basis");
  if (basis.size() != coeffs.size()) throw ContractError("coefficient count does not match the basis");
  const int d = basis.front().dim();
  auto b = std::make_shared<const std::vector<VectorField>>(basis);
  auto c = std::make_shared<const std::vector<double>>(coeffs);
  VectorField::Parts parts;
  parts.value = [b, c](const Point& p) {
    Vec v{};
    for (std::size_t k = 0; k < b->size(); ++k) v = v + (*c)[k] * (*b)[k](p);
    return v;
  };
  parts.div = [b, c](const Point& p) {
    double s = 0.0;
    for (std::size_t k = 0; k < b->size(); ++k) s += (*c)[k] * (*b)[k].div(p);
    return s;
  };
  bool td = false;
  for (const auto& f : basis) td = td || f.time_dependent();
  return VectorField(d, std::move(parts), td);
}

FluxFit minimize_flux_majorant(const mms::ProblemCase& c, const ScalarField& ut, const std::vector<VectorField>& basis,
                               const MajorantWeights& w, const QuadratureRule& q) {
  const bool rd = c.kind == mms::ProblemKind::ReactionDiffusion;
  if (!rd && c.kind != mms::ProblemKind::Poisson)
    throw ContractError("flux majorants are defined for reaction-diffusion and Poisson cases");
  if (basis.empty()) throw ContractError("empty flux basis");
  if (!(w.residual_weight > 0.0) || !(w.gap_weight > 0.0)) throw ContractError("majorant weights must be positive");
  detail::require_scalar(ut, c.domain, {.vanishes = true, .grad = true}, "u_tilde");
  for (std::size_t k = 0; k < basis.size(); ++k)
    detail::require_vector(basis[k], c.domain, true, "basis member " + std::to_string(k));

  const int n = static_cast<int>(basis.size());
  const int pairs = n * (n + 1) / 2;
  // Layout: [Φ upper triangle | D upper triangle | d | e | ‖g‖² | ‖h‖²]
  const int count = 2 * pairs + 2 * n + 2;
  std::vector<Vec> val(n);
  std::vector<double> dv(n);
  const auto ints = integrate_many(c.domain, q, count, [&](const Point& x, std::span<double> o) {
    for (int k = 0; k < n; ++k) {
      val[k] = basis[k](x);
      dv[k] = basis[k].div(x);
    }
    const double g = rd ? c.source(x) - ut(x) : c.source(x);
    const Vec h = ut.grad(x);
    int idx = 0;
    for (int k = 0; k < n; ++k)
      for (int l = k; l < n; ++l) {
        o[idx] = dot(val[k], val[l]);
        o[pairs + idx] = dv[k] * dv[l];
        ++idx;
      }
    for (int k = 0; k < n; ++k) {
      o[2 * pairs + k] = g * dv[k];
      o[2 * pairs + n + k] = dot(h, val[k]);
    }
    o[count - 2] = g * g;
    o[count - 1] = norm_sq(h);
  });

  const double wr = w.residual_weight, wg = w.gap_weight;
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd rhs(n);
  int idx = 0;
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      A(k, l) = A(l, k) = wg * ints[idx] + wr * ints[pairs + idx];
      ++idx;
    }
  for (int k = 0; k < n; ++k) rhs(k) = -wr * ints[2 * pairs + k] + wg * ints[2 * pairs + n + k];

  FluxFit fit{VectorField::zero(c.domain.dim()), {}, 0.0, 0.0, false};
  Eigen::VectorXd coef;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() == Eigen::Success) {
    coef = llt.solve(rhs);
  }
  if (llt.info() != Eigen::Success || !coef.allFinite()) {
    const double scale = std::max(A.diagonal().cwiseAbs().maxCoeff(), 1.0);
    Eigen::MatrixXd Ar = A;
    Ar.diagonal().array() += 1e-12 * scale;
    coef = Ar.ldlt().solve(rhs);
    fit.regularized = true;
  }
  fit.coefficients.assign(coef.data(), coef.data() + n);
  fit.quadratic_value = wr * ints[count - 2] + wg * ints[count - 1] - 2.0 * rhs.dot(coef) + coef.dot(A * coef);
  fit.flux = combine(basis, fit.coefficients);

  const auto direct = detail::integrals<2>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double g = rd ? c.source(x) - ut(x) : c.source(x);
    o[0] = detail::sq(g + fit.flux.div(x));
    o[1] = detail::sq(fit.flux(x) - ut.grad(x));
  });
  fit.majorant = wr * direct[0] + wg * direct[1];
  return fit;
}

std::vector<BoundReport> improve_bound(const mms::ProblemCase& c, const ScalarField& ut, const BoundReport& initial,
                                       int budget, std::optional<elliptic::FriedrichsConstant> cf,
                                       const QuadratureRule& q) {
  if (budget < 1) throw ContractError("budget must be at least 1");
  const bool rd = c.kind == mms::ProblemKind::ReactionDiffusion;
  const std::string expected = rd ? "rd_primal_majorant" : "poisson_primal_majorant";
  if (initial.estimate != expected)
    throw ContractError("improve_bound expects a '" + expected + "' report, got '" + initial.estimate + "'");
  const auto fc = cf.value_or(elliptic::friedrichs_constant(c.domain));

  mms::TrigFluxFamily family(c.domain);
  const int d = c.domain.dim();
  std::vector<BoundReport> out;
  double best = initial.upper_bound;
  double beta = 1.0;
  for (int step = 1; step <= budget; ++step) {
    const auto basis = family.first(step * d);
    BoundReport candidate;
    if (rd) {
      const auto fit = minimize_flux_majorant(c, ut, basis, rd_weights(), q);
      candidate = elliptic::rd_primal_majorant(c, ut, fit.flux, q);
    } else {
      // Alternate flux and Young parameter; each half-step cannot increase
      // (c‖f+divϕ‖ + ‖ϕ−∇ũ‖)².
      constexpr int kAlternations = 4;
      for (int it = 0; it < kAlternations; ++it) {
        const auto fit = minimize_flux_majorant(c, ut, basis, poisson_weights(fc.value, beta), q);
        candidate = elliptic::poisson_primal_majorant(c, ut, fit.flux, fc, q);
        const double R = value_of(candidate.extras, "residual"), G = value_of(candidate.extras, "flux_gap");
        const auto o = optimal_gamma(G, fc.value * fc.value * R);
        if (!(o.gamma > 0.0) || !std::isfinite(o.gamma)) break;
        beta = o.gamma;
      }
    }
    best = std::min(best, candidate.upper_bound);
    auto extras = candidate.extras;
    extras.push_back({"step", static_cast<double>(step)});
    extras.push_back({"basis_size", static_cast<double>(basis.size())});
    extras.push_back({"candidate_upper", candidate.upper_bound});
    std::optional<double> g;
    if (!rd) g = beta;
    out.push_back(BoundReport::make(expected + "_enriched", {}, candidate.true_components, best, g, std::move(extras)));
  }
  return out;
}

}  // namespace funcerr::opt
