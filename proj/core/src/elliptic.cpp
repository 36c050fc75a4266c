#include "funcerr/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "checks.hpp"

namespace funcerr::elliptic {

using detail::integrals;
using detail::require_scalar;
using detail::require_vector;
using detail::sq;
using mms::ProblemKind;

const char* to_string(FriedrichsConstant::Provenance p) {
  return p == FriedrichsConstant::Provenance::BoxClosedForm ? "box_closed_form" : "user_supplied";
}

FriedrichsConstant friedrichs_constant(const BoxDomain& dom) {
  double s = 0.0;
  for (int i = 0; i < dom.dim(); ++i) s += 1.0 / (dom.length(i) * dom.length(i));
  return {1.0 / (std::numbers::pi * std::sqrt(s)), FriedrichsConstant::Provenance::BoxClosedForm};
}

FriedrichsConstant friedrichs_constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ContractError("Friedrichs constant must be positive");
  return {value, FriedrichsConstant::Provenance::UserSupplied};
}

EqualityReport rd_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::ReactionDiffusion, "rd_isometry_check");
  const auto& u = c.exact_u;
  const auto v = integrals<4>(c.domain, q, [&](const Point& p, std::span<double> o) {
    o[0] = sq(u(p));
    o[1] = sq(u.grad(p));
    o[2] = sq(u.laplacian(p));
    o[3] = sq(c.source(p));
  });
  return EqualityReport::make("rd_isometry", {{"u", v[0]}, {"grad_u_x2", 2.0 * v[1]}, {"lap_u", v[2]}},
                              {{"f", v[3]}});
}

EqualityReport poisson_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::Poisson, "poisson_isometry_check");
  const auto& u = c.exact_u;
  const auto v = integrals<2>(c.domain, q, [&](const Point& p, std::span<double> o) {
    o[0] = sq(u.laplacian(p));
    o[1] = sq(c.source(p));
  });
  return EqualityReport::make("poisson_isometry", {{"lap_u", v[0]}}, {{"f", v[1]}});
}

EqualityReport rd_equality(const mms::ProblemCase& c, const mms::ApproxPair& a, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::ReactionDiffusion, "rd_equality");
  require_scalar(a.u_tilde, c.domain, {.vanishes = true, .grad = true}, "u_tilde");
  require_vector(a.p_tilde, c.domain, true, "p_tilde");
  const auto& u = c.exact_u;
  const auto& ut = a.u_tilde;
  const auto& p = c.exact_p;
  const auto& pt = a.p_tilde;
  const auto v = integrals<6>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double uv = u(x), utv = ut(x), ptdiv = pt.div(x);
    const Vec gut = ut.grad(x), ptv = pt(x);
    o[0] = sq(uv - utv);
    o[1] = sq(u.grad(x) - gut);
    o[2] = sq(p(x) - ptv);
    o[3] = sq(p.div(x) - ptdiv);
    o[4] = sq(c.source(x) - utv + ptdiv);
    o[5] = sq(ptv - gut);
  });
  return EqualityReport::make("rd_equality",
                              {{"err_u", v[0]}, {"err_grad_u", v[1]}, {"err_p", v[2]}, {"err_div_p", v[3]}},
                              {{"residual", v[4]}, {"flux_gap", v[5]}});
}

EqualityReport rd_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& ut, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::ReactionDiffusion, "rd_very_conforming_equality");
  require_scalar(ut, c.domain, {.vanishes = true, .grad = true, .laplacian = true}, "u_tilde");
  const auto& u = c.exact_u;
  const auto v = integrals<4>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utv = ut(x), utl = ut.laplacian(x);
    o[0] = sq(u(x) - utv);
    o[1] = sq(u.grad(x) - ut.grad(x));
    o[2] = sq(u.laplacian(x) - utl);
    o[3] = sq(c.source(x) - utv + utl);
  });
  return EqualityReport::make(
      "rd_very_conforming_equality",
      {{"err_u", v[0]}, {"err_grad_u", v[1]}, {"err_grad_u_hdiv", v[1]}, {"err_lap_u", v[2]}},
      {{"residual", v[3]}});
}

namespace {

const char* part_name(RdPart which) {
  switch (which) {
    case RdPart::I: return "rd_nonconforming_i";
    case RdPart::II: return "rd_nonconforming_ii";
    case RdPart::III: return "rd_nonconforming_iii";
  }
  return "?";
}

}  // namespace

BoundReport rd_nonconforming_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a, const mms::FreeFields& free,
                                    double gamma, RdPart which, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::ReactionDiffusion, "rd_nonconforming_bounds");
  detail::require_gamma(gamma);
  require_scalar(free.phi, c.domain, {.vanishes = true, .grad = true}, "free potential");
  require_vector(free.flux, c.domain, true, "free flux");
  require_scalar(a.u_tilde, c.domain, {}, "u_tilde");
  require_vector(a.p_tilde, c.domain, false, "p_tilde");
  const auto& phi = free.phi;
  const auto& fl = free.flux;
  const auto v = integrals<6>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double phiv = phi(x), utv = a.u_tilde(x);
    const Vec flv = fl(x), ptv = a.p_tilde(x);
    o[0] = sq(c.source(x) - phiv + fl.div(x));
    o[1] = sq(flv - phi.grad(x));
    o[2] = sq(phiv - utv);
    o[3] = sq(flv - ptv);
    o[4] = sq(c.exact_u(x) - utv);
    o[5] = sq(c.exact_p(x) - ptv);
  });
  const double R = v[0], G = v[1], A = v[2], B = v[3];
  const double s = 1.0 + 1.0 / gamma, t = 1.0 + gamma;
  double upper = 0.0;
  std::vector<NamedValue> truth;
  switch (which) {
    case RdPart::I:
      upper = s * (R + 0.5 * G) + t * A;
      truth = {{"err_u", v[4]}};
      break;
    case RdPart::II:
      upper = s * (0.5 * R + G) + t * B;
      truth = {{"err_p", v[5]}};
      break;
    case RdPart::III:
      upper = s * (R + G) + t * (A + B);
      truth = {{"err_u", v[4]}, {"err_p", v[5]}};
      break;
  }
  return BoundReport::make(part_name(which), {}, std::move(truth), upper, gamma,
                           {{"residual_free", R}, {"gap_free", G}, {"dist_u", A}, {"dist_p", B}});
}

BoundReport rd_semiconforming_primal_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a,
                                            const VectorField& flux, double gamma, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::ReactionDiffusion, "rd_semiconforming_bounds");
  detail::require_gamma(gamma);
  require_scalar(a.u_tilde, c.domain, {.vanishes = true, .grad = true}, "u_tilde");
  require_vector(a.p_tilde, c.domain, false, "p_tilde");
  require_vector(flux, c.domain, true, "free flux");
  const auto& ut = a.u_tilde;
  const auto v = integrals<7>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utv = ut(x);
    const Vec gut = ut.grad(x), ptv = a.p_tilde(x), flv = flux(x);
    o[0] = sq(c.source(x) - utv + flux.div(x));
    o[1] = sq(flv - gut);
    o[2] = sq(flv - ptv);
    o[3] = sq(ptv - gut);
    o[4] = sq(c.exact_u(x) - utv);
    o[5] = sq(c.exact_u.grad(x) - gut);
    o[6] = sq(c.exact_p(x) - ptv);
  });
  const double R = v[0], G = v[1], B = v[2];
  const double upper = (1.0 + 0.5 / gamma) * R + (1.0 + 1.0 / gamma) * G + (1.0 + gamma) * B;
  const double coarse = (1.0 + 1.0 / gamma) * (R + G) + (1.0 + gamma) * B;
  return BoundReport::make("rd_semiconforming_primal", {{"half_flux_gap", 0.5 * v[3]}},
                           {{"err_u", v[4]}, {"err_grad_u", v[5]}, {"err_p", v[6]}}, upper, gamma,
                           {{"residual_free", R},
                            {"gap_free", G},
                            {"dist_p", B},
                            {"coarse_upper", coarse},
                            {"coarse_true", v[4] + v[6]}});
}

BoundReport rd_semiconforming_dual_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a, const ScalarField& phi,
                                          double gamma, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::ReactionDiffusion, "rd_semiconforming_bounds");
  detail::require_gamma(gamma);
  require_scalar(a.u_tilde, c.domain, {}, "u_tilde");
  require_vector(a.p_tilde, c.domain, true, "p_tilde");
  require_scalar(phi, c.domain, {.vanishes = true, .grad = true}, "free potential");
  const auto& pt = a.p_tilde;
  const auto v = integrals<7>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utv = a.u_tilde(x), phiv = phi(x), f = c.source(x), ptdiv = pt.div(x);
    const Vec ptv = pt(x);
    o[0] = sq(f - phiv + ptdiv);
    o[1] = sq(ptv - phi.grad(x));
    o[2] = sq(phiv - utv);
    o[3] = sq(f - utv + ptdiv);
    o[4] = sq(c.exact_u(x) - utv);
    o[5] = sq(c.exact_p(x) - ptv);
    o[6] = sq(c.exact_p.div(x) - ptdiv);
  });
  const double R = v[0], G = v[1], A = v[2];
  const double upper = (1.0 + 1.0 / gamma) * R + (1.0 + 0.5 / gamma) * G + (1.0 + gamma) * A;
  const double coarse = (1.0 + 1.0 / gamma) * (R + G) + (1.0 + gamma) * A;
  return BoundReport::make("rd_semiconforming_dual", {{"half_residual", 0.5 * v[3]}},
                           {{"err_u", v[4]}, {"err_p", v[5]}, {"err_div_p", v[6]}}, upper, gamma,
                           {{"residual_free", R},
                            {"gap_free", G},
                            {"dist_u", A},
                            {"coarse_upper", coarse},
                            {"coarse_true", v[4] + v[5]}});
}

BoundReport rd_semiconforming_bounds(const mms::ProblemCase& c, const mms::ApproxPair& a, const mms::FreeFields& free,
                                     double gamma, const QuadratureRule& q) {
  switch (a.level) {
    case mms::ConformityLevel::SemiConformingPrimal:
      return rd_semiconforming_primal_bounds(c, a, free.flux, gamma, q);
    case mms::ConformityLevel::SemiConformingDual:
      return rd_semiconforming_dual_bounds(c, a, free.phi, gamma, q);
    default:
      break;
  }
  throw ContractError(std::string("rd_semiconforming_bounds needs a semi-conforming pair, got '") +
                      mms::to_string(a.level) + "'");
}

BoundReport rd_primal_majorant(const mms::ProblemCase& c, const ScalarField& ut, const VectorField& flux,
                               const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::ReactionDiffusion, "rd_primal_majorant");
  require_scalar(ut, c.domain, {.vanishes = true, .grad = true}, "u_tilde");
  require_vector(flux, c.domain, true, "flux");
  const auto v = integrals<4>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utv = ut(x);
    const Vec gut = ut.grad(x);
    o[0] = sq(c.source(x) - utv + flux.div(x));
    o[1] = sq(flux(x) - gut);
    o[2] = sq(c.exact_u(x) - utv);
    o[3] = sq(c.exact_u.grad(x) - gut);
  });
  return BoundReport::make("rd_primal_majorant", {}, {{"err_u", v[2]}, {"err_grad_u", v[3]}}, v[0] + v[1],
                           std::nullopt, {{"residual", v[0]}, {"flux_gap", v[1]}});
}

BoundReport poisson_two_sided(const mms::ProblemCase& c, const mms::ApproxPair& a, const FriedrichsConstant& cf,
                              double gamma, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::Poisson, "poisson_two_sided");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw ContractError("gamma must exceed 1 for the two-sided bound");
  require_scalar(a.u_tilde, c.domain, {.vanishes = true, .grad = true}, "u_tilde");
  require_vector(a.p_tilde, c.domain, true, "p_tilde");
  const auto& ut = a.u_tilde;
  const auto& pt = a.p_tilde;
  const auto v = integrals<5>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const Vec gut = ut.grad(x), ptv = pt(x);
    const double ptdiv = pt.div(x);
    o[0] = sq(c.source(x) + ptdiv);
    o[1] = sq(ptv - gut);
    o[2] = sq(c.exact_u.grad(x) - gut);
    o[3] = sq(c.exact_p(x) - ptv);
    o[4] = sq(c.exact_p.div(x) - ptdiv);
  });
  const double R2 = v[0], G2 = v[1], c2 = cf.value * cf.value;
  const double upper = R2 + gamma / (gamma - 1.0) * (gamma * c2 * R2 + G2);
  return BoundReport::make("poisson_two_sided",
                           {{"residual_plus_half_gap", R2 + 0.5 * G2}, {"scaled_gap", G2 / (1.0 + c2)}},
                           {{"err_grad_u", v[2]}, {"err_p", v[3]}, {"err_div_p", R2}}, upper, gamma,
                           {{"residual", R2},
                            {"flux_gap", G2},
                            {"err_div_p_exact", v[4]},
                            {"div_identity_rel", detail::rel_diff(R2, v[4])},
                            {"friedrichs", cf.value}});
}

EqualityReport poisson_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& ut,
                                                const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::Poisson, "poisson_very_conforming_equality");
  require_scalar(ut, c.domain, {.vanishes = true, .grad = true, .laplacian = true}, "u_tilde");
  const auto v = integrals<2>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utl = ut.laplacian(x);
    o[0] = sq(c.exact_u.laplacian(x) - utl);
    o[1] = sq(c.source(x) + utl);
  });
  return EqualityReport::make("poisson_very_conforming_equality", {{"err_lap_u", v[0]}}, {{"residual", v[1]}},
                              {{"err_lap_u_norm", std::sqrt(v[0])}, {"residual_norm", std::sqrt(v[1])}});
}

BoundReport poisson_nonconforming(const mms::ProblemCase& c, const mms::ApproxPair& a, const PoissonFreeFields& free,
                                  const FriedrichsConstant& cf, PoissonPart which, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::Poisson, "poisson_nonconforming");
  const auto& dom = c.domain;
  const double cv = cf.value;
  require_scalar(free.phi, dom, {.vanishes = true, .grad = true}, "free potential");
  require_vector(free.flux, dom, true, "free flux");
  const VectorField theta = free.theta.value_or(free.flux);
  const ScalarField psi = free.psi.value_or(free.phi);
  const auto& phi = free.phi;
  const auto& fl = free.flux;
  const auto& ut = a.u_tilde;
  const auto& pt = a.p_tilde;

  switch (which) {
    case PoissonPart::I: {
      require_scalar(ut, dom, {}, "u_tilde");
      const auto v = integrals<4>(dom, q, [&](const Point& x, std::span<double> o) {
        const double phiv = phi(x), utv = ut(x);
        o[0] = sq(c.source(x) + fl.div(x));
        o[1] = sq(fl(x) - phi.grad(x));
        o[2] = sq(phiv - utv);
        o[3] = sq(c.exact_u(x) - utv);
      });
      const double bound = cv * cv * std::sqrt(v[0]) + cv * std::sqrt(v[1]) + std::sqrt(v[2]);
      return BoundReport::make("poisson_nonconforming_i", {}, {{"err_u", v[3]}}, bound * bound, std::nullopt,
                               {{"bound_norm", bound},
                                {"err_u_norm", std::sqrt(v[3])},
                                {"residual_free", v[0]},
                                {"gap_free", v[1]},
                                {"dist_u", v[2]}});
    }
    case PoissonPart::II: {
      require_vector(pt, dom, false, "p_tilde");
      const auto v = integrals<4>(dom, q, [&](const Point& x, std::span<double> o) {
        const Vec ptv = pt(x);
        o[0] = sq(c.source(x) + fl.div(x));
        o[1] = sq(fl(x) - ptv);
        o[2] = sq(ptv - phi.grad(x));
        o[3] = sq(c.exact_p(x) - ptv);
      });
      const double upper = sq(cv * std::sqrt(v[0]) + std::sqrt(v[1])) + v[2];
      return BoundReport::make("poisson_nonconforming_ii", {}, {{"err_p", v[3]}}, upper, std::nullopt,
                               {{"residual_free", v[0]}, {"dist_p", v[1]}, {"gap_free", v[2]}});
    }
    case PoissonPart::MixedI: {
      require_scalar(ut, dom, {.vanishes = true, .grad = true}, "u_tilde");
      require_vector(pt, dom, false, "p_tilde");
      require_vector(theta, dom, true, "theta");
      const auto v = integrals<8>(dom, q, [&](const Point& x, std::span<double> o) {
        const Vec gut = ut.grad(x), ptv = pt(x);
        const double f = c.source(x);
        o[0] = sq(f + theta.div(x));
        o[1] = sq(theta(x) - gut);
        o[2] = sq(f + fl.div(x));
        o[3] = sq(fl(x) - ptv);
        o[4] = sq(ptv - phi.grad(x));
        o[5] = sq(ptv - gut);
        o[6] = sq(c.exact_u.grad(x) - gut);
        o[7] = sq(c.exact_p(x) - ptv);
      });
      const double upper = sq(cv * std::sqrt(v[0]) + std::sqrt(v[1])) + sq(cv * std::sqrt(v[2]) + std::sqrt(v[3])) + v[4];
      return BoundReport::make("poisson_nonconforming_mixed_i", {{"half_flux_gap", 0.5 * v[5]}},
                               {{"err_grad_u", v[6]}, {"err_p", v[7]}}, upper, std::nullopt,
                               {{"residual_theta", v[0]},
                                {"gap_theta", v[1]},
                                {"residual_free", v[2]},
                                {"dist_p", v[3]},
                                {"gap_free", v[4]}});
    }
    case PoissonPart::MixedII: {
      require_scalar(ut, dom, {}, "u_tilde");
      require_vector(pt, dom, true, "p_tilde");
      require_vector(theta, dom, true, "theta");
      require_scalar(psi, dom, {.vanishes = true, .grad = true}, "psi");
      const auto v = integrals<10>(dom, q, [&](const Point& x, std::span<double> o) {
        const Vec ptv = pt(x);
        const double f = c.source(x), utv = ut(x), ptdiv = pt.div(x);
        o[0] = sq(f + theta.div(x));
        o[1] = sq(theta(x) - psi.grad(x));
        o[2] = sq(psi(x) - utv);
        o[3] = sq(f + fl.div(x));
        o[4] = sq(fl(x) - ptv);
        o[5] = sq(ptv - phi.grad(x));
        o[6] = sq(f + ptdiv);
        o[7] = sq(c.exact_u(x) - utv);
        o[8] = sq(c.exact_p(x) - ptv);
        o[9] = sq(c.exact_p.div(x) - ptdiv);
      });
      const double upper = sq(cv * cv * std::sqrt(v[0]) + cv * std::sqrt(v[1]) + std::sqrt(v[2])) +
                           sq(cv * std::sqrt(v[3]) + std::sqrt(v[4])) + v[5] + v[6];
      return BoundReport::make("poisson_nonconforming_mixed_ii", {},
                               {{"err_u", v[7]}, {"err_p", v[8]}, {"err_div_p", v[9]}}, upper, std::nullopt,
                               {{"residual_theta", v[0]},
                                {"gap_theta", v[1]},
                                {"dist_u", v[2]},
                                {"residual_free", v[3]},
                                {"dist_p", v[4]},
                                {"gap_free", v[5]},
                                {"residual", v[6]}});
    }
  }
  throw ContractError("unknown Poisson bound part");
}

BoundReport poisson_primal_majorant(const mms::ProblemCase& c, const ScalarField& ut, const VectorField& flux,
                                    const FriedrichsConstant& cf, const QuadratureRule& q) {
  detail::require_kind(c, ProblemKind::Poisson, "poisson_primal_majorant");
  require_scalar(ut, c.domain, {.vanishes = true, .grad = true}, "u_tilde");
  require_vector(flux, c.domain, true, "flux");
  const auto v = integrals<3>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const Vec gut = ut.grad(x);
    o[0] = sq(c.source(x) + flux.div(x));
    o[1] = sq(flux(x) - gut);
    o[2] = sq(c.exact_u.grad(x) - gut);
  });
  const double bound = cf.value * std::sqrt(v[0]) + std::sqrt(v[1]);
  return BoundReport::make("poisson_primal_majorant", {}, {{"err_grad_u", v[2]}}, bound * bound, std::nullopt,
                           {{"residual", v[0]}, {"flux_gap", v[1]}, {"bound_norm", bound}});
}

double cf_check(const ScalarField& w, const BoxDomain& dom, const FriedrichsConstant& cf, const QuadratureRule& q) {
  require_scalar(w, dom, {.vanishes = true, .grad = true}, "w");
  const auto v = integrals<2>(dom, q, [&](const Point& x, std::span<double> o) {
    o[0] = sq(w(x));
    o[1] = sq(w.grad(x));
  });
  return cf.value * std::sqrt(v[1]) - std::sqrt(v[0]);
}

double cftwo_check(const ScalarField& w, const BoxDomain& dom, const FriedrichsConstant& cf, const QuadratureRule& q) {
  require_scalar(w, dom, {.vanishes = true, .grad = true, .laplacian = true}, "w");
  const auto v = integrals<2>(dom, q, [&](const Point& x, std::span<double> o) {
    o[0] = sq(w.grad(x));
    o[1] = sq(w.laplacian(x));
  });
  return cf.value * std::sqrt(v[1]) - std::sqrt(v[0]);
}

double cfthree_check(const VectorField& psi, const BoxDomain& dom, const FriedrichsConstant& cf,
                     const QuadratureRule& q) {
  require_vector(psi, dom, true, "psi");
  const auto v = integrals<2>(dom, q, [&](const Point& x, std::span<double> o) {
    o[0] = sq(psi(x));
    o[1] = sq(psi.div(x));
  });
  return cf.value * std::sqrt(v[1]) - std::sqrt(v[0]);
}

}  // namespace funcerr::elliptic
