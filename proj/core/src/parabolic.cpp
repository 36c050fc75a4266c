#include "funcerr/parabolic.hpp"

#include <cmath>

#include "checks.hpp"

namespace funcerr::parabolic {

using detail::integrals;
using detail::require_scalar;
using detail::require_vector;
using detail::slice_integrals;
using detail::sq;
using mms::ProblemKind;

namespace {

const ScalarField& initial_of(const mms::ProblemCase& c) {
  if (!c.initial) throw ContractError("parabolic case without initial data");
  return *c.initial;
}

void require_parabolic_case(const mms::ProblemCase& c, ProblemKind kind, const char* op) {
  detail::require_kind(c, kind, op);
  if (!c.domain.is_parabolic()) throw DomainError(std::string(op) + " requires a time horizon");
}

Point at_time(double t, const Point& p) { return Point{t, p.x}; }

}  // namespace

EqualityReport trd_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q) {
  require_parabolic_case(c, ProblemKind::TimeReactionDiffusion, "trd_isometry_check");
  const auto& u = c.exact_u;
  const auto& u0 = initial_of(c);
  const double T = c.domain.time_horizon();
  const auto v = integrals<5>(c.domain, q, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u(x));
    o[1] = sq(u.grad(x));
    o[2] = sq(u.dt(x));
    o[3] = sq(u.laplacian(x));
    o[4] = sq(c.source(x));
  });
  const auto s = slice_integrals<4>(c.domain, q, T, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u(x));
    o[1] = sq(u.grad(x));
    o[2] = sq(u0(x));
    o[3] = sq(u0.grad(x));
  });
  return EqualityReport::make("trd_isometry",
                              {{"u", v[0]},
                               {"grad_u", v[1]},
                               {"dt_u", v[2]},
                               {"grad_u_hdiv", v[1]},
                               {"lap_u", v[3]},
                               {"u_T", s[0]},
                               {"grad_u_T", s[1]}},
                              {{"f", v[4]}, {"u0", s[2]}, {"grad_u0", s[3]}});
}

EqualityReport omega_identity_check(const ScalarField& w, const BoxDomain& dom, double omega, const QuadratureRule& q) {
  if (!dom.is_parabolic()) throw DomainError("omega_identity_check requires a time horizon");
  if (!std::isfinite(omega)) throw ContractError("omega must be finite");
  require_scalar(w, dom, {.vanishes = true, .grad = true, .laplacian = true, .dt = true}, "w");
  const double T = dom.time_horizon();
  const auto v = integrals<5>(dom, q, [&](const Point& x, std::span<double> o) {
    const double wv = w(x), wt = w.dt(x), wl = w.laplacian(x);
    o[0] = sq(wt - wl + omega * wv);
    o[1] = sq(wt);
    o[2] = sq(wv);
    o[3] = sq(w.grad(x));
    o[4] = sq(wl);
  });
  const auto sT = slice_integrals<2>(dom, q, T, [&](const Point& x, std::span<double> o) {
    o[0] = sq(w(x));
    o[1] = sq(w.grad(x));
  });
  const auto s0 = slice_integrals<2>(dom, q, 0.0, [&](const Point& x, std::span<double> o) {
    o[0] = sq(w(x));
    o[1] = sq(w.grad(x));
  });
  std::vector<NamedValue> lhs{{"operator", v[0]}, {"grad_w_0", s0[1]}};
  std::vector<NamedValue> rhs{{"dt_w", v[1]}, {"w_omega_sq", omega * omega * v[2]}, {"lap_w", v[4]}, {"grad_w_T", sT[1]}};
  if (omega >= 0.0) {
    lhs.push_back({"w_0_omega", omega * s0[0]});
    rhs.push_back({"grad_w_2omega", 2.0 * omega * v[3]});
    rhs.push_back({"w_T_omega", omega * sT[0]});
  } else {
    lhs.push_back({"grad_w_2omega", -2.0 * omega * v[3]});
    lhs.push_back({"w_T_omega", -omega * sT[0]});
    rhs.push_back({"w_0_omega", -omega * s0[0]});
  }
  return EqualityReport::make("omega_identity", std::move(lhs), std::move(rhs), {{"omega", omega}});
}

EqualityReport trd_equality(const mms::ProblemCase& c, const mms::ApproxPair& a, const QuadratureRule& q) {
  require_parabolic_case(c, ProblemKind::TimeReactionDiffusion, "trd_equality");
  require_scalar(a.u_tilde, c.domain, {.vanishes = true, .grad = true, .dt = true}, "u_tilde");
  require_vector(a.p_tilde, c.domain, true, "p_tilde");
  const auto& u = c.exact_u;
  const auto& p = c.exact_p;
  const auto& ut = a.u_tilde;
  const auto& pt = a.p_tilde;
  const auto& u0 = initial_of(c);
  const double T = c.domain.time_horizon();
  const auto v = integrals<7>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double uv = u(x), utv = ut(x), utt = ut.dt(x), ptdiv = pt.div(x), f = c.source(x);
    const Vec gut = ut.grad(x), ptv = pt(x);
    o[0] = sq(uv - utv);
    o[1] = sq(u.grad(x) - gut);
    o[2] = sq(p(x) - ptv);
    o[3] = sq(u.dt(x) - utt + ptdiv - p.div(x));
    o[4] = sq(f - utt - utv + ptdiv);
    o[5] = sq(ptv - gut);
    o[6] = sq(f - uv - utt + ptdiv);
  });
  const auto sT = slice_integrals<1>(c.domain, q, T, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u(x) - ut(x));
  });
  const auto s0 = slice_integrals<1>(c.domain, q, 0.0, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u0(x) - ut(at_time(0.0, x)));
  });
  return EqualityReport::make(
      "trd_equality",
      {{"err_u", v[0]}, {"err_grad_u", v[1]}, {"err_p", v[2]}, {"parabolic_residual", v[3]}, {"err_u_T", sT[0]}},
      {{"residual", v[4]}, {"flux_gap", v[5]}, {"initial_err", s0[0]}},
      {{"parabolic_residual_substituted", v[6]}, {"parabolic_residual_rel", detail::rel_diff(v[3], v[6])}});
}

EqualityReport trd_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& ut, const QuadratureRule& q) {
  require_parabolic_case(c, ProblemKind::TimeReactionDiffusion, "trd_very_conforming_equality");
  require_scalar(ut, c.domain, {.vanishes = true, .grad = true, .laplacian = true, .dt = true}, "u_tilde");
  const auto& u = c.exact_u;
  const auto& u0 = initial_of(c);
  const double T = c.domain.time_horizon();
  const auto v = integrals<5>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utv = ut(x), utt = ut.dt(x), utl = ut.laplacian(x);
    o[0] = sq(u(x) - utv);
    o[1] = sq(u.grad(x) - ut.grad(x));
    o[2] = sq(u.dt(x) - utt);
    o[3] = sq(u.laplacian(x) - utl);
    o[4] = sq(c.source(x) - utt - utv + utl);
  });
  const auto sT = slice_integrals<2>(c.domain, q, T, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u(x) - ut(x));
    o[1] = sq(u.grad(x) - ut.grad(x));
  });
  const auto s0 = slice_integrals<2>(c.domain, q, 0.0, [&](const Point& x, std::span<double> o) {
    const Point x0 = at_time(0.0, x);
    o[0] = sq(u0(x) - ut(x0));
    o[1] = sq(u0.grad(x) - ut.grad(x0));
  });
  return EqualityReport::make("trd_very_conforming_equality",
                              {{"err_u", v[0]},
                               {"err_grad_u", v[1]},
                               {"err_dt_u", v[2]},
                               {"err_grad_u_hdiv", v[1]},
                               {"err_lap_u", v[3]},
                               {"err_u_T", sT[0]},
                               {"err_grad_u_T", sT[1]}},
                              {{"residual", v[4]}, {"initial_err", s0[0]}, {"initial_err_grad", s0[1]}});
}

EqualityReport heat_isometry_check(const mms::ProblemCase& c, const QuadratureRule& q) {
  require_parabolic_case(c, ProblemKind::Heat, "heat_isometry_check");
  const auto& u = c.exact_u;
  const auto& u0 = initial_of(c);
  const double T = c.domain.time_horizon();
  const auto v = integrals<3>(c.domain, q, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u.dt(x));
    o[1] = sq(u.laplacian(x));
    o[2] = sq(c.source(x));
  });
  const auto s = slice_integrals<2>(c.domain, q, T, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u.grad(x));
    o[1] = sq(u0.grad(x));
  });
  return EqualityReport::make("heat_isometry", {{"dt_u", v[0]}, {"lap_u", v[1]}, {"grad_u_T", s[0]}},
                              {{"f", v[2]}, {"grad_u0", s[1]}});
}

EqualityReport heat_very_conforming_equality(const mms::ProblemCase& c, const ScalarField& ut, const QuadratureRule& q) {
  require_parabolic_case(c, ProblemKind::Heat, "heat_very_conforming_equality");
  require_scalar(ut, c.domain, {.vanishes = true, .grad = true, .laplacian = true, .dt = true}, "u_tilde");
  const auto& u = c.exact_u;
  const auto& u0 = initial_of(c);
  const double T = c.domain.time_horizon();
  const auto v = integrals<3>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utt = ut.dt(x), utl = ut.laplacian(x);
    o[0] = sq(u.dt(x) - utt);
    o[1] = sq(u.laplacian(x) - utl);
    o[2] = sq(c.source(x) + utl - utt);
  });
  const auto sT = slice_integrals<1>(c.domain, q, T, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u.grad(x) - ut.grad(x));
  });
  const auto s0 = slice_integrals<1>(c.domain, q, 0.0, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u0.grad(x) - ut.grad(at_time(0.0, x)));
  });
  return EqualityReport::make("heat_very_conforming_equality",
                              {{"err_dt_u", v[0]}, {"err_lap_u", v[1]}, {"err_grad_u_T", sT[0]}},
                              {{"residual", v[2]}, {"initial_err_grad", s0[0]}});
}

BoundReport heat_two_sided(const mms::ProblemCase& c, const mms::ApproxPair& a, const elliptic::FriedrichsConstant& cf,
                           double gamma, const QuadratureRule& q) {
  require_parabolic_case(c, ProblemKind::Heat, "heat_two_sided");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw ContractError("gamma must exceed 1 for the two-sided bound");
  require_scalar(a.u_tilde, c.domain, {.vanishes = true, .grad = true, .dt = true}, "u_tilde");
  require_vector(a.p_tilde, c.domain, true, "p_tilde");
  const auto& u = c.exact_u;
  const auto& p = c.exact_p;
  const auto& ut = a.u_tilde;
  const auto& pt = a.p_tilde;
  const auto& u0 = initial_of(c);
  const double T = c.domain.time_horizon();
  const auto v = integrals<5>(c.domain, q, [&](const Point& x, std::span<double> o) {
    const double utt = ut.dt(x), ptdiv = pt.div(x);
    const Vec gut = ut.grad(x), ptv = pt(x);
    o[0] = sq(c.source(x) + ptdiv - utt);
    o[1] = sq(ptv - gut);
    o[2] = sq(u.grad(x) - gut);
    o[3] = sq(p(x) - ptv);
    o[4] = sq(u.dt(x) - utt + ptdiv - p.div(x));
  });
  const auto sT = slice_integrals<1>(c.domain, q, T, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u(x) - ut(x));
  });
  const auto s0 = slice_integrals<1>(c.domain, q, 0.0, [&](const Point& x, std::span<double> o) {
    o[0] = sq(u0(x) - ut(at_time(0.0, x)));
  });
  const double R2 = v[0], G2 = v[1], I2 = s0[0], c2 = cf.value * cf.value;
  const double upper = R2 + gamma / (gamma - 1.0) * (gamma * c2 * R2 + G2 + I2);
  return BoundReport::make("heat_two_sided",
                           {{"residual_plus_half_gap", R2 + 0.5 * G2}, {"scaled_gap_initial", (G2 + I2) / (1.0 + c2)}},
                           {{"err_grad_u", v[2]}, {"err_p", v[3]}, {"parabolic_residual", R2}, {"err_u_T", sT[0]}},
                           upper, gamma,
                           {{"residual", R2},
                            {"flux_gap", G2},
                            {"initial_err", I2},
                            {"parabolic_residual_exact", v[4]},
                            {"parabolic_identity_rel", detail::rel_diff(R2, v[4])},
                            {"friedrichs", cf.value}});
}

}  // namespace funcerr::parabolic
