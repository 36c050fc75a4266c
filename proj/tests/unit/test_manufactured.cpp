#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "funcerr/elliptic.hpp"
#include "funcerr/error.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/norms.hpp"

using namespace funcerr;
using namespace funcerr::mms;
using std::numbers::pi;

namespace {

// Central differences on the exposed evaluators; independent of the
// analytic derivative code.
double fd_d1(const ScalarField& w, Point p, int axis, double h = 1e-5) {
  Point a = p, b = p;
  a.x[axis] += h;
  b.x[axis] -= h;
  return (w(a) - w(b)) / (2.0 * h);
}

double fd_lap(const ScalarField& w, Point p, int dim, double h = 1e-4) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) {
    Point a = p, b = p;
    a.x[i] += h;
    b.x[i] -= h;
    s += (w(a) - 2.0 * w(p) + w(b)) / (h * h);
  }
  return s;
}

double fd_dt(const ScalarField& w, Point p, double h = 1e-5) {
  Point a = p, b = p;
  a.t += h;
  b.t -= h;
  return (w(a) - w(b)) / (2.0 * h);
}

}  // namespace

TEST(SeparableSum, DerivativesAgreeWithFiniteDifferences) {
  const std::vector<double> lo{-0.5, 1.0}, hi{1.0, 3.0};
  const BoxDomain dom(lo, hi, 1.5);
  SeparableSum s(dom, {{0.7, {1, -0.4}, {AxisFactor::sin(2), AxisFactor::bubble(2)}},
                       {-1.3, {0, 0.8}, {AxisFactor::cos(1), AxisFactor::monomial(3)}},
                       {0.2, {2, 0.0}, {AxisFactor::one(), AxisFactor::sin(3)}}});
  const auto w = s.field();
  std::mt19937_64 rng(3);
  for (int k = 0; k < 25; ++k) {
    Point p;
    p.t = 0.2 + 1.1 * unit_uniform(rng());
    p.x[0] = -0.4 + 1.3 * unit_uniform(rng());
    p.x[1] = 1.1 + 1.8 * unit_uniform(rng());
    const Vec g = w.grad(p);
    EXPECT_NEAR(g[0], fd_d1(w, p, 0), 1e-6);
    EXPECT_NEAR(g[1], fd_d1(w, p, 1), 1e-6);
    EXPECT_NEAR(w.laplacian(p), fd_lap(w, p, 2), 1e-4);
    EXPECT_NEAR(w.dt(p), fd_dt(w, p), 1e-6);
    EXPECT_NEAR(s.grad_dt(p)[0], fd_d1(time_derivative_of(w), p, 0), 1e-6);
  }
}

TEST(SeparableSum, RotatedGradientIsDivergenceFree) {
  const BoxDomain dom = BoxDomain::unit(2);
  const auto s = sine_mode(dom, {1, 2}) + cosine_mode(dom, {2, 1}, 0.5);
  const auto r = s.rotated_gradient_field();
  EXPECT_EQ(r.div(Point{0.0, {0.3, 0.4, 0.0}}), 0.0);
  // Divergence-free: ∫ div = 0 is trivial, so check ⟨r, ∇φ⟩ = 0 for a vanishing φ instead.
  const auto phi = sine_mode(dom, {1, 1}).field();
  EXPECT_NEAR(l2_inner(r, gradient_of(phi), dom, {}), 0.0, 1e-13);
  EXPECT_THROW(sine_mode(BoxDomain::unit(1), {1}).rotated_gradient_field(), DomainError);
}

TEST(MultiIndices, OrderedByDegreeThenLex) {
  const auto m = multi_indices(2, 6);
  const std::vector<std::vector<int>> expected{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2}, {3, 1}};
  EXPECT_EQ(m, expected);
  EXPECT_EQ(multi_indices(1, 3), (std::vector<std::vector<int>>{{1}, {2}, {3}}));
}

TEST(MakeCase, KnownValues) {
  const auto rd = make_case(ProblemKind::ReactionDiffusion, sine_mode(BoxDomain::unit(1), {1}));
  for (double x : {0.1, 0.37, 0.8}) {
    const Point p{0.0, {x, 0.0, 0.0}};
    EXPECT_NEAR(rd.source(p), (pi * pi + 1.0) * std::sin(pi * x), 1e-13);
  }
  const auto po = make_case(ProblemKind::Poisson, sine_mode(BoxDomain::unit(2), {1, 1}));
  const Point q{0.0, {0.3, 0.6, 0.0}};
  EXPECT_NEAR(po.source(q), 2.0 * pi * pi * std::sin(0.3 * pi) * std::sin(0.6 * pi), 1e-13);

  const auto heat = make_case(ProblemKind::Heat, sine_mode(BoxDomain::unit(1, 1.0), {1}, 1.0, TimeFactor{0, -1.0}));
  const Point r{0.4, {0.7, 0.0, 0.0}};
  EXPECT_NEAR(heat.source(r), (pi * pi - 1.0) * std::exp(-0.4) * std::sin(0.7 * pi), 1e-13);
  ASSERT_TRUE(heat.initial.has_value());
  EXPECT_NEAR((*heat.initial)(r), std::sin(0.7 * pi), 1e-15);
}

TEST(MakeCase, Errors) {
  EXPECT_THROW(make_case(ProblemKind::Heat, sine_mode(BoxDomain::unit(1), {1})), DomainError);
  EXPECT_THROW(make_case(ProblemKind::Poisson, sine_mode(BoxDomain::unit(1, 1.0), {1})), DomainError);
  const auto u = sine_mode(BoxDomain::unit(1), {1}).field().restricted({true, true, false, false});
  EXPECT_THROW(make_case(ProblemKind::ReactionDiffusion, BoxDomain::unit(1), u), CapabilityError);
  EXPECT_THROW(make_case(ProblemKind::ReactionDiffusion, cosine_mode(BoxDomain::unit(1), {1})), ContractError);
}

TEST(MakeCase, PointwiseInvariants) {
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 2.0};
  for (auto kind : {ProblemKind::ReactionDiffusion, ProblemKind::Poisson, ProblemKind::TimeReactionDiffusion,
                    ProblemKind::Heat}) {
    const BoxDomain dom = is_parabolic(kind) ? BoxDomain(lo, hi, 0.5) : BoxDomain(lo, hi);
    const TimeFactor tf = is_parabolic(kind) ? TimeFactor{1, -0.5} : TimeFactor{};
    const auto c = make_case(kind, sine_mode(dom, {1, 2}, 1.0, tf) + sine_mode(dom, {2, 1}, -0.4));
    const auto r = validate_case(c, 1000, 11);
    EXPECT_LE(r.flux, 1e-12);
    EXPECT_LE(r.source, 1e-12);
    EXPECT_LE(r.initial, 1e-12);
  }
}

TEST(Perturb, ZeroScaleReturnsExactPair) {
  const auto c = make_case(ProblemKind::ReactionDiffusion, sine_mode(BoxDomain::unit(1), {1}));
  const auto a = perturb(c, ConformityLevel::ConformingMixed, 0.0, 5);
  for (double x : {0.2, 0.5, 0.9}) {
    const Point p{0.0, {x, 0.0, 0.0}};
    EXPECT_EQ(a.u_tilde(p), c.exact_u(p));
    EXPECT_EQ(a.p_tilde(p), c.exact_p(p));
  }
  EXPECT_EQ(elliptic::rd_equality(c, a).lhs_total, 0.0);
  EXPECT_THROW(perturb(c, ConformityLevel::ConformingMixed, -1.0, 5), ContractError);
}

TEST(Perturb, LevelContracts) {
  const auto c = make_case(ProblemKind::ReactionDiffusion, sine_mode(BoxDomain::unit(2), {1, 1}));
  const auto nc = perturb(c, ConformityLevel::NonConforming, 1.0, 2);
  EXPECT_FALSE(nc.u_tilde.conformity().vanishes_on_boundary);
  EXPECT_FALSE(nc.u_tilde.conformity().has_grad);
  EXPECT_FALSE(nc.p_tilde.conformity().has_div);
  EXPECT_GT(boundary_sup(nc.u_tilde, c.domain), 0.1);

  const auto vc = perturb(c, ConformityLevel::VeryConforming, 1.0, 2);
  EXPECT_TRUE(vc.u_tilde.conformity().has_laplacian);
  EXPECT_TRUE(vc.u_tilde.conformity().vanishes_on_boundary);
  EXPECT_NO_THROW(require_vanishing_on_boundary(vc.u_tilde, c.domain, "u_tilde"));

  const auto cm = perturb(c, ConformityLevel::ConformingMixed, 1.0, 2);
  EXPECT_FALSE(cm.u_tilde.conformity().has_laplacian);
  EXPECT_TRUE(cm.p_tilde.conformity().has_div);

  const auto sp = perturb(c, ConformityLevel::SemiConformingPrimal, 1.0, 2);
  EXPECT_TRUE(sp.u_tilde.conformity().has_grad);
  EXPECT_FALSE(sp.p_tilde.conformity().has_div);

  const auto sd = perturb(c, ConformityLevel::SemiConformingDual, 1.0, 2);
  EXPECT_FALSE(sd.u_tilde.conformity().has_grad);
  EXPECT_TRUE(sd.p_tilde.conformity().has_div);
}

TEST(Perturb, DeterministicForFixedSeed) {
  const auto c = make_case(ProblemKind::Heat, sine_mode(BoxDomain::unit(2, 1.0), {1, 1}, 1.0, TimeFactor{0, -1.0}));
  const auto a = perturb(c, ConformityLevel::ConformingMixed, 0.1, 42);
  const auto b = perturb(c, ConformityLevel::ConformingMixed, 0.1, 42);
  const auto other = perturb(c, ConformityLevel::ConformingMixed, 0.1, 43);
  const Point p{0.3, {0.21, 0.77, 0.0}};
  EXPECT_EQ(a.u_tilde(p), b.u_tilde(p));
  EXPECT_EQ(a.p_tilde(p), b.p_tilde(p));
  EXPECT_EQ(a.u_tilde.dt(p), b.u_tilde.dt(p));
  EXPECT_NE(a.u_tilde(p), other.u_tilde(p));
}

TEST(Perturb, ErrorsScaleQuadratically) {
  const auto c = make_case(ProblemKind::ReactionDiffusion, sine_mode(BoxDomain::unit(2), {1, 2}));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto full = elliptic::rd_equality(c, perturb(c, ConformityLevel::ConformingMixed, 0.1, seed));
    const auto half = elliptic::rd_equality(c, perturb(c, ConformityLevel::ConformingMixed, 0.05, seed));
    for (std::size_t k = 0; k < full.lhs_components.size(); ++k)
      EXPECT_NEAR(full.lhs_components[k].value / half.lhs_components[k].value, 4.0, 4e-6);
    EXPECT_NEAR(full.rhs_total / half.rhs_total, 4.0, 4e-6);
  }
}

TEST(FreeFields, Strategies) {
  const auto c = make_case(ProblemKind::ReactionDiffusion, sine_mode(BoxDomain::unit(1), {1}));
  const Point p{0.0, {0.3, 0.0, 0.0}};
  const auto ex = free_fields(c, FreeFieldStrategy::exact());
  EXPECT_EQ(ex.phi(p), c.exact_u(p));
  const auto co = free_fields(c, FreeFieldStrategy::coarse());
  EXPECT_NEAR(co.phi(p), 0.9 * std::sin(0.3 * pi), 1e-15);
  EXPECT_NEAR(co.flux(p)[0], 0.9 * pi * std::cos(0.3 * pi), 1e-14);
  EXPECT_TRUE(co.phi.conformity().vanishes_on_boundary);
  EXPECT_TRUE(co.flux.conformity().has_div);
  for (int k = 0; k < 4; ++k) {
    const auto b = free_fields(c, FreeFieldStrategy::basis(k));
    EXPECT_TRUE(b.phi.conformity().vanishes_on_boundary);
    EXPECT_NO_THROW(require_vanishing_on_boundary(b.phi, c.domain, "phi"));
    EXPECT_NEAR(b.flux(p)[0], std::cos((k + 1) * pi * 0.3), 1e-14);
  }
}

TEST(TrigFluxFamily, DivergenceMatchesFiniteDifference) {
  const BoxDomain dom = BoxDomain::unit(2);
  const TrigFluxFamily fam(dom);
  const Point p{0.0, {0.31, 0.62, 0.0}};
  for (int k = 0; k < 8; ++k) {
    const auto m = fam.member(k);
    const double h = 1e-5;
    Point a = p, b = p, c = p, d = p;
    a.x[0] += h;
    b.x[0] -= h;
    c.x[1] += h;
    d.x[1] -= h;
    const double fd = (m(a)[0] - m(b)[0]) / (2 * h) + (m(c)[1] - m(d)[1]) / (2 * h);
    EXPECT_NEAR(m.div(p), fd, 1e-6) << k;
  }
}
