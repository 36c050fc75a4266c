#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "funcerr/error.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/norms.hpp"

using namespace funcerr;
using std::numbers::pi;

namespace {

ScalarField sin1d() { return mms::sine_mode(BoxDomain::unit(1), {1}).field(); }

ScalarField decaying_sin(const BoxDomain& dom) {
  return mms::sine_mode(dom, {1}, 1.0, mms::TimeFactor{0, -1.0}).field();
}

ScalarField linear_in_time_sin(const BoxDomain& dom) {
  return mms::sine_mode(dom, {1}, 1.0, mms::TimeFactor{1, 0.0}).field();
}

}  // namespace

TEST(BoxDomain, RejectsDegenerateInput) {
  const std::vector<double> lo{0.0}, hi{0.0}, hi_ok{1.0};
  EXPECT_THROW(BoxDomain(lo, hi), DomainError);
  EXPECT_THROW(BoxDomain(lo, hi_ok, 0.0), DomainError);
  EXPECT_THROW(BoxDomain(lo, hi_ok, -1.0), DomainError);
  EXPECT_THROW(BoxDomain::unit(4), DomainError);
  EXPECT_NO_THROW(BoxDomain(lo, hi_ok, 1.0));
}

TEST(Fields, AbsentCapabilitiesThrow) {
  ScalarField::Parts parts;
  parts.value = [](const Point& p) { return p.x[0]; };
  ScalarField w(1, parts);
  EXPECT_FALSE(w.conformity().has_grad);
  EXPECT_THROW(w.grad(Point{}), CapabilityError);
  EXPECT_THROW(w.laplacian(Point{}), CapabilityError);
  EXPECT_THROW(w.dt(Point{}), CapabilityError);

  const auto s = sin1d();
  const auto r = s.restricted({true, true, false, false});
  EXPECT_TRUE(r.conformity().vanishes_on_boundary);
  EXPECT_THROW(r.laplacian(Point{}), CapabilityError);
  EXPECT_FALSE((s + w).conformity().has_grad);
  EXPECT_FALSE((s + w).conformity().vanishes_on_boundary);
  EXPECT_THROW(s + mms::sine_mode(BoxDomain::unit(2), {1, 1}).field(), ContractError);
}

TEST(L2Inner, KnownValues) {
  const BoxDomain dom = BoxDomain::unit(1);
  const QuadratureRule q;
  EXPECT_NEAR(l2_inner(sin1d(), sin1d(), dom, q), 0.5, 1e-14);
  EXPECT_EQ(l2_inner(ScalarField::zero(1), sin1d(), dom, q), 0.0);

  const BoxDomain xi = BoxDomain::unit(1, 1.0);
  const auto w = decaying_sin(xi);
  EXPECT_NEAR(l2_inner(w, w, xi, q), (1.0 - std::exp(-2.0)) / 4.0, 1e-14);
}

TEST(L2Inner, Errors) {
  const BoxDomain dom = BoxDomain::unit(1);
  const QuadratureRule q;
  EXPECT_THROW(l2_inner(AnyField{sin1d()}, AnyField{VectorField::zero(1)}, dom, q), ContractError);
  const BoxDomain xi = BoxDomain::unit(1, 1.0);
  const auto w = decaying_sin(xi);
  EXPECT_THROW(l2_inner(w, w, dom, q), DomainError);
}

TEST(NormSq, KnownValuesAndAdditivity) {
  const BoxDomain dom = BoxDomain::unit(1);
  const QuadratureRule q;
  const auto w = sin1d();
  const double pi2 = pi * pi;
  EXPECT_NEAR(norm_sq(NormKind::V, w, dom, q), (1.0 + 2.0 * pi2 + pi2 * pi2) / 2.0, 1e-12);
  EXPECT_EQ(norm_sq(NormKind::L2, ScalarField::zero(1), dom, q), 0.0);
  EXPECT_NEAR(norm_sq(NormKind::Hdiv, gradient_of(w), dom, q), (pi2 + pi2 * pi2) / 2.0, 1e-12);

  const BoxDomain d2 = BoxDomain::unit(2);
  const auto u = mms::sine_mode(d2, {1, 2}).field() + mms::sine_mode(d2, {2, 1}, 0.3).field();
  const double l2 = norm_sq(NormKind::L2, u, d2, q);
  const double g = norm_sq(NormKind::L2, gradient_of(u), d2, q);
  const double l = norm_sq(NormKind::L2, laplacian_of(u), d2, q);
  EXPECT_NEAR(norm_sq(NormKind::V, u, d2, q), l2 + 2.0 * g + l, 1e-14 * (l2 + 2.0 * g + l));
  EXPECT_NEAR(norm_sq(NormKind::H1, u, d2, q), l2 + g, 1e-14 * (l2 + g));
}

TEST(NormSq, MissingCapability) {
  const BoxDomain dom = BoxDomain::unit(1);
  const auto w = sin1d().restricted({});
  EXPECT_THROW(norm_sq(NormKind::H1, w, dom, {}), CapabilityError);
  EXPECT_THROW(norm_sq(NormKind::Hdiv, VectorField::zero(1).restricted({}), dom, {}), CapabilityError);
  EXPECT_THROW(norm_sq(NormKind::H11, sin1d(), dom, {}), DomainError);
}

TEST(NormSq, ParabolicCompositeKinds) {
  const BoxDomain xi = BoxDomain::unit(1, 1.0);
  const QuadratureRule q;
  const auto w = decaying_sin(xi);
  const double e2 = std::exp(-2.0), a = (1.0 - e2) / 4.0, pi2 = pi * pi;
  // ‖w‖² = a, ‖∇w‖² = π²a, ‖∂tw‖² = a, ‖Δw‖² = π⁴a, ‖w(T)‖² = e⁻²/2.
  EXPECT_NEAR(norm_sq(NormKind::H11, w, xi, q), a * (2.0 + pi2), 1e-12);
  EXPECT_NEAR(norm_sq(NormKind::Triple, w, xi, q), a + pi2 * pi2 * a + pi2 * e2 / 2.0, 1e-11);
  EXPECT_NEAR(norm_sq(NormKind::WStar, w, xi, q),
              a * (2.0 + pi2) + pi2 * a + pi2 * pi2 * a + (1.0 + pi2) * e2 / 2.0, 1e-11);
}

TEST(TraceNormSq, KnownValues) {
  const BoxDomain xi = BoxDomain::unit(1, 1.0);
  const QuadratureRule q;
  const auto lin = linear_in_time_sin(xi);
  EXPECT_NEAR(trace_norm_sq(lin, TimeSlice::Terminal, TraceVariant::Value, xi, q), 0.5, 1e-15);
  EXPECT_EQ(trace_norm_sq(lin, TimeSlice::Initial, TraceVariant::Value, xi, q), 0.0);
  EXPECT_NEAR(trace_norm_sq(decaying_sin(xi), TimeSlice::Terminal, TraceVariant::Gradient, xi, q),
              pi * pi * std::exp(-2.0) / 2.0, 1e-14);
  EXPECT_THROW(trace_norm_sq(sin1d(), TimeSlice::Terminal, TraceVariant::Value, BoxDomain::unit(1), q), DomainError);
  EXPECT_THROW(trace_norm_sq(lin.restricted({}), TimeSlice::Terminal, TraceVariant::H1, xi, q), CapabilityError);
}

TEST(TimeCross, KnownValues) {
  const BoxDomain xi = BoxDomain::unit(1, 1.0);
  const QuadratureRule q;
  const auto r1 = timecross_check(linear_in_time_sin(xi), xi, q);
  EXPECT_NEAR(r1.left, 0.5, 1e-14);
  EXPECT_LE(r1.absolute, 1e-12);

  const auto still = mms::sine_mode(xi, {2}).field();
  const auto r2 = timecross_check(still, xi, q);
  EXPECT_EQ(r2.left, 0.0);
  EXPECT_LE(r2.absolute, 1e-15);

  const auto r3 = timecross_check(decaying_sin(xi), xi, q);
  EXPECT_NEAR(r3.right, (std::exp(-2.0) - 1.0) / 2.0, 1e-14);
  EXPECT_LE(r3.absolute, 1e-12);

  const auto v = mms::sine_mode(xi, {2}, 1.0, mms::TimeFactor{2, 0.5}).gradient_field();
  EXPECT_LE(timecross_check(v, xi, q).relative, 1e-10);
  EXPECT_THROW(timecross_check(still.restricted({}), xi, q), CapabilityError);
}

TEST(PartInt, KnownValues) {
  const QuadratureRule q;
  const BoxDomain d1 = BoxDomain::unit(1);
  const auto r1 = partint_residual(sin1d(), VectorField::constant(1, Vec{1.0, 0.0, 0.0}), d1, q);
  EXPECT_LE(r1.absolute, 1e-12);
  EXPECT_EQ(partint_residual(ScalarField::zero(1), VectorField::constant(1, Vec{1.0}), d1, q).absolute, 0.0);

  const BoxDomain d2 = BoxDomain::unit(2);
  VectorField::Parts parts;
  parts.value = [](const Point& p) { return Vec{p.x[0], p.x[1], 0.0}; };
  parts.div = [](const Point&) { return 2.0; };
  const VectorField psi(2, parts);
  const auto r2 = partint_residual(mms::sine_mode(d2, {1, 1}).field(), psi, d2, q);
  // Oracle: −⟨u, div ψ⟩ = −2·(2/π)² in closed form.
  EXPECT_NEAR(r2.right, -2.0 * 4.0 / (pi * pi), 1e-13);
  EXPECT_LE(r2.absolute, 1e-12);

  EXPECT_THROW(partint_residual(sin1d().with_boundary_claim(false), psi, d1, q), ContractError);
}

TEST(PartInt, PropertyOverRandomSmoothPairs) {
  const QuadratureRule q;
  const std::vector<double> lo{0.0, -0.5}, hi{2.0, 0.5};
  const BoxDomain dom(lo, hi);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const mms::ProblemCase c = mms::make_case(mms::ProblemKind::Poisson, mms::sine_mode(dom, {1, 2}));
    const auto a = mms::perturb(c, mms::ConformityLevel::VeryConforming, 0.5, seed);
    const auto r = partint_residual(a.u_tilde, a.p_tilde, dom, q);
    EXPECT_LE(r.relative, 1e-10) << seed;
  }
}

TEST(Friedrichs, MarginNonNegativeForVanishingFields) {
  const QuadratureRule q;
  const BoxDomain dom = BoxDomain::unit(2);
  const double cf = 1.0 / (pi * std::sqrt(2.0));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const mms::ProblemCase c = mms::make_case(mms::ProblemKind::ReactionDiffusion, mms::sine_mode(dom, {2, 1}));
    const auto a = mms::perturb(c, mms::ConformityLevel::ConformingMixed, 1.0, seed);
    EXPECT_GE(friedrichs_margin(a.u_tilde, cf, dom, q), -1e-10);
  }
  EXPECT_NEAR(friedrichs_margin(mms::sine_mode(dom, {1, 1}).field(), cf, dom, q), 0.0, 1e-12);
}

TEST(BoundaryCheck, DetectsNonVanishingField) {
  const BoxDomain dom = BoxDomain::unit(2);
  EXPECT_NO_THROW(require_vanishing_on_boundary(mms::sine_mode(dom, {1, 3}).field(), dom, "w"));
  EXPECT_THROW(require_vanishing_on_boundary(mms::cosine_mode(dom, {1, 1}).field(), dom, "w"), ContractError);
}
