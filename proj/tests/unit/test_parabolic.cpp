#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "funcerr/error.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/parabolic.hpp"

using namespace funcerr;
using namespace funcerr::mms;
using namespace funcerr::parabolic;
using std::numbers::pi;

namespace {

constexpr double kPi2 = pi * pi;
const double kE2 = std::exp(-2.0);

SeparableSum decaying(const BoxDomain& dom) { return sine_mode(dom, {1}, 1.0, TimeFactor{0, -1.0}); }

ProblemCase trd_case() { return make_case(ProblemKind::TimeReactionDiffusion, decaying(BoxDomain::unit(1, 1.0))); }
ProblemCase heat_case() { return make_case(ProblemKind::Heat, decaying(BoxDomain::unit(1, 1.0))); }

ApproxPair zero_pair(const ProblemCase& c) {
  return {ScalarField::zero(c.domain.dim()), VectorField::zero(c.domain.dim()), ConformityLevel::ConformingMixed};
}

}  // namespace

TEST(TrdIsometry, KnownValues) {
  EXPECT_LE(trd_isometry_check(trd_case()).rel_residual, 1e-8);
  const auto zero = make_case(ProblemKind::TimeReactionDiffusion, sine_mode(BoxDomain::unit(1, 1.0), {1}, 0.0));
  const auto z = trd_isometry_check(zero);
  EXPECT_EQ(z.lhs_total, 0.0);
  EXPECT_EQ(z.rhs_total, 0.0);

  const auto lin = make_case(ProblemKind::TimeReactionDiffusion, sine_mode(BoxDomain::unit(1, 1.0), {1}, 1.0, {1, 0.0}));
  const Point p{0.6, {0.3, 0.0, 0.0}};
  EXPECT_NEAR(lin.source(p), (1.0 + 0.6 + 0.6 * kPi2) * std::sin(0.3 * pi), 1e-13);
  EXPECT_LE(trd_isometry_check(lin).rel_residual, 1e-8);
}

TEST(OmegaIdentity, ReducesToIsometries) {
  const auto c = trd_case();
  for (double omega : {-1.0, 0.0, 0.5, 1.0, 10.0})
    EXPECT_LE(omega_identity_check(c.exact_u, c.domain, omega).rel_residual, 1e-8) << omega;
  const auto one = omega_identity_check(c.exact_u, c.domain, 1.0);
  const auto trd = trd_isometry_check(c);
  EXPECT_NEAR(one.lhs_total, trd.rhs_total, 1e-10 * trd.rhs_total);
  EXPECT_NEAR(one.rhs_total, trd.lhs_total, 1e-10 * trd.lhs_total);

  const auto h = heat_case();
  const auto zero = omega_identity_check(h.exact_u, h.domain, 0.0);
  const auto heat = heat_isometry_check(h);
  EXPECT_NEAR(zero.lhs_total, heat.rhs_total, 1e-10 * heat.rhs_total);
  EXPECT_NEAR(zero.rhs_total, heat.lhs_total, 1e-10 * heat.lhs_total);

  for (double omega : {-3.0, 2.0}) {
    const auto r = omega_identity_check(ScalarField::zero(1), c.domain, omega);
    EXPECT_EQ(r.lhs_total, 0.0);
  }
  EXPECT_THROW(omega_identity_check(c.exact_u.restricted({true, true, true, false}), c.domain, 1.0), CapabilityError);
}

TEST(TrdEquality, KnownValues) {
  const auto c = trd_case();
  EXPECT_EQ(trd_equality(c, perturb(c, ConformityLevel::ConformingMixed, 0.0, 1)).lhs_total, 0.0);
  const auto z = trd_equality(c, zero_pair(c));
  // f = π²e^{−t}sin(πx): ‖f‖² = π⁴(1−e⁻²)/4, ‖u0‖² = 1/2.
  const double expected = kPi2 * kPi2 * (1.0 - kE2) / 4.0 + 0.5;
  EXPECT_NEAR(z.rhs_total, expected, 1e-11);
  EXPECT_NEAR(z.lhs_total, expected, 1e-11);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = trd_equality(c, perturb(c, ConformityLevel::ConformingMixed, 0.1, seed));
    EXPECT_LE(r.rel_residual, 1e-8);
    EXPECT_LE(value_of(r.extras, "parabolic_residual_rel"), 1e-10);
  }
}

TEST(TrdVeryConforming, KnownValues) {
  const auto c = trd_case();
  EXPECT_EQ(trd_very_conforming_equality(c, c.exact_u).lhs_total, 0.0);
  const auto full = trd_very_conforming_equality(c, ScalarField::zero(1));
  const auto half = trd_very_conforming_equality(c, 0.5 * c.exact_u);
  EXPECT_NEAR(half.lhs_total, 0.25 * full.lhs_total, 1e-12 * full.lhs_total);
  EXPECT_NEAR(half.rhs_total, 0.25 * full.rhs_total, 1e-12 * full.rhs_total);
  EXPECT_LE(full.rel_residual, 1e-8);
  const auto other = sine_mode(c.domain, {2}, 1.0, TimeFactor{1, 0.0}).field();
  EXPECT_LE(trd_very_conforming_equality(c, other).rel_residual, 1e-8);
}

TEST(HeatIsometry, AnalyticSides) {
  const auto r = heat_isometry_check(heat_case());
  const double a = (1.0 - kE2) / 4.0;
  EXPECT_NEAR(r.lhs_total, (1.0 + kPi2 * kPi2) * a + kPi2 * kE2 / 2.0, 1e-11);
  EXPECT_NEAR(r.rhs_total, std::pow(kPi2 - 1.0, 2) * a + kPi2 / 2.0, 1e-11);
  EXPECT_LE(r.rel_residual, 1e-8);

  const BoxDomain xi = BoxDomain::unit(2, 0.5);
  const auto zero_start = make_case(ProblemKind::Heat, sine_mode(xi, {1, 2}, 1.0, {1, 0.3}) +
                                                           sine_mode(xi, {2, 1}, -0.5, {2, 0.0}));
  EXPECT_LE(heat_isometry_check(zero_start).rel_residual, 1e-8);
}

TEST(HeatVeryConforming, KnownValues) {
  const auto c = heat_case();
  EXPECT_EQ(heat_very_conforming_equality(c, c.exact_u).lhs_total, 0.0);
  const auto iso = heat_isometry_check(c);
  const auto z = heat_very_conforming_equality(c, ScalarField::zero(1));
  EXPECT_NEAR(z.rhs_total, iso.rhs_total, 1e-12 * iso.rhs_total);
  const auto half = heat_very_conforming_equality(c, 0.5 * c.exact_u);
  EXPECT_NEAR(half.rhs_total, 0.25 * iso.rhs_total, 1e-12 * iso.rhs_total);
  EXPECT_LE(half.rel_residual, 1e-8);
}

TEST(HeatTwoSided, AnalyticZeroApproximation) {
  const auto c = heat_case();
  const auto cf = elliptic::friedrichs_constant(c.domain);
  const auto r = heat_two_sided(c, zero_pair(c), cf);
  const double a = (1.0 - kE2) / 4.0;
  const double R2 = std::pow(kPi2 - 1.0, 2) * a, I2 = 0.5;
  const double truth = 2.0 * kPi2 * a + R2 + kE2 / 2.0;
  EXPECT_NEAR(r.true_error, truth, 1e-11);
  EXPECT_NEAR(value_of(r.lower_bounds, "residual_plus_half_gap"), R2, 1e-11);
  EXPECT_NEAR(value_of(r.lower_bounds, "scaled_gap_initial"), I2 / (1.0 + 1.0 / kPi2), 1e-12);
  EXPECT_NEAR(r.upper_bound, (1.0 + 4.0 / kPi2) * R2 + 2.0 * I2, 1e-11);
  EXPECT_TRUE(r.ordered(1e-9));
  EXPECT_NEAR(heat_two_sided(c, perturb(c, ConformityLevel::ConformingMixed, 0.0, 3), cf).upper_bound, 0.0, 1e-24);
}

TEST(HeatTwoSided, RandomOrderingAndIdentity) {
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.5};
  const BoxDomain xi(lo, hi, 0.8);
  const auto c = make_case(ProblemKind::Heat, sine_mode(xi, {1, 1}, 1.0, {0, -0.5}) + sine_mode(xi, {2, 1}, 0.4, {1, 0.0}));
  const auto cf = elliptic::friedrichs_constant(c.domain);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const double eps = seed % 3 == 0 ? 0.01 : (seed % 3 == 1 ? 0.1 : 1.0);
    const auto r = heat_two_sided(c, perturb(c, ConformityLevel::ConformingMixed, eps, seed), cf, 1.5 + 0.1 * seed);
    EXPECT_TRUE(r.ordered(1e-9)) << seed;
    EXPECT_LE(value_of(r.extras, "parabolic_identity_rel"), 1e-10);
  }
  EXPECT_THROW(heat_two_sided(trd_case(), zero_pair(trd_case()), cf), ContractError);
}
