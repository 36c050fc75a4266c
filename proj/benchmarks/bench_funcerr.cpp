#include <benchmark/benchmark.h>

#include <cmath>

#include "funcerr/elliptic.hpp"
#include "funcerr/optimizer.hpp"
#include "funcerr/parabolic.hpp"
#include "funcerr/quadrature.hpp"
#include "funcerr/report.hpp"

using namespace funcerr;
using namespace funcerr::mms;

namespace {

BoxDomain box(int d, bool timed) {
  return timed ? BoxDomain::unit(d, 1.0) : BoxDomain::unit(d);
}

}  // namespace

// Tensor Gauss-Legendre integration of a smooth function; args: dim, order, time axis.
static void BM_Integrate(benchmark::State& state) {
  const auto dom = box(static_cast<int>(state.range(0)), state.range(2) != 0);
  const QuadratureRule q(static_cast<int>(state.range(1)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    const double v = integrate(dom, q, [](const Point& p) { return std::sin(p.x[0]) * std::cos(p.x[1] + p.t); });
    benchmark::DoNotOptimize(v);
  }
  state.counters["points/s"] = benchmark::Counter(
      std::pow(static_cast<double>(state.range(1)), static_cast<double>(state.range(0) + (state.range(2) ? 1 : 0))),
      benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Integrate)
    ->Args({1, 12, 0})
    ->Args({2, 12, 0})
    ->Args({3, 12, 0})
    ->Args({2, 12, 1})
    ->Args({2, 24, 0});

static void BM_RdEquality(benchmark::State& state) {
  const auto c = make_case(ProblemKind::ReactionDiffusion,
                           sine_mode(box(static_cast<int>(state.range(0)), false), std::vector<int>(state.range(0), 1)));
  const auto a = perturb(c, ConformityLevel::ConformingMixed, 0.1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(elliptic::rd_equality(c, a).rel_residual);
}
BENCHMARK(BM_RdEquality)->Arg(1)->Arg(2)->Arg(3);

static void BM_HeatTwoSided(benchmark::State& state) {
  const auto dom = box(static_cast<int>(state.range(0)), true);
  const auto c = make_case(ProblemKind::Heat, sine_mode(dom, std::vector<int>(state.range(0), 1), 1.0, {0, -1.0}));
  const auto a = perturb(c, ConformityLevel::ConformingMixed, 0.1, 1);
  const auto cf = elliptic::friedrichs_constant(dom);
  for (auto _ : state) benchmark::DoNotOptimize(parabolic::heat_two_sided(c, a, cf).upper_bound);
}
BENCHMARK(BM_HeatTwoSided)->Arg(1)->Arg(2);

// Gram assembly plus dense solve; arg: basis size on the unit square.
static void BM_MinimizeFluxMajorant(benchmark::State& state) {
  const auto dom = box(2, false);
  const auto c = make_case(ProblemKind::Poisson, sine_mode(dom, {1, 2}) + sine_mode(dom, {2, 3}, 0.3));
  const auto ut = perturb(c, ConformityLevel::ConformingMixed, 0.1, 1).u_tilde;
  const auto basis = TrigFluxFamily(dom).first(static_cast<int>(state.range(0)));
  const auto w = opt::poisson_weights(elliptic::friedrichs_constant(dom).value, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(opt::minimize_flux_majorant(c, ut, basis, w).majorant);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinimizeFluxMajorant)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_OptimalGamma(benchmark::State& state) {
  double a = 1.0;
  for (auto _ : state) {
    a = a * 1.0000001 + 1e-9;
    benchmark::DoNotOptimize(opt::optimal_gamma(a, 2.0).bound);
  }
}
BENCHMARK(BM_OptimalGamma);

// One reaction-diffusion case through the batch driver, json serialization included.
static void BM_RunAndSerialize(benchmark::State& state) {
  report::RunConfig cfg;
  report::CaseSpec cs;
  cs.name = "rd";
  cs.lower = {0.0, 0.0};
  cs.upper = {1.0, 1.0};
  cs.solution = {SeparableTerm{1.0, {}, {AxisFactor::sin(1), AxisFactor::sin(2)}}};
  cfg.cases = {cs};
  for (int s = 1; s <= 10; ++s)
    cfg.approximations.push_back({"a" + std::to_string(s), ConformityLevel::ConformingMixed, 0.1, s});
  cfg.estimators = {{.name = "rd_equality"}, {.name = "rd_nonconforming"}};
  for (auto _ : state) benchmark::DoNotOptimize(report::to_json(report::run(cfg)).size());
}
BENCHMARK(BM_RunAndSerialize)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
