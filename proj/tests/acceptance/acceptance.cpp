// Acceptance suite: one PASS/FAIL line per criterion.
//
//   funcerr_acceptance            run criteria 1-8
//   funcerr_acceptance 4 7        run the listed criteria
//
// Exit status is nonzero when any selected criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "funcerr/elliptic.hpp"
#include "funcerr/optimizer.hpp"
#include "funcerr/parabolic.hpp"
#include "funcerr/report.hpp"
#include "oracles.hpp"

using namespace funcerr;
using namespace funcerr::mms;
namespace fr = funcerr::report;

namespace {

// Tolerances pinned by the acceptance criteria.
constexpr double kEqualityRel = 1e-8;
constexpr double kRuntimeLimit = 60.0;
constexpr double kIsometryRel = 1e-8;
constexpr double kOrderingSlack = 1e-9;
constexpr double kSharpGamma = 1e-6;
constexpr double kSharpRatio = 1e-5;
constexpr double kSharpEqualRel = 1e-8;
constexpr double kFriedrichsAbs = 1e-3;
constexpr double kSaturation = 1e-10;
constexpr double kGammaRel = 1e-6;
constexpr double kDefectResidual = 1e-4;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double uniform(std::mt19937_64& rng) { return unit_uniform(rng()); }

// Random boundary-vanishing manufactured solution of the given kind.
ProblemCase random_case(ProblemKind kind, std::mt19937_64& rng) {
  const int d = 1 + static_cast<int>(rng() % 2);
  std::vector<double> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = -0.5 + uniform(rng);
    hi[i] = lo[i] + 0.5 + 1.5 * uniform(rng);
  }
  std::optional<double> T;
  if (is_parabolic(kind)) T = 0.5 + 1.5 * uniform(rng);
  const BoxDomain dom(lo, hi, T);
  std::vector<SeparableTerm> terms;
  for (int k = 0; k < 2; ++k) {
    SeparableTerm t;
    const double c = 2.0 * uniform(rng) - 1.0;
    t.coeff = c + (c < 0 ? -0.2 : 0.2);
    for (int i = 0; i < d; ++i) t.factors.push_back(AxisFactor::sin(1 + static_cast<int>(rng() % 3)));
    if (T) t.time = {static_cast<int>(rng() % 3), 2.0 * uniform(rng) - 1.0};
    terms.push_back(std::move(t));
  }
  return make_case(kind, SeparableSum(dom, terms));
}

fr::RunConfig suite_subset(const std::set<std::string>& keep) {
  auto cfg = fr::default_suite_config();
  std::vector<fr::EstimatorSpec> kept;
  for (auto& e : cfg.estimators)
    if (keep.count(e.name)) kept.push_back(e);
  cfg.estimators = std::move(kept);
  return cfg;
}

// 1: the six error identities over the default suite.
Outcome equality_suite() {
  const std::set<std::string> identities{"rd_equality",  "rd_very_conforming_equality", "poisson_very_conforming_equality",
                                       "trd_equality", "trd_very_conforming_equality", "heat_very_conforming_equality"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = fr::run(suite_subset(identities));
  const double elapsed = seconds_since(t0);

  Outcome o;
  std::map<std::string, std::set<std::string>> cases, perturbations;
  std::map<std::string, int> count;
  double worst = 0.0;
  for (const auto& r : report.records) {
    if (r.error || !r.equality) {
      o.pass = false;
      continue;
    }
    worst = std::max(worst, r.equality->rel_residual);
    if (!(r.equality->rel_residual <= kEqualityRel)) o.pass = false;
    cases[r.estimator].insert(r.case_name);
    perturbations[r.estimator].insert(r.approximation->name);
    ++count[r.estimator];
  }
  int min_cases = 1 << 30, min_perturb = 1 << 30;
  for (const auto& t : identities) {
    min_cases = std::min(min_cases, static_cast<int>(cases[t].size()));
    min_perturb = std::min(min_perturb, static_cast<int>(perturbations[t].size()));
  }
  if (min_cases < 10 || min_perturb < 10 || elapsed > kRuntimeLimit) o.pass = false;
  o.detail = std::to_string(report.records.size()) + " records over 6 identities (>= " + std::to_string(min_cases) +
             " cases x " + std::to_string(min_perturb) + " perturbations each), max rel residual " +
             fmt("%.2e", worst) + " (tol 1e-8), " + fmt("%.1f", elapsed) + " s (limit 60 s)";
  return o;
}

// 2: isometries and the omega family.
Outcome isometry_suite() {
  const auto report = fr::run(suite_subset({"rd_isometry", "poisson_isometry", "trd_isometry", "heat_isometry", "omega_identity"}));
  Outcome o;
  std::map<std::string, int> count;
  std::set<double> omegas;
  double worst = 0.0;
  for (const auto& r : report.records) {
    if (r.error || !r.equality) {
      o.pass = false;
      continue;
    }
    worst = std::max(worst, r.equality->rel_residual);
    if (!(r.equality->rel_residual <= kIsometryRel)) o.pass = false;
    ++count[r.estimator];
    if (r.estimator == "omega_identity") omegas.insert(value_of(r.equality->extras, "omega"));
  }
  for (const char* n : {"rd_isometry", "poisson_isometry", "trd_isometry", "heat_isometry"})
    if (count[n] < 5) o.pass = false;
  for (double w : {-1.0, 0.0, 0.5, 1.0, 10.0})
    if (!omegas.count(w)) o.pass = false;
  o.detail = "4 isometries x " + std::to_string(count["rd_isometry"]) + " cases, omega identity " +
             std::to_string(count["omega_identity"]) + " checks over 5 omegas, max rel residual " + fmt("%.2e", worst) +
             " (tol 1e-8)";
  return o;
}

// 3: lower <= true <= upper for the Poisson and heat two-sided bounds.
Outcome two_sided_ordering() {
  Outcome o;
  int checked = 0;
  double worst_low = -INFINITY, worst_up = -INFINITY;
  for (auto kind : {ProblemKind::Poisson, ProblemKind::Heat}) {
    for (int i = 0; i < 100; ++i) {
      std::mt19937_64 rng(1000 * static_cast<int>(kind) + i);
      const auto c = random_case(kind, rng);
      const double eps = std::array{0.01, 0.1, 1.0}[i % 3];
      const auto a = perturb(c, ConformityLevel::ConformingMixed, eps, static_cast<std::uint64_t>(i + 1));
      const auto cf = elliptic::friedrichs_constant(c.domain);
      const double gamma = 1.0 + 4.0 * uniform(rng) + 1e-3;
      const auto r = kind == ProblemKind::Poisson ? elliptic::poisson_two_sided(c, a, cf, gamma)
                                                  : parabolic::heat_two_sided(c, a, cf, gamma);
      ++checked;
      for (const auto& lb : r.lower_bounds) {
        worst_low = std::max(worst_low, lb.value - r.true_error);
        if (!(lb.value <= r.true_error + kOrderingSlack)) o.pass = false;
      }
      worst_up = std::max(worst_up, r.true_error - r.upper_bound);
      if (!(r.true_error <= r.upper_bound + kOrderingSlack) || r.lower_bounds.size() != 2) o.pass = false;
    }
  }
  o.detail = std::to_string(checked) + " random conforming cases (100 Poisson, 100 heat); max(lower - true) " +
             fmt("%.3g", worst_low) + ", max(true - upper) " + fmt("%.3g", worst_up) + " (slack 1e-9)";
  return o;
}

// 4: sharpness of the non-conforming bounds with the exact free fields.
Outcome nonconforming_sharpness() {
  Outcome o;
  double rd_lo = INFINITY, rd_hi = -INFINITY;
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(5000 + i);
    const auto c = random_case(ProblemKind::ReactionDiffusion, rng);
    const auto a = perturb(c, ConformityLevel::NonConforming, std::array{0.01, 0.1, 1.0}[i % 3], i + 1);
    const auto r = elliptic::rd_nonconforming_bounds(c, a, free_fields(c, FreeFieldStrategy::exact()), kSharpGamma,
                                                     elliptic::RdPart::III);
    const double ratio = r.upper_bound / r.true_error;
    rd_lo = std::min(rd_lo, ratio);
    rd_hi = std::max(rd_hi, ratio);
  }
  const bool rd_ok = rd_lo >= 1.0 && rd_hi <= 1.0 + kSharpRatio;

  double d_worst = 0.0, d_ratio_lo = INFINITY, d_ratio_hi = -INFINITY;
  for (int i = 0; i < 20; ++i) {
    std::mt19937_64 rng(6000 + i);
    const auto c = random_case(ProblemKind::Poisson, rng);
    const auto a = perturb(c, ConformityLevel::NonConforming, std::array{0.01, 0.1, 1.0}[i % 3], i + 1);
    const elliptic::PoissonFreeFields exact{c.exact_u, c.exact_p, std::nullopt, std::nullopt};
    const auto r = elliptic::poisson_nonconforming(c, a, exact, elliptic::friedrichs_constant(c.domain),
                                                   elliptic::PoissonPart::II);
    const double rel = std::abs(r.upper_bound - r.true_error) / std::max(r.true_error, kRelativeFloor);
    d_worst = std::max(d_worst, rel);
    d_ratio_lo = std::min(d_ratio_lo, r.upper_bound / r.true_error);
    d_ratio_hi = std::max(d_ratio_hi, r.upper_bound / r.true_error);
  }
  const bool d_ok = d_worst <= kSharpEqualRel;
  o.pass = rd_ok && d_ok;
  o.detail = std::string("rd part iii, gamma=1e-6, 20 cases: bound/true in [") + fmt("%.9f", rd_lo) + ", " +
             fmt("%.9f", rd_hi) + "] " + (rd_ok ? "ok" : "out of [1, 1+1e-5]") +
             "; poisson part ii, 20 cases: bound/true in [" + fmt("%.6f", d_ratio_lo) + ", " + fmt("%.6f", d_ratio_hi) +
             "], max rel deviation " + fmt("%.3g", d_worst) + (d_ok ? " ok" : " exceeds 1e-8");
  return o;
}

// 5: closed-form Friedrichs constants against a finite-difference eigenvalue.
Outcome friedrichs() {
  Outcome o;
  std::ostringstream detail;
  for (const std::vector<double>& lengths : {std::vector<double>{1.0}, std::vector<double>{1.0, 1.0}}) {
    const int d = static_cast<int>(lengths.size());
    const BoxDomain dom = BoxDomain::unit(d);
    const auto cf = elliptic::friedrichs_constant(dom);
    const double expected = d == 1 ? 1.0 / std::numbers::pi : 1.0 / (std::numbers::pi * std::sqrt(2.0));
    const double fd = 1.0 / std::sqrt(oracle::fd_dirichlet_eigenvalue(lengths, d == 1 ? 400 : 80));
    const auto w = sine_mode(dom, std::vector<int>(d, 1)).field();
    const double m1 = std::abs(elliptic::cf_check(w, dom, cf));
    const double m2 = std::abs(elliptic::cftwo_check(w, dom, cf));
    if (std::abs(cf.value - fd) > kFriedrichsAbs || std::abs(cf.value - expected) > 1e-15 || m1 > kSaturation ||
        m2 > kSaturation)
      o.pass = false;
    detail << (d == 1 ? "" : "; ") << "d=" << d << ": c_f " << fmt("%.10f", cf.value) << " vs fd "
           << fmt("%.10f", fd) << ", margins " << fmt("%.1e", m1) << "/" << fmt("%.1e", m2);
  }
  o.detail = detail.str();
  return o;
}

// 6: optimal gamma against a log grid, and nested flux enrichment.
Outcome optimizer() {
  Outcome o;
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double A = std::pow(10.0, 6.0 * uniform(rng) - 3.0), B = std::pow(10.0, 6.0 * uniform(rng) - 3.0);
    const double grid = oracle::young_grid_min(A, B, 1e-6, 1e6, 200001);
    const double got = opt::optimal_gamma(A, B).bound;
    worst = std::max(worst, std::abs(got - grid) / grid);
    if (got > grid * (1.0 + 1e-14)) o.pass = false;
  }
  if (worst > kGammaRel) o.pass = false;

  const auto cfg = fr::default_suite_config();
  int fits = 0, monotone_breaks = 0, below_true = 0;
  for (const auto& spec : cfg.cases) {
    if (is_parabolic(spec.kind)) continue;
    const auto c = spec.build();
    const auto cf = elliptic::friedrichs_constant(c.domain);
    const int d = c.domain.dim();
    const TrigFluxFamily family(c.domain);
    for (const auto& as : cfg.approximations) {
      if (as.level != ConformityLevel::ConformingMixed) continue;
      const auto a = perturb(c, as.level, as.epsilon, *as.seed);
      const bool poisson = c.kind == ProblemKind::Poisson;
      const double truth =
          poisson ? elliptic::poisson_primal_majorant(c, a.u_tilde, VectorField::zero(d), cf).true_error
                  : elliptic::rd_primal_majorant(c, a.u_tilde, VectorField::zero(d)).true_error;
      const auto weights = poisson ? opt::poisson_weights(cf.value, 1.0) : opt::rd_weights();
      double prev = INFINITY;
      for (int step = 1; step <= 4; ++step) {
        const auto fit = opt::minimize_flux_majorant(c, a.u_tilde, family.first(step * d), weights);
        ++fits;
        if (fit.majorant > prev * (1.0 + 1e-12)) ++monotone_breaks;
        if (fit.majorant < truth * (1.0 - 1e-12)) ++below_true;
        prev = fit.majorant;
      }
    }
  }
  if (monotone_breaks || below_true) o.pass = false;
  o.detail = "optimal_gamma vs 200001-point log grid on 1000 (A,B): max rel diff " + fmt("%.2e", worst) +
             " (tol 1e-6); " + std::to_string(fits) + " nested flux fits: " + std::to_string(monotone_breaks) +
             " monotonicity breaks, " + std::to_string(below_true) + " below true error";
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + FUNCERR_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("funcerr_acceptance_" + name);
  std::filesystem::remove_all(p);
  return p;
}

// 7: a 1% source defect is caught in every case and by the CLI exit code.
Outcome defect_detection() {
  Outcome o;
  const auto base = fr::default_suite_config();
  int detected = 0;
  double weakest = INFINITY;
  for (const auto& spec : base.cases) {
    fr::RunConfig cfg;
    cfg.cases = {spec};
    cfg.cases[0].source_scale = 1.01;
    cfg.approximations = {{"vc", ConformityLevel::VeryConforming, 0.1, 1}};
    for (const auto& e : base.estimators) {
      if (!fr::is_equality_estimator(e.name)) continue;
      if (!e.cases.empty() && std::find(e.cases.begin(), e.cases.end(), spec.name) == e.cases.end()) continue;
      auto copy = e;
      copy.cases.clear();
      copy.levels.clear();
      cfg.estimators.push_back(copy);
    }
    double strongest = 0.0;
    for (const auto& r : fr::run(cfg).records)
      if (r.equality) strongest = std::max(strongest, r.equality->rel_residual);
    weakest = std::min(weakest, strongest);
    if (strongest > kDefectResidual) ++detected;
  }
  const auto out = scratch("defect");
  const int bad = run_cli("suite --config \"" FUNCERR_CONFIG_DIR "/defect.json\" --out \"" + out.string() + "\"");
  const int good = run_cli("suite --config \"" FUNCERR_CONFIG_DIR "/minimal.json\" --out \"" + out.string() + "\"");
  std::filesystem::remove_all(out);
  o.pass = detected == static_cast<int>(base.cases.size()) && bad != 0 && good == 0;
  o.detail = std::to_string(detected) + "/" + std::to_string(base.cases.size()) +
             " corrupted cases detected, weakest max residual " + fmt("%.3g", weakest) +
             " (threshold 1e-4); CLI exit " + std::to_string(bad) + " on defect, " + std::to_string(good) +
             " on clean config";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8: two CLI runs of the default suite give byte-identical JSON.
Outcome determinism() {
  Outcome o;
  const auto a = scratch("det_a"), b = scratch("det_b");
  const int ea = run_cli("suite --format json --out \"" + a.string() + "\"");
  const int eb = run_cli("suite --format json --out \"" + b.string() + "\"");
  const auto ja = slurp(a / "report.json"), jb = slurp(b / "report.json");
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
  const auto records = fr::report_from_json(ja).records.size();
  o.pass = ea == 0 && eb == 0 && !ja.empty() && ja == jb;
  o.detail = std::to_string(ja.size()) + " bytes, " + std::to_string(records) + " records, " +
             (ja == jb ? "identical" : "different") + "; exit codes " + std::to_string(ea) + "/" + std::to_string(eb);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"equality suite", equality_suite},
      {"isometry suite", isometry_suite},
      {"two-sided ordering", two_sided_ordering},
      {"non-conforming sharpness", nonconforming_sharpness},
      {"Friedrichs constant", friedrichs},
      {"optimizer", optimizer},
      {"defect detection", defect_detection},
      {"determinism", determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1-8 ...]\n", argv[0]);
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty())
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);

  bool all = true;
  for (int k : selected) {
    Outcome o;
    try {
      o = criteria[k - 1].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", k, criteria[k - 1].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
