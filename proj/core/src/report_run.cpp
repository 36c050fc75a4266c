#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "funcerr/elliptic.hpp"
#include "funcerr/optimizer.hpp"
#include "funcerr/parabolic.hpp"
#include "funcerr/report.hpp"
#include "report_internal.hpp"

namespace funcerr::report {

using mms::AxisFactor;
using mms::ConformityLevel;
using mms::ProblemKind;

namespace {

struct Context {
  const mms::ProblemCase& c;
  const ApproximationSpec* spec;
  const mms::ApproxPair* pair;
  const QuadratureRule& q;
};

elliptic::FriedrichsConstant friedrichs_for(const EstimatorSpec& e, const mms::ProblemCase& c) {
  return e.friedrichs ? elliptic::friedrichs_constant(*e.friedrichs) : elliptic::friedrichs_constant(c.domain);
}

mms::FreeFields free_for(const EstimatorSpec& e, const mms::ProblemCase& c) {
  return mms::free_fields(c, e.free_fields.value_or(mms::FreeFieldStrategy::coarse()));
}

bool dual_conforming(ConformityLevel l) {
  return l == ConformityLevel::VeryConforming || l == ConformityLevel::ConformingMixed ||
         l == ConformityLevel::SemiConformingDual;
}

EqualityReport run_equality(const EstimatorSpec& e, const Context& x) {
  const auto& n = e.name;
  const auto& c = x.c;
  if (n == "rd_isometry") return elliptic::rd_isometry_check(c, x.q);
  if (n == "poisson_isometry") return elliptic::poisson_isometry_check(c, x.q);
  if (n == "trd_isometry") return parabolic::trd_isometry_check(c, x.q);
  if (n == "heat_isometry") return parabolic::heat_isometry_check(c, x.q);
  if (n == "omega_identity") return parabolic::omega_identity_check(c.exact_u, c.domain, *e.omega, x.q);
  const auto& a = *x.pair;
  if (n == "rd_equality") return elliptic::rd_equality(c, a, x.q);
  if (n == "rd_very_conforming_equality") return elliptic::rd_very_conforming_equality(c, a.u_tilde, x.q);
  if (n == "poisson_very_conforming_equality") return elliptic::poisson_very_conforming_equality(c, a.u_tilde, x.q);
  if (n == "trd_equality") return parabolic::trd_equality(c, a, x.q);
  if (n == "trd_very_conforming_equality") return parabolic::trd_very_conforming_equality(c, a.u_tilde, x.q);
  if (n == "heat_very_conforming_equality") return parabolic::heat_very_conforming_equality(c, a.u_tilde, x.q);
  throw ContractError("no equality estimator named " + n);
}

elliptic::RdPart rd_part(const std::string& s) {
  if (s == "i") return elliptic::RdPart::I;
  if (s == "ii") return elliptic::RdPart::II;
  return elliptic::RdPart::III;
}

elliptic::PoissonPart poisson_part(const std::string& s) {
  if (s == "ii") return elliptic::PoissonPart::II;
  if (s == "mixed_i") return elliptic::PoissonPart::MixedI;
  if (s == "mixed_ii") return elliptic::PoissonPart::MixedII;
  return elliptic::PoissonPart::I;
}

std::vector<BoundReport> run_bound(const EstimatorSpec& e, const Context& x) {
  const auto& n = e.name;
  const auto& c = x.c;
  const auto& a = *x.pair;
  BoundReport r;
  if (n == "rd_nonconforming") {
    r = elliptic::rd_nonconforming_bounds(c, a, free_for(e, c), e.gamma.value_or(1.0), rd_part(e.part.value_or("iii")),
                                          x.q);
  } else if (n == "rd_semiconforming") {
    r = elliptic::rd_semiconforming_bounds(c, a, free_for(e, c), e.gamma.value_or(1.0), x.q);
  } else if (n == "rd_primal_majorant") {
    r = elliptic::rd_primal_majorant(c, a.u_tilde, e.free_fields ? free_for(e, c).flux : a.p_tilde, x.q);
  } else if (n == "poisson_two_sided") {
    r = elliptic::poisson_two_sided(c, a, friedrichs_for(e, c), e.gamma.value_or(2.0), x.q);
  } else if (n == "poisson_nonconforming") {
    const auto free = free_for(e, c);
    r = elliptic::poisson_nonconforming(c, a, {free.phi, free.flux, std::nullopt, std::nullopt}, friedrichs_for(e, c),
                                        poisson_part(e.part.value_or("i")), x.q);
  } else if (n == "poisson_primal_majorant") {
    r = elliptic::poisson_primal_majorant(c, a.u_tilde, e.free_fields ? free_for(e, c).flux : a.p_tilde,
                                          friedrichs_for(e, c), x.q);
  } else if (n == "heat_two_sided") {
    r = parabolic::heat_two_sided(c, a, friedrichs_for(e, c), e.gamma.value_or(2.0), x.q);
  } else if (n == "optimize_majorant") {
    const auto cf = friedrichs_for(e, c);
    const VectorField flux = dual_conforming(a.level) ? a.p_tilde : VectorField::zero(c.domain.dim());
    const auto initial = c.kind == ProblemKind::Poisson ? elliptic::poisson_primal_majorant(c, a.u_tilde, flux, cf, x.q)
                                                        : elliptic::rd_primal_majorant(c, a.u_tilde, flux, x.q);
    std::vector<BoundReport> out{initial};
    for (auto& step : opt::improve_bound(c, a.u_tilde, initial, e.budget.value_or(4), cf, x.q))
      out.push_back(std::move(step));
    return out;
  } else {
    throw ContractError("no bound estimator named " + n);
  }
  if (e.reoptimize) r = opt::reoptimize_gamma(r);
  return {r};
}

bool within(double rel, double tol) { return rel <= tol; }  // false for NaN

}  // namespace

int RunReport::failures() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(),
                                        [](const Record& r) { return !r.passed && !r.error; }));
}

int RunReport::errors() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const Record& r) { return r.error.has_value(); }));
}

int RunReport::exit_code() const {
  if (failures() > 0) return 1;
  if (errors() > 0) return 3;
  return 0;
}

RunReport run(const RunConfig& cfg) {
  validate(cfg);
  RunReport report;
  report.tolerances = cfg.tolerances;
  const QuadratureRule q = cfg.quadrature.rule();
  using clock = std::chrono::steady_clock;

  for (const auto& cs : cfg.cases) {
    const auto c = cs.build();
    std::map<std::size_t, mms::ApproxPair> pairs;
    auto pair_for = [&](std::size_t i) -> const mms::ApproxPair& {
      auto it = pairs.find(i);
      if (it == pairs.end()) {
        const auto& a = cfg.approximations[i];
        it = pairs.emplace(i, mms::perturb(c, a.level, a.epsilon, a.seed.value_or(cfg.default_seed))).first;
      }
      return it->second;
    };

    for (const auto& e : cfg.estimators) {
      if (!e.cases.empty() && std::find(e.cases.begin(), e.cases.end(), cs.name) == e.cases.end()) continue;
      const auto* info = detail::find_estimator(e.name);

      auto execute = [&](const ApproximationSpec* spec, std::optional<std::size_t> index) {
        const auto start = clock::now();
        std::vector<Record> out;
        Record base;
        base.case_name = cs.name;
        base.kind = cs.kind;
        base.estimator = e.name;
        if (spec) {
          base.approximation = *spec;
          base.approximation->seed = spec->seed.value_or(cfg.default_seed);
        }
        try {
          const Context x{c, spec, index ? &pair_for(*index) : nullptr, q};
          if (info->equality) {
            Record r = base;
            r.equality = run_equality(e, x);
            r.passed = within(r.equality->rel_residual, cfg.tolerances.equality_rel);
            out.push_back(std::move(r));
          } else {
            for (auto& b : run_bound(e, x)) {
              Record r = base;
              r.passed = b.ordered(cfg.tolerances.bound_slack);
              r.bound = std::move(b);
              out.push_back(std::move(r));
            }
          }
        } catch (const std::exception& ex) {
          Record r = base;
          r.error = ex.what();
          r.passed = false;
          out.assign(1, std::move(r));
        }
        if (cfg.output.include_timing) {
          const double secs = std::chrono::duration<double>(clock::now() - start).count();
          for (auto& r : out) r.wall_time = secs / static_cast<double>(out.size());
        }
        for (auto& r : out) report.records.push_back(std::move(r));
      };

      if (!info->uses_approximation) {
        execute(nullptr, std::nullopt);
        continue;
      }
      for (std::size_t i = 0; i < cfg.approximations.size(); ++i) {
        const auto& a = cfg.approximations[i];
        if (!e.levels.empty() && std::find(e.levels.begin(), e.levels.end(), a.level) == e.levels.end()) continue;
        execute(&a, i);
      }
    }
  }
  return report;
}

namespace {

mms::SeparableTerm term(double coeff, std::vector<AxisFactor> factors, mms::TimeFactor time = {}) {
  return {coeff, time, std::move(factors)};
}

AxisFactor S(int k) { return AxisFactor::sin(k); }
AxisFactor B(int m) { return AxisFactor::bubble(m); }

struct Shape {
  std::vector<double> lower, upper;
  std::vector<mms::SeparableTerm> terms;
};

std::vector<Shape> elliptic_shapes() {
  return {
      {{0.0}, {1.0}, {term(1.0, {S(1)})}},
      {{0.0}, {2.0}, {term(1.0, {S(1)}), term(0.3, {S(3)})}},
      {{0.0}, {1.0}, {term(4.0, {B(1)})}},
      {{-1.0}, {1.0}, {term(1.0, {S(2)}), term(0.5, {B(2)})}},
      {{0.0, 0.0}, {1.0, 1.0}, {term(1.0, {S(1), S(1)})}},
      {{0.0, 0.0}, {1.0, 1.0}, {term(1.0, {S(1), S(2)}), term(0.25, {S(3), S(1)})}},
      {{0.0, 0.0}, {1.0, 2.0}, {term(8.0, {B(1), B(1)})}},
      {{0.0, -0.5}, {2.0, 0.5}, {term(1.0, {S(2), S(1)}), term(-2.0, {B(1), S(2)})}},
      {{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {term(1.0, {S(1), S(1), S(1)})}},
      {{0.0, 0.0, 0.0}, {1.0, 1.0, 2.0}, {term(2.0, {B(1), S(1), S(2)}), term(0.5, {S(2), S(1), S(1)})}},
  };
}

struct TimedShape {
  std::vector<double> lower, upper;
  double horizon;
  std::vector<mms::SeparableTerm> terms;
};

std::vector<TimedShape> parabolic_shapes() {
  using T = mms::TimeFactor;
  return {
      {{0.0}, {1.0}, 1.0, {term(1.0, {S(1)}, T{0, -1.0})}},
      {{0.0}, {1.0}, 0.5, {term(1.0, {S(2)}, T{1, 0.0}), term(0.5, {S(1)})}},
      {{0.0}, {2.0}, 2.0, {term(4.0, {B(1)}, T{0, 0.5})}},
      {{-1.0}, {1.0}, 1.0, {term(1.0, {S(1)}, T{2, -0.3}), term(0.2, {S(3)}, T{0, -2.0})}},
      {{0.0}, {1.0}, 1.5, {term(2.0, {B(2)}, T{1, -1.0})}},
      {{0.0, 0.0}, {1.0, 1.0}, 1.0, {term(1.0, {S(1), S(1)}, T{0, -1.0})}},
      {{0.0, 0.0}, {1.0, 2.0}, 0.5, {term(1.0, {S(1), S(2)}, T{1, 0.0}), term(0.3, {S(2), S(1)}, T{0, 1.0})}},
      {{0.0, 0.0}, {1.0, 1.0}, 2.0, {term(8.0, {B(1), B(1)}, T{0, -0.25})}},
      {{0.0, 0.0}, {2.0, 1.0}, 1.0, {term(1.0, {S(2), S(1)}, T{2, 0.0}), term(-1.0, {B(1), S(1)}, T{0, -0.5})}},
      {{-0.5, 0.0}, {0.5, 1.0}, 1.0, {term(1.0, {S(1), S(3)}, T{1, -2.0}), term(0.5, {S(1), S(1)})}},
  };
}

std::string eps_tag(double eps) {
  if (eps == 0.01) return "0.01";
  if (eps == 0.1) return "0.1";
  return "1";
}

}  // namespace

RunConfig default_suite_config(std::uint64_t base_seed) {
  RunConfig cfg;
  cfg.default_seed = base_seed;
  const auto elliptic = elliptic_shapes();
  const auto parabolic = parabolic_shapes();
  for (auto kind : {ProblemKind::ReactionDiffusion, ProblemKind::Poisson}) {
    for (std::size_t i = 0; i < elliptic.size(); ++i) {
      CaseSpec c;
      c.name = std::string(mms::to_string(kind)) + "_" + std::to_string(i);
      c.kind = kind;
      c.lower = elliptic[i].lower;
      c.upper = elliptic[i].upper;
      c.solution = elliptic[i].terms;
      cfg.cases.push_back(std::move(c));
    }
  }
  for (auto kind : {ProblemKind::TimeReactionDiffusion, ProblemKind::Heat}) {
    for (std::size_t i = 0; i < parabolic.size(); ++i) {
      CaseSpec c;
      c.name = std::string(mms::to_string(kind)) + "_" + std::to_string(i);
      c.kind = kind;
      c.lower = parabolic[i].lower;
      c.upper = parabolic[i].upper;
      c.horizon = parabolic[i].horizon;
      c.solution = parabolic[i].terms;
      cfg.cases.push_back(std::move(c));
    }
  }

  auto add_level = [&](ConformityLevel level, const char* tag, int seeds) {
    for (double eps : {0.01, 0.1, 1.0})
      for (int s = 0; s < seeds; ++s)
        cfg.approximations.push_back({std::string(tag) + "_e" + eps_tag(eps) + "_s" + std::to_string(base_seed + s),
                                      level, eps, base_seed + static_cast<std::uint64_t>(s)});
  };
  add_level(ConformityLevel::VeryConforming, "vc", 10);
  add_level(ConformityLevel::ConformingMixed, "cm", 2);
  add_level(ConformityLevel::SemiConformingPrimal, "sp", 3);
  add_level(ConformityLevel::SemiConformingDual, "sd", 3);
  add_level(ConformityLevel::NonConforming, "nc", 3);

  using L = ConformityLevel;
  auto est = [&](std::string name, std::vector<L> levels = {}) -> EstimatorSpec& {
    EstimatorSpec e;
    e.name = std::move(name);
    e.levels = std::move(levels);
    cfg.estimators.push_back(std::move(e));
    return cfg.estimators.back();
  };
  auto kind_cases = [&](ProblemKind k) {
    std::vector<std::string> names;
    for (const auto& c : cfg.cases)
      if (c.kind == k) names.push_back(c.name);
    return names;
  };
  const auto rd = kind_cases(ProblemKind::ReactionDiffusion), poisson = kind_cases(ProblemKind::Poisson),
             trd = kind_cases(ProblemKind::TimeReactionDiffusion), heat = kind_cases(ProblemKind::Heat);
  std::vector<std::string> timed = trd;
  timed.insert(timed.end(), heat.begin(), heat.end());

  est("rd_isometry").cases = rd;
  est("poisson_isometry").cases = poisson;
  est("trd_isometry").cases = trd;
  est("heat_isometry").cases = heat;
  for (double omega : {-1.0, 0.0, 0.5, 1.0, 10.0}) {
    auto& e = est("omega_identity");
    e.omega = omega;
    e.cases = timed;
  }
  const std::vector<L> conforming{L::VeryConforming, L::ConformingMixed};
  est("rd_equality", conforming).cases = rd;
  est("rd_very_conforming_equality", {L::VeryConforming}).cases = rd;
  est("poisson_very_conforming_equality", {L::VeryConforming}).cases = poisson;
  est("trd_equality", conforming).cases = trd;
  est("trd_very_conforming_equality", {L::VeryConforming}).cases = trd;
  est("heat_very_conforming_equality", {L::VeryConforming}).cases = heat;

  for (const char* part : {"i", "ii", "iii"}) {
    auto& e = est("rd_nonconforming", {L::NonConforming});
    e.part = part;
    e.cases = rd;
  }
  {
    auto& e = est("rd_nonconforming", {L::NonConforming});
    e.part = "iii";
    e.reoptimize = true;
    e.cases = rd;
  }
  est("rd_semiconforming", {L::SemiConformingPrimal, L::SemiConformingDual}).cases = rd;
  est("rd_primal_majorant", conforming).cases = rd;
  est("poisson_two_sided", conforming).cases = poisson;
  {
    auto& e = est("poisson_two_sided", conforming);
    e.reoptimize = true;
    e.cases = poisson;
  }
  for (const char* part : {"i", "ii"}) {
    auto& e = est("poisson_nonconforming", {L::NonConforming});
    e.part = part;
    e.cases = poisson;
  }
  {
    auto& e = est("poisson_nonconforming", {L::SemiConformingPrimal});
    e.part = "mixed_i";
    e.cases = poisson;
  }
  {
    auto& e = est("poisson_nonconforming", {L::SemiConformingDual});
    e.part = "mixed_ii";
    e.cases = poisson;
  }
  est("poisson_primal_majorant", conforming).cases = poisson;
  est("heat_two_sided", conforming).cases = heat;
  {
    auto& e = est("heat_two_sided", conforming);
    e.reoptimize = true;
    e.cases = heat;
  }
  {
    auto& e = est("optimize_majorant", {L::ConformingMixed});
    e.cases = rd;
    e.cases.insert(e.cases.end(), poisson.begin(), poisson.end());
  }
  return cfg;
}

}  // namespace funcerr::report
