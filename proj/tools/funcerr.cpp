// funcerr command line driver.
//
// Exit codes: 0 everything verified, 1 an equality residual or bound ordering failed,
// 2 usage or configuration error, 3 no verification failure but some record raised an error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "funcerr/elliptic.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/report.hpp"

namespace fr = funcerr::report;

namespace {

constexpr int kUsageError = 2;

struct CommonOptions {
  std::string config;
  std::string out;
  std::vector<std::string> formats;
  int quad_order = 0;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output directory (default: $FUNCERR_OUT_DIR or ./funcerr-out)");
  cmd->add_option("--format", o.formats, "Output formats: json, csv, plotdata (repeatable or comma separated)")
      ->delimiter(',');
  cmd->add_option("--quad-order", o.quad_order, "Gauss-Legendre points per axis, space and time")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--seed", o.seed, "Seed for approximations that do not fix their own");
  cmd->add_flag("--quiet", o.quiet, "Only print the summary line");
  cmd->add_flag("--dump-config", o.dump_config, "Print the effective configuration and exit");
}

fr::RunConfig load(const CommonOptions& o) {
  fr::RunConfig cfg = o.config.empty() ? fr::default_suite_config(o.seed.value_or(1)) : fr::load_config(o.config);
  if (!o.config.empty() && o.seed) cfg.default_seed = *o.seed;
  if (o.quad_order > 0) cfg.quadrature.space_order = cfg.quadrature.time_order = o.quad_order;
  if (!o.formats.empty()) {
    cfg.output.formats.clear();
    for (const auto& f : o.formats) cfg.output.formats.push_back(fr::format_from_string(f));
  }
  return cfg;
}

std::filesystem::path output_dir(const CommonOptions& o, const fr::RunConfig& cfg) {
  if (!o.out.empty()) return o.out;
  if (cfg.output.dir) return *cfg.output.dir;
  if (const char* env = std::getenv("FUNCERR_OUT_DIR"); env && *env) return env;
  return "funcerr-out";
}

template <class Pred>
void keep_estimators(fr::RunConfig& cfg, Pred keep, const char* what) {
  std::vector<fr::EstimatorSpec> kept;
  for (auto& e : cfg.estimators)
    if (keep(e)) kept.push_back(std::move(e));
  if (kept.empty()) throw fr::ConfigError(std::string("configuration declares no ") + what + " estimators");
  cfg.estimators = std::move(kept);
}

std::string describe(const fr::Record& r) {
  std::ostringstream s;
  s << r.case_name;
  if (r.approximation) s << " / " << r.approximation->name;
  s << " / " << r.estimator;
  if (r.error) {
    s << ": error: " << *r.error;
  } else if (r.equality) {
    s << ": rel_residual " << r.equality->rel_residual;
  } else if (r.bound) {
    s << ": lower " << r.bound->lower_bound << " true " << r.bound->true_error << " upper " << r.bound->upper_bound;
  }
  return s.str();
}

int execute(const CommonOptions& o, fr::RunConfig cfg) {
  if (o.dump_config) {
    std::cout << fr::config_to_json(cfg);
    return 0;
  }
  const auto report = fr::run(cfg);
  const auto dir = output_dir(o, cfg);
  const auto paths = fr::emit(report, dir, cfg.output.formats, cfg.output.stem);
  if (!o.quiet) {
    int shown = 0;
    for (const auto& r : report.records) {
      if (r.passed) continue;
      if (++shown > 20) {
        std::cout << "...\n";
        break;
      }
      std::cout << (r.error ? "ERROR " : "FAIL  ") << describe(r) << "\n";
    }
    for (const auto& p : paths) std::cout << "wrote " << p.string() << "\n";
  }
  std::cout << "records " << report.records.size() << ", failures " << report.failures() << ", errors "
            << report.errors() << "\n";
  return report.exit_code();
}

int friedrichs(const std::vector<double>& lower, const std::vector<double>& upper, const std::string& config) {
  std::vector<std::pair<std::string, funcerr::BoxDomain>> boxes;
  if (!config.empty()) {
    for (const auto& c : fr::load_config(config).cases)
      boxes.emplace_back(c.name, funcerr::BoxDomain(c.lower, c.upper));
  } else {
    if (lower.size() != upper.size()) throw fr::ConfigError("--lower and --upper need the same length");
    boxes.emplace_back("box", funcerr::BoxDomain(lower, upper));
  }
  std::printf("%-12s %-22s %-22s %-22s\n", "domain", "c_f", "cf_margin", "cftwo_margin");
  for (const auto& [name, dom] : boxes) {
    const auto cf = funcerr::elliptic::friedrichs_constant(dom);
    const std::vector<int> ones(dom.dim(), 1);
    const auto w = funcerr::mms::sine_mode(dom, ones).field();
    std::printf("%-12s %-22.17g %-22.17g %-22.17g\n", name.c_str(), cf.value,
                funcerr::elliptic::cf_check(w, dom, cf), funcerr::elliptic::cftwo_check(w, dom, cf));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional a posteriori error identities and bounds on manufactured solutions"};
  app.require_subcommand(1);

  CommonOptions eq_opts, bd_opts, opt_opts, suite_opts;
  auto* eq = app.add_subcommand("verify-equality", "Run the error identities and isometries");
  add_common(eq, eq_opts);
  auto* bd = app.add_subcommand("verify-bounds", "Run the two-sided and non-conforming bounds");
  add_common(bd, bd_opts);
  auto* om = app.add_subcommand("optimize-majorant", "Enrich the flux basis and tighten the majorant");
  add_common(om, opt_opts);
  int budget = 0;
  om->add_option("--budget", budget, "Enrichment steps (overrides the configuration)")->check(CLI::Range(1, 16));
  auto* su = app.add_subcommand("suite", "Run every estimator of the configuration (default: built-in suite)");
  add_common(su, suite_opts);

  auto* fc = app.add_subcommand("friedrichs", "Friedrichs constant of a box and its saturation margins");
  std::vector<double> lower{0.0}, upper{1.0};
  std::string fc_config;
  fc->add_option("--lower", lower, "Lower corner")->delimiter(',');
  fc->add_option("--upper", upper, "Upper corner")->delimiter(',');
  fc->add_option("--config", fc_config, "Report every case domain of this configuration")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eq->parsed()) {
      auto cfg = load(eq_opts);
      keep_estimators(cfg, [](const fr::EstimatorSpec& e) { return fr::is_equality_estimator(e.name); }, "equality");
      return execute(eq_opts, std::move(cfg));
    }
    if (bd->parsed()) {
      auto cfg = load(bd_opts);
      keep_estimators(
          cfg,
          [](const fr::EstimatorSpec& e) { return !fr::is_equality_estimator(e.name) && e.name != "optimize_majorant"; },
          "bound");
      return execute(bd_opts, std::move(cfg));
    }
    if (om->parsed()) {
      auto cfg = load(opt_opts);
      keep_estimators(cfg, [](const fr::EstimatorSpec& e) { return e.name == "optimize_majorant"; }, "optimize_majorant");
      if (budget > 0)
        for (auto& e : cfg.estimators) e.budget = budget;
      return execute(opt_opts, std::move(cfg));
    }
    if (su->parsed()) return execute(suite_opts, load(suite_opts));
    if (fc->parsed()) return friedrichs(lower, upper, fc_config);
  } catch (const fr::ConfigError& e) {
    std::cerr << "funcerr: " << e.what() << "\n";
    return kUsageError;
  } catch (const funcerr::Error& e) {
    std::cerr << "funcerr: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
