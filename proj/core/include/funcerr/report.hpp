#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "funcerr/error.hpp"
#include "funcerr/manufactured.hpp"
#include "funcerr/quadrature.hpp"
#include "funcerr/reports.hpp"

namespace funcerr::report {

inline constexpr int kSchemaVersion = 1;

/// Malformed or semantically invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct CaseSpec {
  std::string name;
  mms::ProblemKind kind = mms::ProblemKind::ReactionDiffusion;
  std::vector<double> lower;
  std::vector<double> upper;
  std::optional<double> horizon;            ///< T, parabolic kinds only
  std::vector<mms::SeparableTerm> solution;
  double source_scale = 1.0;                ///< f is multiplied by this after manufacturing

  mms::ProblemCase build() const;
};

struct ApproximationSpec {
  std::string name;
  mms::ConformityLevel level = mms::ConformityLevel::ConformingMixed;
  double epsilon = 0.0;
  std::optional<std::uint64_t> seed;  ///< falls back to RunConfig::default_seed
};

struct EstimatorSpec {
  std::string name;
  std::optional<double> gamma;
  std::optional<std::string> part;
  std::optional<mms::FreeFieldStrategy> free_fields;
  std::optional<double> omega;
  std::optional<double> friedrichs;  ///< overrides the closed-form box constant
  std::optional<int> budget;
  bool reoptimize = false;
  std::vector<std::string> cases;    ///< empty: every case
  std::vector<mms::ConformityLevel> levels;  ///< empty: every approximation
};

struct Tolerances {
  double equality_rel = 1e-8;
  double bound_slack = 1e-9;
};

enum class Format { Json, Csv, PlotData };
const char* to_string(Format f);
Format format_from_string(const std::string& name);

struct OutputSpec {
  std::optional<std::string> dir;
  std::string stem = "report";
  std::vector<Format> formats{Format::Json};
  bool include_timing = false;
};

struct QuadratureSpec {
  int space_order = QuadratureRule::kDefaultOrder;
  int time_order = QuadratureRule::kDefaultOrder;
  int space_cells = 1;
  int time_cells = 1;

  QuadratureRule rule() const { return {space_order, time_order, space_cells, time_cells}; }
};

struct RunConfig {
  std::vector<CaseSpec> cases;
  std::vector<ApproximationSpec> approximations;
  std::vector<EstimatorSpec> estimators;
  QuadratureSpec quadrature;
  Tolerances tolerances;
  OutputSpec output;
  std::uint64_t default_seed = 1;
};

/// Strict parse: unknown keys are rejected, errors carry line/column or the offending entry.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
/// Throws ConfigError when an estimator cannot be applied to a case or approximation it is paired with.
void validate(const RunConfig& config);
std::string config_to_json(const RunConfig& config);

/// Kinds an estimator accepts, and whether it consumes an approximation.
bool is_known_estimator(const std::string& name);
bool is_equality_estimator(const std::string& name);
bool uses_approximation(const std::string& name);

/// Four kinds, ten cases each, ε ∈ {0.01, 0.1, 1} with ten seeds per level.
RunConfig default_suite_config(std::uint64_t base_seed = 1);

struct Record {
  std::string case_name;
  mms::ProblemKind kind = mms::ProblemKind::ReactionDiffusion;
  std::optional<ApproximationSpec> approximation;  ///< seed always resolved
  std::string estimator;
  std::optional<EqualityReport> equality;
  std::optional<BoundReport> bound;
  std::optional<std::string> error;
  bool passed = false;
  std::optional<double> wall_time;  ///< seconds; only when timing is requested
};

struct RunReport {
  int schema_version = kSchemaVersion;
  Tolerances tolerances;
  std::vector<Record> records;

  int failures() const;  ///< equality residual or ordering violations
  int errors() const;    ///< records that threw
  /// 0 all verified, 1 some verification failed, 3 no failure but some record errored.
  int exit_code() const;
};

RunReport run(const RunConfig& config);

std::string to_json(const RunReport& report);
std::string to_csv(const RunReport& report);
std::string to_plotdata(const RunReport& report);
RunReport report_from_json(const std::string& text);

/// Writes `<stem>.json|.csv|.dat` into dir; returns the written paths.
std::vector<std::filesystem::path> emit(const RunReport& report, const std::filesystem::path& dir,
                                        const std::vector<Format>& formats, const std::string& stem = "report");

}  // namespace funcerr::report
