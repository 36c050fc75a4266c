#pragma once

#include <optional>
#include <string>
#include <vector>

namespace funcerr {

struct NamedValue {
  std::string name;
  double value = 0.0;
};

double sum_of(const std::vector<NamedValue>& values);
/// Value of the entry called `name`; throws ContractError when absent.
double value_of(const std::vector<NamedValue>& values, const std::string& name);

inline constexpr double kRelativeFloor = 1e-14;

/// Both sides of an error equality (or isometry), component-wise.
struct EqualityReport {
  std::string identity;
  std::vector<NamedValue> lhs_components;
  std::vector<NamedValue> rhs_components;
  double lhs_total = 0.0;
  double rhs_total = 0.0;
  /// |lhs − rhs| / max(lhs, rhs, 1e-14)
  double rel_residual = 0.0;
  /// Diagnostics that are not part of either side (cross-checks, unsquared forms).
  std::vector<NamedValue> extras;

  static EqualityReport make(std::string identity, std::vector<NamedValue> lhs, std::vector<NamedValue> rhs,
                             std::vector<NamedValue> extras = {});
};

/// Guaranteed bounds around a computed true error.
struct BoundReport {
  std::string estimate;
  std::vector<NamedValue> lower_bounds;  ///< every lower candidate; may be empty
  std::vector<NamedValue> true_components;
  double true_error = 0.0;               ///< sum of true_components
  double lower_bound = 0.0;              ///< max of lower_bounds (0 when none)
  double upper_bound = 0.0;
  std::optional<double> gamma;
  std::optional<double> efficiency_upper;  ///< upper / true, absent when true == 0
  std::optional<double> efficiency_lower;
  std::vector<NamedValue> extras;

  static BoundReport make(std::string estimate, std::vector<NamedValue> lower, std::vector<NamedValue> true_components,
                          double upper, std::optional<double> gamma = std::nullopt,
                          std::vector<NamedValue> extras = {});

  /// lower − slack ≤ true ≤ upper + slack, checked for every lower candidate.
  bool ordered(double slack) const;
};

}  // namespace funcerr
