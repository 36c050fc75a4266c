#include "funcerr/reports.hpp"

#include <algorithm>
#include <cmath>

#include "funcerr/error.hpp"
#include "funcerr/quadrature.hpp"

namespace funcerr {

double sum_of(const std::vector<NamedValue>& values) {
  CompensatedSum s;
  for (const auto& v : values) s.add(v.value);
  return s.value();
}

double value_of(const std::vector<NamedValue>& values, const std::string& name) {
  for (const auto& v : values)
    if (v.name == name) return v.value;
  throw ContractError("no entry named '" + name + "'");
}

EqualityReport EqualityReport::make(std::string identity, std::vector<NamedValue> lhs, std::vector<NamedValue> rhs,
                                    std::vector<NamedValue> extras) {
  EqualityReport r;
  r.identity = std::move(identity);
  r.lhs_components = std::move(lhs);
  r.rhs_components = std::move(rhs);
  r.extras = std::move(extras);
  r.lhs_total = sum_of(r.lhs_components);
  r.rhs_total = sum_of(r.rhs_components);
  r.rel_residual = std::abs(r.lhs_total - r.rhs_total) /
                   std::max({std::abs(r.lhs_total), std::abs(r.rhs_total), kRelativeFloor});
  return r;
}

BoundReport BoundReport::make(std::string estimate, std::vector<NamedValue> lower,
                              std::vector<NamedValue> true_components, double upper, std::optional<double> gamma,
                              std::vector<NamedValue> extras) {
  BoundReport r;
  r.estimate = std::move(estimate);
  r.lower_bounds = std::move(lower);
  r.true_components = std::move(true_components);
  r.true_error = sum_of(r.true_components);
  for (const auto& l : r.lower_bounds) r.lower_bound = std::max(r.lower_bound, l.value);
  r.upper_bound = upper;
  r.gamma = gamma;
  r.extras = std::move(extras);
  if (r.true_error > 0.0) {
    r.efficiency_upper = r.upper_bound / r.true_error;
    r.efficiency_lower = r.lower_bound / r.true_error;
  }
  return r;
}

bool BoundReport::ordered(double slack) const {
  if (!(true_error <= upper_bound + slack)) return false;
  return std::all_of(lower_bounds.begin(), lower_bounds.end(),
                     [&](const NamedValue& l) { return l.value - slack <= true_error; });
}

}  // namespace funcerr
