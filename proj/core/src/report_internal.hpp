#pragma once

#include <string>
#include <vector>

#include "funcerr/report.hpp"

namespace funcerr::report::detail {

struct EstimatorInfo {
  std::string name;
  std::vector<mms::ProblemKind> kinds;
  bool equality = false;
  bool uses_approximation = true;
  std::vector<std::string> params;  ///< optional keys beyond name/cases/levels
};

const std::vector<EstimatorInfo>& estimator_table();
const EstimatorInfo* find_estimator(const std::string& name);

/// Empty string when compatible, otherwise the reason.
std::string level_mismatch(const EstimatorSpec& e, mms::ConformityLevel level);

std::string json_number_text(double v);

}  // namespace funcerr::report::detail
