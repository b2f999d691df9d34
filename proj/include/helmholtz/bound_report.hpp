#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "helmholtz/scaled_value.hpp"

namespace helmholtz {

/// Outcome of one inequality check lhs <= rhs.
struct BoundReport {
  std::string kind;
  std::vector<std::pair<std::string, double>> params;  ///< echo of inputs, in insertion order
  ScaledValue lhs;
  ScaledValue rhs;
  double margin = 0.0;  ///< relative slack (rhs - lhs) / |rhs|, or a check-specific clearance
  bool verdict = false;
  std::string note;
};

/// verdict = lhs <= rhs * (1 + rel_slack); margin = (rhs - lhs) / |rhs|.
BoundReport make_le_report(std::string kind, std::vector<std::pair<std::string, double>> params, ScaledValue lhs,
                           ScaledValue rhs, double rel_slack = 1e-12);

/// {kind, params, lhs_log, rhs_log, margin, verdict}; logs of zero are null.
nlohmann::json to_json(const BoundReport& report);

}  // namespace helmholtz
