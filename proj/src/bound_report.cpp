#include "helmholtz/bound_report.hpp"

#include <cmath>

#include "json.hpp"

namespace helmholtz {

namespace {

nlohmann::json log_or_null(const ScaledValue& v) {
  if (v.is_zero()) return nullptr;
  return v.log_abs();
}

}  // namespace

BoundReport make_le_report(std::string kind, std::vector<std::pair<std::string, double>> params, ScaledValue lhs,
                           ScaledValue rhs, double rel_slack) {
  BoundReport r;
  r.kind = std::move(kind);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  const ScaledValue allowance = rhs + rhs.abs() * rel_slack;
  r.verdict = lhs <= allowance;
  r.margin = rhs.is_zero() ? (lhs.is_zero() ? 0.0 : -std::copysign(1.0, lhs.to_double()))
                           : ((rhs - lhs) / rhs.abs()).to_double();
  return r;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  nlohmann::json j;
  j["kind"] = report.kind;
  j["params"] = params;
  j["lhs_log"] = log_or_null(report.lhs);
  j["rhs_log"] = log_or_null(report.rhs);
  j["lhs_sign"] = report.lhs.sign();
  j["rhs_sign"] = report.rhs.sign();
  j["margin"] = report.margin;
  j["verdict"] = report.verdict ? "pass" : "fail";
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

}  // namespace helmholtz
