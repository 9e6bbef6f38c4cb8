#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

namespace capkit {

enum class ReportStatus { Holds, Violated, Trivial };

inline const char* report_status_name(ReportStatus s) {
  switch (s) {
    case ReportStatus::Holds: return "holds";
    case ReportStatus::Violated: return "violated";
    case ReportStatus::Trivial: return "trivial";
  }
  return "?";
}

// Outcome of a single checked identity or inequality.  slack = lhs - rhs;
// an inequality lhs >= rhs holds when slack >= -tolerance * max(1, |rhs|),
// an identity when |slack| <= tolerance * max(1, |rhs|).
struct BoundReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  double tolerance = 0;
  ReportStatus status = ReportStatus::Trivial;
  std::string detail;

  nlohmann::json to_json() const {
    nlohmann::json j{{"name", name},         {"lhs", lhs},
                     {"rhs", rhs},           {"slack", slack},
                     {"tolerance", tolerance},
                     {"status", report_status_name(status)}};
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

inline BoundReport make_inequality_report(std::string name, double lhs,
                                          double rhs, double tol,
                                          std::string detail = {}) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.tolerance = tol;
  r.status = r.slack >= -tol * std::max(1.0, std::fabs(rhs))
                 ? ReportStatus::Holds
                 : ReportStatus::Violated;
  r.detail = std::move(detail);
  return r;
}

inline BoundReport make_identity_report(std::string name, double lhs,
                                        double rhs, double tol,
                                        std::string detail = {}) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.tolerance = tol;
  r.status = std::fabs(r.slack) <= tol * std::max(1.0, std::fabs(rhs))
                 ? ReportStatus::Holds
                 : ReportStatus::Violated;
  r.detail = std::move(detail);
  return r;
}

inline BoundReport make_trivial_report(std::string name, std::string detail) {
  BoundReport r;
  r.name = std::move(name);
  r.status = ReportStatus::Trivial;
  r.detail = std::move(detail);
  return r;
}

}  // namespace capkit
