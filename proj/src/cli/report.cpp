#include "heun/cli/report.hpp"

#include <cstdio>

namespace heun::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json report_json(const CheckReport& r, bool timing) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["draw"] = r.draw;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = std::move(params);
  j["max_abs_error"] = r.max_abs_error;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["status"] = r.status;
  if (!r.message.empty()) j["message"] = r.message;
  if (timing) j["runtime_ms"] = r.runtime_ms;
  return j;
}

std::string report_csv_header(bool timing) {
  return timing ? "check_id,draw,max_abs_error,tolerance,passed,status,runtime_ms"
                : "check_id,draw,max_abs_error,tolerance,passed,status";
}

std::string report_csv(const CheckReport& r, bool timing) {
  std::string s = r.check_id + "," + std::to_string(r.draw) + "," + format_double(r.max_abs_error) + "," +
                  format_double(r.tolerance) + "," + (r.passed ? "true" : "false") + "," + r.status;
  if (timing) s += "," + format_double(r.runtime_ms);
  return s;
}

}  // namespace heun::cli
