#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace heun::cli {

struct CheckReport {
  std::string check_id;
  int draw = 0;
  std::vector<std::pair<std::string, double>> params;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// "passed", "failed", "passed-degenerate" or "error".
  std::string status;
  std::string message;  // set for "error"
  double runtime_ms = 0.0;
};

/// runtime_ms is included only when timing is requested, so that seeded runs
/// are byte-identical.
nlohmann::ordered_json report_json(const CheckReport& r, bool timing);
std::string report_csv_header(bool timing);
std::string report_csv(const CheckReport& r, bool timing);

/// "%.17g".
std::string format_double(double v);

}  // namespace heun::cli
