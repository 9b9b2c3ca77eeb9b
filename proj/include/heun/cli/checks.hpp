#pragma once

// Randomized identity-check suites behind `heun identity-check`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "heun/cli/report.hpp"

namespace heun::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  double precision_tol = 1e-12;
  int quad_order = 64;
  int series_nmax = 400;
  OutputFormat output_format = OutputFormat::Json;

  /// Throws DomainError unless all fields are positive and series_nmax ≥ 16.
  void validate() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// One report per draw, in draw order. Deterministic in (suite, seed, draws).
std::vector<CheckReport> run_suite(std::string_view suite, std::uint64_t seed, int draws,
                                   const RunConfig& cfg);

}  // namespace heun::cli
