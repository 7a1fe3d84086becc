#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphgof/estimators.hpp"
#include "sphgof/resampling.hpp"

namespace sphgof {

// Declination/inclination archive analysis: ingest, optional exact-age
// subsetting, one parametric fit, and a composite test per kernel scale.
struct RealDataConfig {
  std::string csv_path;
  std::optional<double> age_filter;
  FitFamily family = FitFamily::vmf;
  std::vector<double> gammas = {0.1, 0.5, 0.75, 1.0, 2.0, 3.0};
  double xi = 2.0;  // exponent of the stable kernel used at every gamma
  std::size_t m = 500;
  std::size_t b = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 20260816;
};

struct RealDataRow {
  double gamma = 0.0;
  double statistic = 0.0;
  double critical_value = 0.0;
  double p_value = 0.0;
  bool reject = false;
};

struct RealDataAnalysis {
  std::size_t records_total = 0;  // rows in the file
  std::size_t n = 0;              // rows analyzed (after any age filter)
  FitFamily family = FitFamily::vmf;
  FitResult fitted;               // fit of `family` to the analyzed sample
  std::vector<RealDataRow> rows;  // one per gamma, in config order
};

RealDataAnalysis run_real_data_analysis(const RealDataConfig& config);

std::string to_csv(const RealDataAnalysis& analysis);
std::string to_json_text(const RealDataAnalysis& analysis);

}  // namespace sphgof
