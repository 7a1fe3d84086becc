#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sphgof/distributions.hpp"
#include "sphgof/estimators.hpp"
#include "sphgof/kernels.hpp"
#include "sphgof/resampling.hpp"

namespace sphgof {

struct ScenarioSpec {
  std::string label;
  DistributionSpec distribution;  // data-generating law for X
};

// One Monte Carlo power study: every scenario is crossed with every kernel
// and every artificial-sample size, and each combination runs `replications`
// independent tests.  Exactly one of {simple null, composite family} applies:
// when composite_family is set the study runs the parametric-bootstrap test
// and null_spec is ignored.
struct ExperimentSpec {
  std::string name = "experiment";
  DistributionSpec null_spec = UniformSpec{3};
  std::optional<FitFamily> composite_family;
  std::vector<ScenarioSpec> scenarios;
  std::vector<KernelSpec> kernels;
  std::size_t n = 50;
  std::vector<std::size_t> artificial_sizes = {500};  // m values (sweepable)
  std::size_t b = 199;
  double alpha = 0.05;
  std::size_t replications = 1000;
  ResamplingMethod method = ResamplingMethod::bootstrap;
  std::uint64_t seed = 0;
};

struct PowerRow {
  std::string scenario;
  std::string kernel;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t b = 0;
  double alpha = 0.0;
  std::size_t replications = 0;
  std::size_t rejections = 0;
  std::size_t failures = 0;  // tests lost to numerical errors (normally 0)
  double rate = 0.0;         // rejections / replications
  double mc_se = 0.0;        // sqrt(rate * (1 - rate) / replications)
};

struct PowerTable {
  std::string name;
  std::vector<PowerRow> rows;
};

// Invoked after each completed (scenario x kernel x m) combination so
// callers can flush partial results; may be empty.
using RowCallback = std::function<void(const PowerRow&)>;

// Runs the full study.  Rejection counts are exact integers accumulated
// independently per replication from its own seed substream, so the table is
// identical across runs and thread counts.
PowerTable run_power_study(const ExperimentSpec& spec,
                           const RowCallback& on_row = {});

}  // namespace sphgof
