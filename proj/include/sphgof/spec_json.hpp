#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"
#include "sphgof/distributions.hpp"
#include "sphgof/experiment.hpp"
#include "sphgof/kernels.hpp"

namespace sphgof {

// Built-in named directions, resolvable in any dimension d >= 2:
//   "mu1"  -> (1, 0, ..., 0)
//   "ones" -> (1, ..., 1)/sqrt(d)
//   "mu2"  -> (-1, 1, ..., 1)/sqrt(d)
// A leading '-' negates the vector ("-mu1").
UnitVector named_direction(const std::string& name, std::size_t d);

// Preset shape matrices for angular central Gaussian scenarios: level 0 is
// diag(1, 2, 3); levels 1..4 use sigma_l = (A^l)' (A^l), where A^l raises
// each entry of a fixed 3x3 matrix to the l-th power elementwise.
DistributionSpec acg_scenario(std::size_t level);

// JSON forms:
//   direction: [x, y, ...] or a named-direction string
//   distribution:
//     {"family":"uniform","d":3}
//     {"family":"vmf","theta":direction,"kappa":k,"d":d}
//     {"family":"vmf-mixture","weights":[...],"directions":[direction,...],
//      "kappas":[...],"d":d}
//     {"family":"acg","sigma":[[...],...]}  or  {"family":"acg","preset":"ACG2"}
//     {"family":"kent","kappa":k,"beta":b,"axes":[[row],[row],[row]]}
//   ("d" defaults to 3 and is needed only when no coordinate array pins it;
//    kent "axes" defaults to the identity.)
nlohmann::json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const nlohmann::json& j);

//   kernel: {"type":"stable","gamma":g,"xi":x}  or  {"type":"energy","a":a}
nlohmann::json to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(const nlohmann::json& j);

// Experiment documents:
//   {"name":..., "null":distribution  (simple test; default uniform d=3)
//    or "family":"vmf"|"acg"|"kent"   (composite test),
//    "scenarios":[{"label":...,"distribution":...},...],
//    "kernels":[kernel,...], "n":50, "m":500 or [m1,m2,...], "b":199,
//    "alpha":0.05, "replications":1000,
//    "method":"bootstrap"|"permutation", "seed":0}
ExperimentSpec experiment_from_json(const nlohmann::json& j);
ExperimentSpec load_experiment(const std::string& path);

// Parses a JSON document, mapping syntax failures to ParseError; `origin`
// names the source in messages (a path or "<inline>").
nlohmann::json parse_json_text(const std::string& text,
                               const std::string& origin);
nlohmann::json load_json_file(const std::string& path);

}  // namespace sphgof
