#include "sphgof/spec_json.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sphgof/errors.hpp"

namespace sphgof {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const char* context) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidConfigError(std::string(context) + ": missing key '" + key +
                             "'");
  }
  return *it;
}

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

UnitVector direction_from_json(const json& j, std::size_t d) {
  if (j.is_string()) {
    return named_direction(j.get<std::string>(), d);
  }
  if (j.is_array()) {
    std::vector<double> v = j.get<std::vector<double>>();
    return UnitVector(std::move(v));
  }
  throw InvalidConfigError(
      "direction must be a coordinate array or a named-direction string");
}

// Dimension implied by a direction value, if any.
std::size_t direction_dim(const json& j, std::size_t fallback) {
  if (j.is_array()) {
    return j.size();
  }
  return fallback;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* context) {
  if (!j.is_array() || j.empty()) {
    throw InvalidConfigError(std::string(context) +
                             ": expected a nonempty array of rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) {
    throw InvalidConfigError(std::string(context) +
                             ": rows must be nonempty arrays");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != cols) {
      throw InvalidConfigError(std::string(context) + ": row " +
                               std::to_string(r) + " has wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          row.at(c).get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(row);
  }
  return rows;
}

DistributionSpec distribution_from_json_checked(const json& j) {
  if (!j.is_object()) {
    throw InvalidConfigError("distribution must be a JSON object");
  }
  const std::string family =
      to_lower(require(j, "family", "distribution").get<std::string>());
  const auto default_d = j.value("d", std::size_t{3});

  if (family == "uniform") {
    return make_uniform(default_d);
  }
  if (family == "vmf") {
    const json& theta = require(j, "theta", "vmf distribution");
    const std::size_t d = direction_dim(theta, default_d);
    return make_vmf(direction_from_json(theta, d),
                    require(j, "kappa", "vmf distribution").get<double>());
  }
  if (family == "vmf-mixture") {
    const auto weights = require(j, "weights", "vmf-mixture")
                             .get<std::vector<double>>();
    const json& dirs = require(j, "directions", "vmf-mixture");
    const auto kappas =
        require(j, "kappas", "vmf-mixture").get<std::vector<double>>();
    if (!dirs.is_array() || dirs.size() != weights.size() ||
        kappas.size() != weights.size()) {
      throw InvalidConfigError(
          "vmf-mixture: weights, directions, and kappas must be arrays of "
          "one common length");
    }
    std::size_t d = default_d;
    for (const auto& dir : dirs) {
      d = direction_dim(dir, d);
    }
    std::vector<VmfSpec> components;
    components.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      components.push_back(
          VmfSpec{direction_from_json(dirs.at(i), d), kappas.at(i)});
    }
    return make_vmf_mixture(weights, std::move(components));
  }
  if (family == "acg") {
    if (j.contains("preset")) {
      const std::string preset = to_lower(j.at("preset").get<std::string>());
      if (preset.size() == 4 && preset.compare(0, 3, "acg") == 0 &&
          preset[3] >= '0' && preset[3] <= '4') {
        return acg_scenario(static_cast<std::size_t>(preset[3] - '0'));
      }
      throw InvalidConfigError("unknown acg preset '" +
                               j.at("preset").get<std::string>() +
                               "'; expected ACG0..ACG4");
    }
    return make_acg(matrix_from_json(require(j, "sigma", "acg distribution"),
                                     "acg sigma"));
  }
  if (family == "kent") {
    Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
    if (j.contains("axes")) {
      const Eigen::MatrixXd m = matrix_from_json(j.at("axes"), "kent axes");
      if (m.rows() != 3 || m.cols() != 3) {
        throw InvalidConfigError("kent axes must be a 3x3 matrix");
      }
      axes = m;
    }
    // The relaxed factory accepts overdispersed (2 beta >= kappa) values so
    // that serialized unconstrained fits round-trip.
    return make_kent_relaxed(require(j, "kappa", "kent distribution").get<double>(),
                             require(j, "beta", "kent distribution").get<double>(),
                             axes);
  }
  throw InvalidConfigError("unknown distribution family '" + family +
                           "'; expected uniform, vmf, vmf-mixture, acg, or "
                           "kent");
}

KernelSpec kernel_from_json_checked(const json& j) {
  if (!j.is_object()) {
    throw InvalidConfigError("kernel must be a JSON object");
  }
  const std::string type =
      to_lower(require(j, "type", "kernel").get<std::string>());
  if (type == "stable") {
    return KernelSpec::stable(require(j, "gamma", "stable kernel").get<double>(),
                              j.value("xi", 2.0));
  }
  if (type == "energy") {
    return KernelSpec::energy(require(j, "a", "energy kernel").get<double>());
  }
  throw InvalidConfigError("unknown kernel type '" + type +
                           "'; expected stable or energy");
}

ExperimentSpec experiment_from_json_checked(const json& j) {
  if (!j.is_object()) {
    throw InvalidConfigError("experiment must be a JSON object");
  }
  ExperimentSpec spec;
  spec.name = j.value("name", std::string("experiment"));
  if (j.contains("family") && j.contains("null")) {
    throw InvalidConfigError(
        "experiment: give either 'null' (simple test) or 'family' "
        "(composite test), not both");
  }
  if (j.contains("family")) {
    spec.composite_family = parse_fit_family(j.at("family").get<std::string>());
  } else if (j.contains("null")) {
    spec.null_spec = distribution_from_json_checked(j.at("null"));
  }
  const json& scenarios = require(j, "scenarios", "experiment");
  if (!scenarios.is_array() || scenarios.empty()) {
    throw InvalidConfigError("experiment: 'scenarios' must be a nonempty array");
  }
  for (const auto& s : scenarios) {
    ScenarioSpec scenario;
    scenario.label = require(s, "label", "scenario").get<std::string>();
    scenario.distribution =
        distribution_from_json_checked(require(s, "distribution", "scenario"));
    spec.scenarios.push_back(std::move(scenario));
  }
  const json& kernels = require(j, "kernels", "experiment");
  if (!kernels.is_array() || kernels.empty()) {
    throw InvalidConfigError("experiment: 'kernels' must be a nonempty array");
  }
  for (const auto& k : kernels) {
    spec.kernels.push_back(kernel_from_json_checked(k));
  }
  spec.n = j.value("n", std::size_t{50});
  if (j.contains("m")) {
    const json& m = j.at("m");
    if (m.is_array()) {
      spec.artificial_sizes = m.get<std::vector<std::size_t>>();
    } else {
      spec.artificial_sizes = {m.get<std::size_t>()};
    }
  }
  spec.b = j.value("b", std::size_t{199});
  spec.alpha = j.value("alpha", 0.05);
  spec.replications = j.value("replications", std::size_t{1000});
  if (j.contains("method")) {
    spec.method = parse_resampling_method(j.at("method").get<std::string>());
  }
  spec.seed = j.value("seed", std::uint64_t{0});
  return spec;
}

// Wraps nlohmann type errors (wrong JSON value kinds) in the library's
// config error so CLI exit codes stay uniform.
template <class Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InvalidConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

UnitVector named_direction(const std::string& name, std::size_t d) {
  std::string base = name;
  double sign = 1.0;
  if (!base.empty() && base.front() == '-') {
    sign = -1.0;
    base.erase(base.begin());
  }
  if (d < 2) {
    throw InvalidConfigError("named direction needs dimension d >= 2");
  }
  std::vector<double> v(d, 0.0);
  if (base == "mu1") {
    v[0] = 1.0;
  } else if (base == "ones") {
    std::fill(v.begin(), v.end(), 1.0 / std::sqrt(static_cast<double>(d)));
  } else if (base == "mu2") {
    std::fill(v.begin(), v.end(), 1.0 / std::sqrt(static_cast<double>(d)));
    v[0] = -v[0];
  } else {
    throw InvalidConfigError("unknown named direction '" + name +
                             "'; expected mu1, ones, or mu2 (optionally "
                             "'-'-prefixed)");
  }
  if (sign < 0.0) {
    for (double& c : v) {
      c = -c;
    }
  }
  return normalize(v);
}

DistributionSpec acg_scenario(std::size_t level) {
  if (level > 4) {
    throw InvalidConfigError("acg scenario level must be 0..4; got " +
                             std::to_string(level));
  }
  if (level == 0) {
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(3, 3);
    sigma.diagonal() << 1.0, 2.0, 3.0;
    return make_acg(sigma);
  }
  static constexpr double kBase[3][3] = {{-0.846, -0.531, -0.779},
                                         {0.609, -0.096, 0.761},
                                         {0.851, 0.133, -0.666}};
  Eigen::Matrix3d powered;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      powered(r, c) = std::pow(kBase[r][c], static_cast<double>(level));
    }
  }
  return make_acg(powered.transpose() * powered);
}

nlohmann::json to_json(const DistributionSpec& spec) {
  json j;
  j["family"] = family_name(spec);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformSpec>) {
          j["d"] = s.d;
        } else if constexpr (std::is_same_v<T, VmfSpec>) {
          j["theta"] = s.theta.coords();
          j["kappa"] = s.kappa;
        } else if constexpr (std::is_same_v<T, VmfMixtureSpec>) {
          j["weights"] = s.weights;
          json dirs = json::array();
          json kappas = json::array();
          for (const auto& comp : s.components) {
            dirs.push_back(comp.theta.coords());
            kappas.push_back(comp.kappa);
          }
          j["directions"] = std::move(dirs);
          j["kappas"] = std::move(kappas);
        } else if constexpr (std::is_same_v<T, AcgSpec>) {
          j["sigma"] = matrix_to_json(s.sigma);
        } else {
          j["kappa"] = s.kappa;
          j["beta"] = s.beta;
          j["axes"] = matrix_to_json(s.axes);
          j["unimodal"] = s.unimodal();
        }
      },
      spec);
  return j;
}

DistributionSpec distribution_from_json(const nlohmann::json& j) {
  return guarded("distribution", [&] { return distribution_from_json_checked(j); });
}

nlohmann::json to_json(const KernelSpec& kernel) {
  json j;
  if (kernel.is_stable()) {
    j["type"] = "stable";
    j["gamma"] = kernel.as_stable().gamma;
    j["xi"] = kernel.as_stable().xi;
  } else {
    j["type"] = "energy";
    j["a"] = kernel.as_energy().a;
  }
  return j;
}

KernelSpec kernel_from_json(const nlohmann::json& j) {
  return guarded("kernel", [&] { return kernel_from_json_checked(j); });
}

ExperimentSpec experiment_from_json(const nlohmann::json& j) {
  return guarded("experiment", [&] { return experiment_from_json_checked(j); });
}

ExperimentSpec load_experiment(const std::string& path) {
  return experiment_from_json(load_json_file(path));
}

nlohmann::json parse_json_text(const std::string& text,
                               const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

}  // namespace sphgof
