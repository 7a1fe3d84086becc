#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "sphgof/errors.hpp"
#include "sphgof/experiment.hpp"
#include "sphgof/geomagia.hpp"
#include "sphgof/real_data.hpp"
#include "sphgof/report.hpp"
#include "sphgof/resampling.hpp"
#include "sphgof/samplers.hpp"
#include "sphgof/spec_json.hpp"

namespace {

struct KernelFlags {
  std::string type = "stable";
  double gamma = 1.0;
  double xi = 2.0;
  double a = 1.0;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& flags) {
  cmd->add_option("--kernel", flags.type, "Kernel family")
      ->check(CLI::IsMember({"stable", "energy"}))
      ->capture_default_str();
  cmd->add_option("--gamma", flags.gamma, "Stable kernel scale (> 0)")
      ->capture_default_str();
  cmd->add_option("--xi", flags.xi, "Stable kernel exponent in (0, 2]")
      ->capture_default_str();
  cmd->add_option("--a", flags.a, "Energy kernel exponent in (0, 2)")
      ->capture_default_str();
}

sphgof::KernelSpec kernel_from_flags(const KernelFlags& flags) {
  if (flags.type == "stable") {
    return sphgof::KernelSpec::stable(flags.gamma, flags.xi);
  }
  return sphgof::KernelSpec::energy(flags.a);
}

sphgof::DistributionSpec load_distribution(const std::string& path,
                                           const std::string& inline_text) {
  if (!inline_text.empty()) {
    return sphgof::distribution_from_json(
        sphgof::parse_json_text(inline_text, "<inline>"));
  }
  if (path.empty()) {
    throw sphgof::InvalidConfigError(
        "provide a distribution via --spec FILE or --spec-json TEXT");
  }
  return sphgof::distribution_from_json(sphgof::load_json_file(path));
}

void emit(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
  } else {
    sphgof::write_text_file(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Characteristic-function goodness-of-fit tests for directional data "
      "on the unit hypersphere"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker thread count (0 keeps the runtime default)");
  // Run the root callback ahead of the subcommand callbacks so the thread
  // count is in force before any work starts.
  app.immediate_callback(true);
  app.callback([&] {
#ifdef _OPENMP
    if (threads > 0) {
      omp_set_num_threads(threads);
    }
#else
    (void)threads;
#endif
  });

  // ---- sample ----
  auto* cmd_sample = app.add_subcommand(
      "sample", "Draw observations from a distribution specification");
  cmd_sample->fallthrough();
  std::string sample_spec_path;
  std::string sample_spec_inline;
  std::size_t sample_count = 100;
  std::uint64_t sample_seed = 0;
  std::uint64_t sample_stream = 0;
  std::string sample_out;
  cmd_sample->add_option("--spec", sample_spec_path,
                         "Distribution specification (JSON file)");
  cmd_sample->add_option("--spec-json", sample_spec_inline,
                         "Distribution specification (inline JSON)");
  cmd_sample->add_option("-n,--count", sample_count, "Observations to draw")
      ->capture_default_str();
  cmd_sample->add_option("--seed", sample_seed, "Seed")->capture_default_str();
  cmd_sample->add_option("--stream", sample_stream, "Stream id")
      ->capture_default_str();
  cmd_sample->add_option("--out", sample_out,
                         "Output CSV path (default: stdout)");
  cmd_sample->callback([&] {
    const auto spec = load_distribution(sample_spec_path, sample_spec_inline);
    const sphgof::Sample drawn =
        sphgof::sample(spec, sample_count, {sample_seed, sample_stream});
    emit(sphgof::to_csv(drawn), sample_out);
  });

  // ---- stat ----
  auto* cmd_stat = app.add_subcommand(
      "stat", "Evaluate the two-sample statistic on two coordinate files");
  cmd_stat->fallthrough();
  std::string stat_x_path;
  std::string stat_y_path;
  KernelFlags stat_kernel;
  cmd_stat->add_option("--x", stat_x_path, "First sample (CSV)")->required();
  cmd_stat->add_option("--y", stat_y_path, "Second sample (CSV)")->required();
  add_kernel_flags(cmd_stat, stat_kernel);
  cmd_stat->callback([&] {
    const sphgof::Sample x = sphgof::read_sample_csv(stat_x_path);
    const sphgof::Sample y = sphgof::read_sample_csv(stat_y_path);
    const sphgof::KernelSpec kernel = kernel_from_flags(stat_kernel);
    const auto value = sphgof::compute_statistic(x, y, kernel);
    const double delta = sphgof::delta_hat(x, y, kernel);
    std::cout << "{\"statistic\":" << sphgof::format_double(value.t)
              << ",\"delta_hat\":" << sphgof::format_double(delta)
              << ",\"n\":" << value.n << ",\"m\":" << value.m << ",\"kernel\":\""
              << kernel.label() << "\"}\n";
  });

  // ---- test-simple ----
  auto* cmd_simple = app.add_subcommand(
      "test-simple",
      "Test a sample against a fully specified null distribution");
  cmd_simple->fallthrough();
  std::string simple_x_path;
  std::string simple_null_path;
  std::string simple_null_inline;
  KernelFlags simple_kernel;
  sphgof::TestConfig simple_config;
  std::string simple_method = "bootstrap";
  std::uint64_t simple_seed = 0;
  std::uint64_t simple_stream = 0;
  std::string simple_out_json;
  std::string simple_out_csv;
  cmd_simple->add_option("--x", simple_x_path, "Data sample (CSV)")->required();
  cmd_simple->add_option("--null", simple_null_path,
                         "Null distribution (JSON file)");
  cmd_simple->add_option("--null-json", simple_null_inline,
                         "Null distribution (inline JSON)");
  cmd_simple->add_option("--m", simple_config.m, "Artificial sample size")
      ->capture_default_str();
  cmd_simple->add_option("--b", simple_config.b, "Resampling replicates")
      ->capture_default_str();
  cmd_simple->add_option("--alpha", simple_config.alpha, "Significance level")
      ->capture_default_str();
  cmd_simple->add_option("--method", simple_method, "Resampling method")
      ->check(CLI::IsMember({"bootstrap", "permutation"}))
      ->capture_default_str();
  cmd_simple->add_option("--seed", simple_seed, "Seed")->capture_default_str();
  cmd_simple->add_option("--stream", simple_stream, "Stream id")
      ->capture_default_str();
  add_kernel_flags(cmd_simple, simple_kernel);
  cmd_simple->add_option("--out-json", simple_out_json,
                         "Write the full result (with replicates) here");
  cmd_simple->add_option("--out-csv", simple_out_csv,
                         "Write the one-row summary CSV here");
  cmd_simple->callback([&] {
    const sphgof::Sample x = sphgof::read_sample_csv(simple_x_path);
    const auto null_spec =
        (simple_null_path.empty() && simple_null_inline.empty())
            ? sphgof::make_uniform(x.dim())
            : load_distribution(simple_null_path, simple_null_inline);
    simple_config.method = sphgof::parse_resampling_method(simple_method);
    simple_config.seed = {simple_seed, simple_stream};
    simple_config.kernel = kernel_from_flags(simple_kernel);
    const auto result = sphgof::test_simple(x, null_spec, simple_config);
    std::cout << sphgof::to_json_text(result, false);
    if (!simple_out_json.empty()) {
      sphgof::write_text_file(simple_out_json,
                              sphgof::to_json_text(result, true));
    }
    if (!simple_out_csv.empty()) {
      sphgof::write_text_file(simple_out_csv, sphgof::to_csv(result));
    }
  });

  // ---- test-composite ----
  auto* cmd_composite = app.add_subcommand(
      "test-composite",
      "Fit a parametric family, then test by the parametric bootstrap");
  cmd_composite->fallthrough();
  std::string composite_x_path;
  std::string composite_family = "vmf";
  KernelFlags composite_kernel;
  sphgof::TestConfig composite_config;
  std::uint64_t composite_seed = 0;
  std::uint64_t composite_stream = 0;
  std::string composite_out_json;
  std::string composite_out_csv;
  cmd_composite->add_option("--x", composite_x_path, "Data sample (CSV)")
      ->required();
  cmd_composite->add_option("--family", composite_family, "Null family")
      ->check(CLI::IsMember({"vmf", "acg", "kent"}))
      ->capture_default_str();
  cmd_composite->add_option("--m", composite_config.m, "Artificial sample size")
      ->capture_default_str();
  cmd_composite->add_option("--b", composite_config.b, "Bootstrap replicates")
      ->capture_default_str();
  cmd_composite
      ->add_option("--alpha", composite_config.alpha, "Significance level")
      ->capture_default_str();
  cmd_composite->add_option("--seed", composite_seed, "Seed")
      ->capture_default_str();
  cmd_composite->add_option("--stream", composite_stream, "Stream id")
      ->capture_default_str();
  add_kernel_flags(cmd_composite, composite_kernel);
  cmd_composite->add_option("--out-json", composite_out_json,
                            "Write the full result (with replicates) here");
  cmd_composite->add_option("--out-csv", composite_out_csv,
                            "Write the one-row summary CSV here");
  cmd_composite->callback([&] {
    const sphgof::Sample x = sphgof::read_sample_csv(composite_x_path);
    composite_config.seed = {composite_seed, composite_stream};
    composite_config.kernel = kernel_from_flags(composite_kernel);
    const auto result = sphgof::test_composite(
        x, sphgof::parse_fit_family(composite_family), composite_config);
    std::cout << sphgof::to_json_text(result, false);
    if (!composite_out_json.empty()) {
      sphgof::write_text_file(composite_out_json,
                              sphgof::to_json_text(result, true));
    }
    if (!composite_out_csv.empty()) {
      sphgof::write_text_file(composite_out_csv, sphgof::to_csv(result));
    }
  });

  // ---- power-study ----
  auto* cmd_power = app.add_subcommand(
      "power-study", "Run a Monte Carlo rejection-rate study from a config");
  cmd_power->fallthrough();
  std::string power_config_path;
  std::size_t power_n = 0;
  std::size_t power_b = 0;
  std::vector<std::size_t> power_m;
  double power_alpha = 0.0;
  std::size_t power_reps = 0;
  std::uint64_t power_seed = 0;
  std::string power_method;
  std::string power_out_csv;
  std::string power_out_json;
  cmd_power->add_option("--config", power_config_path, "Experiment JSON file")
      ->required();
  auto* opt_n = cmd_power->add_option("--n", power_n, "Override data size n");
  auto* opt_b = cmd_power->add_option("--b", power_b, "Override replicates b");
  auto* opt_m = cmd_power
                    ->add_option("--m", power_m,
                                 "Override artificial sizes (comma-separated)")
                    ->delimiter(',');
  auto* opt_alpha =
      cmd_power->add_option("--alpha", power_alpha, "Override alpha");
  auto* opt_reps = cmd_power->add_option("--replications", power_reps,
                                         "Override replications");
  auto* opt_seed = cmd_power->add_option("--seed", power_seed, "Override seed");
  auto* opt_method =
      cmd_power->add_option("--method", power_method, "Override method")
          ->check(CLI::IsMember({"bootstrap", "permutation"}));
  cmd_power->add_option("--out-csv", power_out_csv,
                        "Stream rows here as they finish (default: stdout "
                        "after completion)");
  cmd_power->add_option("--out-json", power_out_json,
                        "Write the JSON table here when done");
  cmd_power->callback([&] {
    sphgof::ExperimentSpec spec = sphgof::load_experiment(power_config_path);
    if (opt_n->count() > 0) spec.n = power_n;
    if (opt_b->count() > 0) spec.b = power_b;
    if (opt_m->count() > 0) spec.artificial_sizes = power_m;
    if (opt_alpha->count() > 0) spec.alpha = power_alpha;
    if (opt_reps->count() > 0) spec.replications = power_reps;
    if (opt_seed->count() > 0) spec.seed = power_seed;
    if (opt_method->count() > 0) {
      spec.method = sphgof::parse_resampling_method(power_method);
    }

    std::ofstream csv_stream;
    if (!power_out_csv.empty()) {
      csv_stream.open(power_out_csv, std::ios::binary | std::ios::trunc);
      if (!csv_stream) {
        throw sphgof::IoError("cannot open '" + power_out_csv +
                              "' for writing");
      }
      csv_stream << sphgof::power_csv_header();
      csv_stream.flush();
    }
    const sphgof::RowCallback on_row = [&](const sphgof::PowerRow& row) {
      std::cerr << "completed scenario=" << row.scenario
                << " kernel=" << row.kernel << " m=" << row.m
                << " rate=" << sphgof::format_double(row.rate) << "\n";
      if (csv_stream.is_open()) {
        csv_stream << sphgof::to_csv_row(row);
        csv_stream.flush();
      }
    };
    const sphgof::PowerTable table = sphgof::run_power_study(spec, on_row);
    if (csv_stream.is_open()) {
      csv_stream.close();
    } else {
      std::cout << sphgof::to_csv(table);
    }
    if (!power_out_json.empty()) {
      sphgof::write_text_file(power_out_json, sphgof::to_json_text(table));
    }
  });

  // ---- ingest ----
  auto* cmd_ingest = app.add_subcommand(
      "ingest", "Validate a declination/inclination file and convert it");
  cmd_ingest->fallthrough();
  std::string ingest_path;
  double ingest_age = 0.0;
  std::string ingest_out;
  cmd_ingest->add_option("--file", ingest_path, "Input CSV")->required();
  auto* opt_age = cmd_ingest->add_option(
      "--age", ingest_age, "Keep only records with exactly this age");
  cmd_ingest->add_option("--out", ingest_out,
                         "Write the unit-vector sample CSV here");
  cmd_ingest->callback([&] {
    const std::optional<double> filter =
        opt_age->count() > 0 ? std::optional<double>(ingest_age) : std::nullopt;
    const auto ingest = sphgof::ingest_geomagia_csv(ingest_path, filter);
    std::cout << "records_total=" << ingest.total_records
              << " kept=" << ingest.records.size()
              << " dim=" << ingest.sample.dim() << "\n";
    if (!ingest_out.empty()) {
      sphgof::write_text_file(ingest_out, sphgof::to_csv(ingest.sample));
    }
  });

  // ---- real-data ----
  auto* cmd_real = app.add_subcommand(
      "real-data",
      "Composite tests over a kernel-scale grid on an ingested data set");
  cmd_real->fallthrough();
  sphgof::RealDataConfig real_config;
  double real_age = 0.0;
  std::string real_family = "vmf";
  std::string real_out_csv;
  std::string real_out_json;
  cmd_real->add_option("--file", real_config.csv_path, "Input CSV")->required();
  auto* opt_real_age = cmd_real->add_option(
      "--age", real_age, "Keep only records with exactly this age");
  cmd_real->add_option("--family", real_family, "Null family")
      ->check(CLI::IsMember({"vmf", "acg", "kent"}))
      ->capture_default_str();
  cmd_real
      ->add_option("--gammas", real_config.gammas,
                   "Stable kernel scales (comma-separated)")
      ->delimiter(',')
      ->capture_default_str();
  cmd_real->add_option("--xi", real_config.xi, "Stable kernel exponent")
      ->capture_default_str();
  cmd_real->add_option("--m", real_config.m, "Artificial sample size")
      ->capture_default_str();
  cmd_real->add_option("--b", real_config.b, "Bootstrap replicates")
      ->capture_default_str();
  cmd_real->add_option("--alpha", real_config.alpha, "Significance level")
      ->capture_default_str();
  cmd_real->add_option("--seed", real_config.seed, "Seed")
      ->capture_default_str();
  cmd_real->add_option("--out-csv", real_out_csv, "Write the per-gamma table");
  cmd_real->add_option("--out-json", real_out_json,
                       "Write the full analysis (fit + table)");
  cmd_real->callback([&] {
    if (opt_real_age->count() > 0) {
      real_config.age_filter = real_age;
    }
    real_config.family = sphgof::parse_fit_family(real_family);
    const auto analysis = sphgof::run_real_data_analysis(real_config);
    std::cout << sphgof::to_json_text(analysis);
    if (!real_out_csv.empty()) {
      sphgof::write_text_file(real_out_csv, sphgof::to_csv(analysis));
    }
    if (!real_out_json.empty()) {
      sphgof::write_text_file(real_out_json, sphgof::to_json_text(analysis));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const sphgof::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == sphgof::ErrorKind::data ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
