#include "sphgof/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "sphgof/errors.hpp"
#include "sphgof/spec_json.hpp"

namespace sphgof {

namespace {

// Quotes a CSV field when it contains a separator, quote, or newline.
std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') {
      out += "\"\"";
    }
    out += c;
  }
  out += '"';
  return out;
}

nlohmann::json power_row_to_json(const PowerRow& row) {
  nlohmann::json j;
  j["scenario"] = row.scenario;
  j["kernel"] = row.kernel;
  j["n"] = row.n;
  j["m"] = row.m;
  j["b"] = row.b;
  j["alpha"] = row.alpha;
  j["replications"] = row.replications;
  j["rejections"] = row.rejections;
  j["failures"] = row.failures;
  j["rate"] = row.rate;
  j["mc_se"] = row.mc_se;
  return j;
}

nlohmann::json fit_result_to_json(const FitResult& fitted) {
  nlohmann::json j;
  j["family"] = family_name(fitted.spec);
  j["spec"] = to_json(fitted.spec);
  j["log_likelihood"] = fitted.log_likelihood;
  j["iterations"] = fitted.iterations;
  j["converged"] = fitted.converged;
  j["tolerance_achieved"] = fitted.tolerance_achieved;
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string power_csv_header() {
  return "scenario,kernel,n,m,b,alpha,replications,rejections,failures,rate,"
         "mc_se\n";
}

std::string to_csv_row(const PowerRow& row) {
  std::string out;
  out += csv_escape(row.scenario);
  out += ',';
  out += csv_escape(row.kernel);
  out += ',';
  out += std::to_string(row.n);
  out += ',';
  out += std::to_string(row.m);
  out += ',';
  out += std::to_string(row.b);
  out += ',';
  out += format_double(row.alpha);
  out += ',';
  out += std::to_string(row.replications);
  out += ',';
  out += std::to_string(row.rejections);
  out += ',';
  out += std::to_string(row.failures);
  out += ',';
  out += format_double(row.rate);
  out += ',';
  out += format_double(row.mc_se);
  out += '\n';
  return out;
}

std::string to_csv(const PowerTable& table) {
  std::string out = power_csv_header();
  for (const auto& row : table.rows) {
    out += to_csv_row(row);
  }
  return out;
}

std::string to_json_text(const PowerTable& table) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "power-table";
  j["name"] = table.name;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    rows.push_back(power_row_to_json(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_csv(const TestResult& result) {
  std::string out =
      "n,m,kernel,statistic,critical_value,p_value,reject,"
      "replicates_requested,replicates_used,replicates_dropped\n";
  out += std::to_string(result.statistic_observed.n);
  out += ',';
  out += std::to_string(result.statistic_observed.m);
  out += ',';
  out += csv_escape(result.statistic_observed.kernel.label());
  out += ',';
  out += format_double(result.statistic_observed.t);
  out += ',';
  out += format_double(result.critical_value);
  out += ',';
  out += format_double(result.p_value);
  out += ',';
  out += result.reject ? "true" : "false";
  out += ',';
  out += std::to_string(result.replicates_requested);
  out += ',';
  out += std::to_string(result.replicate_statistics.size());
  out += ',';
  out += std::to_string(result.replicates_dropped);
  out += '\n';
  return out;
}

std::string to_json_text(const TestResult& result, bool include_replicates) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "test-result";
  j["statistic"] = result.statistic_observed.t;
  j["n"] = result.statistic_observed.n;
  j["m"] = result.statistic_observed.m;
  j["kernel"] = to_json(result.statistic_observed.kernel);
  j["critical_value"] = result.critical_value;
  j["p_value"] = result.p_value;
  j["reject"] = result.reject;
  j["replicates_requested"] = result.replicates_requested;
  j["replicates_used"] = result.replicate_statistics.size();
  j["replicates_dropped"] = result.replicates_dropped;
  if (include_replicates) {
    j["replicates"] = result.replicate_statistics;
  }
  if (result.fitted) {
    j["fitted"] = fit_result_to_json(*result.fitted);
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const Sample& sample) {
  std::string out;
  for (std::size_t i = 0; i < sample.dim(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += 'x';
    out += std::to_string(i + 1);
  }
  out += '\n';
  for (std::size_t r = 0; r < sample.size(); ++r) {
    const auto row = sample.row(r);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Sample read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::string line;
  std::size_t line_no = 0;
  std::size_t d = 0;
  std::vector<double> data;
  std::size_t n = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (!saw_header) {
      saw_header = true;
      d = static_cast<std::size_t>(
              std::count(line.begin(), line.end(), ',')) +
          1;
      continue;
    }
    std::size_t start = 0;
    std::size_t fields = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      const std::string_view cell =
          std::string_view(line).substr(start, pos == std::string::npos
                                                   ? std::string::npos
                                                   : pos - start);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ParseError(path + ": line " + std::to_string(line_no) +
                         ": cannot parse coordinate '" + std::string(cell) +
                         "'");
      }
      data.push_back(value);
      ++fields;
      if (pos == std::string::npos) {
        break;
      }
      start = pos + 1;
    }
    if (fields != d) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                       ": expected " + std::to_string(d) + " coordinates, got " +
                       std::to_string(fields));
    }
    ++n;
  }
  if (!saw_header || n == 0) {
    throw ParseError(path + ": no data rows found");
  }
  return Sample(n, d, std::move(data));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out.good()) {
    throw IoError("failed writing '" + path + "'");
  }
}

}  // namespace sphgof
