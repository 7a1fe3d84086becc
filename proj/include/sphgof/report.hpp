#pragma once

#include <string>

#include "sphgof/experiment.hpp"
#include "sphgof/geometry.hpp"
#include "sphgof/resampling.hpp"

namespace sphgof {

// Shortest text that parses back to exactly this double ('.' decimal point,
// locale-independent); integers print without a trailing ".0".
std::string format_double(double v);

// Comma-separated table with a header row; byte-stable given equal inputs.
// The header/row pair supports incremental writes while a study runs.
std::string power_csv_header();
std::string to_csv_row(const PowerRow& row);
std::string to_csv(const PowerTable& table);
// JSON document with a top-level "schema_version".
std::string to_json_text(const PowerTable& table);

// One summary row; replicate statistics appear only in the JSON form.
std::string to_csv(const TestResult& result);
std::string to_json_text(const TestResult& result,
                         bool include_replicates = true);

// Coordinate matrix with header x1,...,xd; one row per observation.
std::string to_csv(const Sample& sample);
Sample read_sample_csv(const std::string& path);

// Overwrites `path` with `content`; throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sphgof
