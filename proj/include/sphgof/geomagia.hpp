#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sphgof/geometry.hpp"

namespace sphgof {

// One row of a declination/inclination archive file.  lat/lon are carried
// through untouched; the tests never use them.
struct GeomagiaRecord {
  double age = 0.0;
  double dec = 0.0;  // degrees in [0, 360]
  double inc = 0.0;  // degrees in [-90, 90]
  std::optional<double> lat;
  std::optional<double> lon;
};

struct GeomagiaIngest {
  std::size_t total_records = 0;        // rows read before any filtering
  std::vector<GeomagiaRecord> records;  // rows kept
  Sample sample;                        // from_dec_inc of each kept row
};

// Reads a delimited text file whose header names at least age, dec and inc
// columns (case-insensitive; unit suffixes such as "Dec[deg.]" are accepted;
// the words declination/inclination/latitude/longitude also match).  The
// separator is auto-detected among comma, semicolon and tab.  When
// age_filter is set, only rows whose age equals it exactly are kept.
// Throws IoError when the file cannot be read, ParseError (naming line and
// column) on malformed or out-of-range values, and EmptyAfterFilterError
// when the filter removes every record.
GeomagiaIngest ingest_geomagia_csv(
    const std::string& path,
    std::optional<double> age_filter = std::nullopt);

}  // namespace sphgof
