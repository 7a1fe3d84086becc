#include "sphgof/geomagia.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sphgof/errors.hpp"

namespace sphgof {

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) ||
                        s.front() == '"')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) ||
                        s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_line(std::string_view line, char sep) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      cells.emplace_back(trim(line.substr(start)));
      break;
    }
    cells.emplace_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

// A header cell names a column when, lowercased, it equals the key, starts
// with the key followed by a non-letter ("dec[deg.]", "age (yr)"), or equals
// a known long form.
bool header_matches(const std::string& cell, std::string_view key,
                    std::string_view long_form) {
  if (cell == key || cell == long_form) {
    return true;
  }
  if (cell.size() > key.size() && cell.compare(0, key.size(), key) == 0 &&
      !std::isalpha(static_cast<unsigned char>(cell[key.size()]))) {
    return true;
  }
  return false;
}

char detect_delimiter(const std::string& header, const std::string& path) {
  const char candidates[] = {',', ';', '\t'};
  char best = 0;
  std::size_t best_count = 0;
  for (const char c : candidates) {
    const auto count = static_cast<std::size_t>(
        std::count(header.begin(), header.end(), c));
    if (count > best_count) {
      best = c;
      best_count = count;
    }
  }
  if (best == 0) {
    throw ParseError(path +
                     ": could not detect a delimiter (expected comma, "
                     "semicolon, or tab in the header row)");
  }
  return best;
}

double parse_number(const std::string& cell, const std::string& path,
                    std::size_t line_no, std::string_view column) {
  const std::string_view body = cell;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr != body.data() + body.size() ||
      !std::isfinite(value)) {
    throw ParseError(path + ": line " + std::to_string(line_no) +
                     ", column '" + std::string(column) +
                     "': cannot parse numeric value from '" + cell + "'");
  }
  return value;
}

bool missing_optional(const std::string& cell) {
  const std::string lower = to_lower(cell);
  return lower.empty() || lower == "na" || lower == "nan" || lower == "null";
}

}  // namespace

GeomagiaIngest ingest_geomagia_csv(const std::string& path,
                                   std::optional<double> age_filter) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }

  std::string line;
  std::size_t line_no = 0;
  // Header: first nonblank line.
  std::string header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!trim(line).empty()) {
      header = line;
      break;
    }
  }
  if (header.empty()) {
    throw ParseError(path + ": file has no header row");
  }

  const char sep = detect_delimiter(header, path);
  const std::vector<std::string> head_cells = split_line(header, sep);

  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  std::size_t col_age = kMissing;
  std::size_t col_dec = kMissing;
  std::size_t col_inc = kMissing;
  std::size_t col_lat = kMissing;
  std::size_t col_lon = kMissing;
  const auto bind = [&](std::size_t& slot, std::size_t index,
                        std::string_view name) {
    if (slot != kMissing) {
      throw ParseError(path + ": header names column '" + std::string(name) +
                       "' more than once");
    }
    slot = index;
  };
  for (std::size_t i = 0; i < head_cells.size(); ++i) {
    const std::string cell = to_lower(head_cells[i]);
    if (header_matches(cell, "age", "age")) {
      bind(col_age, i, "age");
    } else if (header_matches(cell, "dec", "declination")) {
      bind(col_dec, i, "dec");
    } else if (header_matches(cell, "inc", "inclination")) {
      bind(col_inc, i, "inc");
    } else if (header_matches(cell, "lat", "latitude")) {
      bind(col_lat, i, "lat");
    } else if (header_matches(cell, "lon", "longitude")) {
      bind(col_lon, i, "lon");
    }
  }
  for (const auto& [slot, name] :
       {std::pair<std::size_t, const char*>{col_age, "age"},
        {col_dec, "dec"},
        {col_inc, "inc"}}) {
    if (slot == kMissing) {
      throw ParseError(path + ": header is missing required column '" +
                       std::string(name) + "' (header was: " + header + ")");
    }
  }

  std::size_t total_records = 0;
  std::vector<GeomagiaRecord> kept;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (trim(line).empty()) {
      continue;
    }
    const std::vector<std::string> cells = split_line(line, sep);
    if (cells.size() != head_cells.size()) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                       ": expected " + std::to_string(head_cells.size()) +
                       " fields, got " + std::to_string(cells.size()));
    }
    GeomagiaRecord rec;
    rec.age = parse_number(cells[col_age], path, line_no, "age");
    rec.dec = parse_number(cells[col_dec], path, line_no, "dec");
    rec.inc = parse_number(cells[col_inc], path, line_no, "inc");
    if (rec.dec < 0.0 || rec.dec > 360.0) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                       ", column 'dec': value " + std::to_string(rec.dec) +
                       " outside [0, 360]");
    }
    if (rec.inc < -90.0 || rec.inc > 90.0) {
      throw ParseError(path + ": line " + std::to_string(line_no) +
                       ", column 'inc': value " + std::to_string(rec.inc) +
                       " outside [-90, 90]");
    }
    if (col_lat != kMissing && !missing_optional(cells[col_lat])) {
      rec.lat = parse_number(cells[col_lat], path, line_no, "lat");
    }
    if (col_lon != kMissing && !missing_optional(cells[col_lon])) {
      rec.lon = parse_number(cells[col_lon], path, line_no, "lon");
    }
    ++total_records;
    if (!age_filter || rec.age == *age_filter) {
      kept.push_back(rec);
    }
  }

  if (total_records == 0) {
    throw ParseError(path + ": no data rows found");
  }
  if (kept.empty()) {
    std::ostringstream msg;
    msg << path << ": age filter " << *age_filter << " removed all "
        << total_records << " records";
    throw EmptyAfterFilterError(msg.str());
  }

  std::vector<UnitVector> rows;
  rows.reserve(kept.size());
  for (const auto& rec : kept) {
    rows.push_back(from_dec_inc(rec.dec, rec.inc));
  }
  return GeomagiaIngest{total_records, std::move(kept), Sample(rows)};
}

}  // namespace sphgof
