#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cli/config.hpp"

namespace phononet::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // extra metadata (fit results, warnings, notes), in order
  std::vector<std::pair<std::string, std::string>> notes;
};

// %.17g, so every double survives a round trip.
std::string format_number(double x);

// CSV: '#' metadata lines (config, version, notes, timestamp), then the
// header and the rows, LF line endings. JSON: one object with metadata,
// columns and data; the timestamp sits on its own line in both formats.
std::string render(const Table& t, const RunConfig& c, const std::string& version, const std::string& timestamp);

// Writes <dir>/<experiment>.<format> and returns the path.
std::string write_output(const Table& t, const RunConfig& c, const std::string& dir, const std::string& version,
                         const std::string& timestamp);

}  // namespace phononet::cli
