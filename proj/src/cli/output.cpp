#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "phononet/errors.hpp"

namespace phononet::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string render_csv(const Table& t, const RunConfig& c, const std::string& version, const std::string& ts) {
  std::ostringstream os;
  os << "# phononet " << version << "\n";
  os << "# config: " << to_json(c).dump() << "\n";
  for (const auto& [k, v] : t.notes) os << "# " << k << ": " << v << "\n";
  os << "# generated: " << ts << "\n";
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << format_number(r[k]);
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Table& t, const RunConfig& c, const std::string& version, const std::string& ts) {
  // numbers go through the same %.17g text as the CSV
  std::ostringstream os;
  json notes = json::array();
  for (const auto& [k, v] : t.notes) notes.push_back({k, v});
  os << "{\n";
  os << "  \"tool\": " << json("phononet " + version).dump() << ",\n";
  os << "  \"config\": " << to_json(c).dump() << ",\n";
  os << "  \"notes\": " << notes.dump() << ",\n";
  os << "  \"generated\": " << json(ts).dump() << ",\n";
  os << "  \"columns\": " << json(t.columns).dump() << ",\n";
  os << "  \"data\": [";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < t.rows[i].size(); ++k) {
      const double x = t.rows[i][k];
      os << (k ? ", " : "") << (std::isfinite(x) ? format_number(x) : "null");
    }
    os << "]";
  }
  os << (t.rows.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
  return os.str();
}

}  // namespace

std::string render(const Table& t, const RunConfig& c, const std::string& version, const std::string& ts) {
  return c.format == "json" ? render_json(t, c, version, ts) : render_csv(t, c, version, ts);
}

std::string write_output(const Table& t, const RunConfig& c, const std::string& dir, const std::string& version,
                         const std::string& ts) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("output directory '" + dir + "': " + ec.message());
  const fs::path path = fs::path(dir) / (c.experiment + "." + c.format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << render(t, c, version, ts);
  if (!f) throw ConfigError("write failed for " + path.string());
  return path.string();
}

}  // namespace phononet::cli
