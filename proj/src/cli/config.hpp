#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace phononet::cli {

using nlohmann::json;

enum class ParamType { number, integer, boolean, number_list, text };

struct ParamDef {
  std::string key;
  ParamType type = ParamType::number;
  json def;
  std::string doc;
  std::vector<std::string> choices;  // text only
};

struct ExperimentDef {
  std::string name;
  std::string summary;
  std::vector<ParamDef> params;
  std::vector<std::string> columns;
};

const std::vector<ExperimentDef>& experiments();
const ExperimentDef& experiment(const std::string& name);  // ConfigError if unknown

struct RunConfig {
  std::string experiment;
  json parameters;  // resolved, every key present
  std::string out_dir;
  std::string format = "csv";
  std::int64_t seed = 0;
};

// Parses and validates a JSON configuration; defaults are filled in. Errors
// name the offending key path.
RunConfig parse_config(const std::string& text);
json to_json(const RunConfig& c);

// Typed access to validated parameters. Keys ending in _hz are returned in
// angular units (multiplied by 2 pi).
class Params {
 public:
  explicit Params(const json& j) : j_(j) {}
  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;

 private:
  const json& j_;
};

// Markdown reference of every experiment and parameter.
std::string schema_markdown();

}  // namespace phononet::cli
