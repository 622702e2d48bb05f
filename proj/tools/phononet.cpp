// phononet <experiment> --config <file> [--out <dir>] [--format csv|json] [--threads N]
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "cli/output.hpp"
#include "phononet/errors.hpp"
#include "phononet/execution.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw phononet::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace phononet;
  CLI::App app{"phononet: phononic quantum network simulations"};
  app.set_version_flag("--version", std::string("phononet ") + PHONONET_VERSION);
  bool schema = false;
  app.add_flag("--schema", schema, "print the configuration reference (markdown) and exit");

  std::string config_path, out_dir, format;
  int threads = 0;
  for (const auto& e : cli::experiments()) {
    auto* sub = app.add_subcommand(e.name, e.summary);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides PHONONET_OUT_DIR and the config)");
    sub->add_option("--format", format, "csv or json (overrides the config)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "worker threads (default: all)")->check(CLI::NonNegativeNumber);
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }
  if (schema) {
    std::cout << cli::schema_markdown();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return exit_config;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    cli::RunConfig cfg = cli::parse_config(slurp(config_path));
    if (cfg.experiment != name)
      throw ConfigError("experiment: config is for '" + cfg.experiment + "' but the subcommand is '" + name + "'");
    if (!format.empty()) cfg.format = format;
    std::string dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
    if (const char* env = std::getenv("PHONONET_OUT_DIR"); env && *env) dir = env;
    if (!out_dir.empty()) dir = out_dir;
    if (threads > 0) set_num_threads(threads);

    const cli::Table t = cli::run_experiment(cfg, Execution::parallel);
    for (const auto& [k, v] : t.notes)
      if (k == "warning") std::cerr << "warning: " << v << "\n";
    const std::string path = cli::write_output(t, cfg, dir, PHONONET_VERSION, utc_now());
    std::cout << path << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}
