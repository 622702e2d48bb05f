#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "phononet/errors.hpp"

namespace phononet::cli {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

ParamDef num(std::string k, double d, std::string doc) { return {std::move(k), ParamType::number, d, std::move(doc), {}}; }
ParamDef integer(std::string k, int d, std::string doc) {
  return {std::move(k), ParamType::integer, d, std::move(doc), {}};
}
ParamDef flag(std::string k, bool d, std::string doc) {
  return {std::move(k), ParamType::boolean, d, std::move(doc), {}};
}
ParamDef list(std::string k, std::vector<double> d, std::string doc) {
  return {std::move(k), ParamType::number_list, json(d), std::move(doc), {}};
}
ParamDef text(std::string k, std::string d, std::vector<std::string> choices, std::string doc) {
  return {std::move(k), ParamType::text, d, std::move(doc), std::move(choices)};
}

std::vector<ExperimentDef> build() {
  std::vector<ExperimentDef> e;
  e.push_back({"filter",
               "Optomechanical noise filter: output occupation of the waveguide field around omega_m.",
               {num("gamma_hz", 1e6, "waveguide coupling rate gamma"),
                num("gamma0_hz", 0.0, "intrinsic loss of the mechanical mode"),
                num("kappa_hz", 3e8, "optical field decay rate"),
                num("omega_m_hz", 1.2e9, "mechanical frequency"),
                num("N_th", 40.0, "thermal occupation of the waveguide"),
                flag("match_impedance", true, "set g alpha so that gamma_op = gamma + gamma0"),
                num("g_alpha_hz", 0.0, "optomechanical coupling, used when match_impedance is false"),
                flag("rotating_wave", true, "beam-splitter model; false keeps the counter-rotating terms"),
                num("span_over_gamma", 5.0, "half width of the frequency window in units of gamma"),
                integer("points", 1001, "number of frequencies"),
                flag("fit", true, "fit the Lorentzian dip and report it in the metadata")},
               {"omega_over_gamma", "N_F", "N_F_closed_form"}});
  e.push_back({"multimode",
               "Multimode cooling of an N-site chain through an optical mode on site 1.",
               {integer("n_sites", 10, "chain length N"), num("K_hz", 1e5, "nearest-neighbour tunneling K"),
                num("omega_m_hz", 1e8, "mechanical frequency"), num("gamma0_hz", 5e3, "intrinsic loss per site"),
                num("kappa_hz", 5e4, "optical field decay rate"),
                list("g_alpha_hz", {0.0, 5e4}, "optomechanical couplings, one spectrum each"),
                num("N_th", 1.0, "bath occupation"), integer("site", 10, "site whose spectrum is reported (1-based)"),
                num("span_over_K", 3.0, "half width of the window in units of K"),
                integer("points", 2001, "number of frequencies")},
               {"g_alpha_over_K", "omega_over_K", "occupation"}});
  e.push_back({"transfer",
               "Pulse-shaped transfer between two nodes at zero temperature.",
               {num("gamma_max_hz", 1e5, "maximal decay rate Gamma_max"),
                num("window_factor", 28.0, "pulse window times Gamma_max"),
                text("shape", "analytic", {"analytic", "iterative"}, "analytic pulse pair or iterative dark-state design"),
                num("cutoff_floor_ratio", 0.0, "rates below this fraction of Gamma_max are set to zero (analytic)"),
                integer("design_steps", 28000, "time steps of the iterative design"),
                integer("points", 561, "number of output times")},
               {"t_times_gamma_max", "Gamma1_over_max", "Gamma2_over_max", "G1", "G2", "T", "p1", "p2",
                "dark_residual"}});
  e.push_back({"fidelity",
               "Transfer fidelity against the channel occupation.",
               {num("gamma_hz", 1e6, "waveguide coupling of the filter cavity gamma"),
                list("gamma_max_over_gamma", {0.01, 0.1}, "Gamma_max values"),
                list("N_th", {0.5, 5.0, 20.0}, "channel occupations"),
                flag("filter", true, "filtered channel; false gives white noise N_th"),
                num("gamma0_over_gamma", 1.6e-4, "intrinsic loss of the filter cavity, sets N0 = gamma0 N_th / gamma"),
                text("model", "reduced", {"reduced", "master_equation"},
                     "two-qubit model with N_eff or the cascaded master equation with the cavity"),
                text("state", "superposition", {"superposition", "excited"}, "initial state of qubit 1"),
                num("window_factor", 28.0, "pulse window times Gamma_max")},
               {"Gamma_max_over_gamma", "N_th", "N_eff", "fidelity"}});
  e.push_back({"circulator",
               "Three-port circulator: scattering probabilities for a signal entering port 1.",
               {num("t_over_gamma", 0.5, "tunneling amplitude t"), num("phi", std::numbers::pi / 2.0, "phase (rad)"),
                num("gamma_hz", 1e6, "port coupling rate gamma"), num("gamma0_over_gamma", 0.0, "intrinsic loss per mode"),
                num("span_over_gamma", 5.0, "half width of the window in units of gamma"),
                integer("points", 1001, "number of frequencies")},
               {"delta_omega_over_gamma", "P_11", "P_12", "P_13", "P_loss"}});
  e.push_back({"waveguide",
               "Filtered noise propagating along a lossy waveguide, continuum model and microscopic chain.",
               {num("gamma_hz", 1e6, "filter waveguide coupling gamma"), num("kappa_hz", 3e8, "filter optical decay"),
                num("omega_m_hz", 1.2e9, "filter and band-centre frequency"), num("N_th", 40.0, "bath occupation"),
                num("K_over_gamma", 100.0, "chain coupling K"),
                num("gamma0_over_gamma", 0.1, "intrinsic loss per chain site"),
                list("sites", {50.0, 200.0}, "propagation distances in lattice sites"),
                flag("oracle", true, "also solve the microscopic chain"),
                num("span_over_gamma", 5.0, "half width of the window in units of gamma"),
                integer("points", 201, "number of frequencies")},
               {"site", "z_over_l", "omega_over_gamma", "N_model", "N_oracle"}});
  e.push_back({"design",
               "Optical drive design for the circulator tunneling t e^{i phi}.",
               {num("gamma_hz", 25e6, "port rate gamma of the circulator"),
                num("t_over_gamma", 0.5, "target tunneling t"), num("phi", std::numbers::pi / 2.0, "target phase (rad)"),
                num("omega_m_hz", 1e10, "mechanical frequency"), num("J_hz", 1e9, "optical tunneling J"),
                num("kappa_hz", 5e7, "optical decay"), num("g_hz", 1e6, "single-photon coupling g"),
                num("delta_offset_hz", 0.0, "laser detunings are delta_i = -omega_m + delta_offset"),
                num("alpha_max", 1e6, "bound on |alpha|")},
               {"E1_hz", "E2_hz", "phi1", "phi2", "alpha_abs", "g_alpha_hz", "t_eff_over_gamma", "phi_eff",
                "gamma_op_over_gamma", "Delta_plus_hz", "Delta_minus_hz"}});
  e.push_back({"nv",
               "NV Raman spin-phonon coupling against the mean detuning.",
               {num("lambda_hz", 3e4, "bare deformation coupling lambda"), num("omega_m_hz", 1e9, "mechanical frequency"),
                num("Omega0_hz", 1e7, "Rabi frequency of leg 0"), num("Omega1_hz", 1e7, "Rabi frequency of leg 1"),
                num("Gamma_e_hz", 1.5e7, "excited-state decay"),
                num("Delta_min_over_omega_m", -0.4, "grid start"), num("Delta_max_over_omega_m", 0.4, "grid end"),
                integer("points", 81, "grid points")},
               {"Delta_over_omega_m", "lambda_eff_hz", "lambda_phase", "Gamma_eff_0_hz", "Gamma_eff_1_hz", "ratio"}});
  return e;
}

std::string type_name(ParamType t) {
  switch (t) {
    case ParamType::number: return "number";
    case ParamType::integer: return "integer";
    case ParamType::boolean: return "boolean";
    case ParamType::number_list: return "list of numbers";
    case ParamType::text: return "string";
  }
  return "?";
}

json check_value(const ParamDef& d, const json& v, const std::string& path) {
  auto fail = [&](const std::string& what) { throw ConfigError(path + ": " + what); };
  switch (d.type) {
    case ParamType::number:
      if (!v.is_number()) fail("expected a number");
      if (!std::isfinite(v.get<double>())) fail("must be finite");
      return v.get<double>();
    case ParamType::integer: {
      if (!v.is_number()) fail("expected an integer");
      const double x = v.get<double>();
      if (x != std::floor(x) || std::abs(x) > 1e9) fail("expected an integer");
      return static_cast<std::int64_t>(x);
    }
    case ParamType::boolean:
      if (!v.is_boolean()) fail("expected true or false");
      return v;
    case ParamType::number_list: {
      if (!v.is_array() || v.empty()) fail("expected a non-empty list of numbers");
      json out = json::array();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_number() || !std::isfinite(v[k].get<double>()))
          throw ConfigError(path + "[" + std::to_string(k) + "]: expected a number");
        out.push_back(v[k].get<double>());
      }
      return out;
    }
    case ParamType::text: {
      if (!v.is_string()) fail("expected a string");
      const auto s = v.get<std::string>();
      if (!d.choices.empty() && std::find(d.choices.begin(), d.choices.end(), s) == d.choices.end()) {
        std::string opts;
        for (const auto& c : d.choices) opts += (opts.empty() ? "" : ", ") + c;
        fail("'" + s + "' is not one of " + opts);
      }
      return v;
    }
  }
  return v;
}

}  // namespace

const std::vector<ExperimentDef>& experiments() {
  static const std::vector<ExperimentDef> e = build();
  return e;
}

const ExperimentDef& experiment(const std::string& name) {
  for (const auto& e : experiments())
    if (e.name == name) return e;
  throw ConfigError("experiment: unknown experiment '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "experiment" && it.key() != "parameters" && it.key() != "output" && it.key() != "seed")
      throw ConfigError("unknown key '" + it.key() + "'");
  if (!j.contains("experiment")) throw ConfigError("missing required key 'experiment'");
  if (!j["experiment"].is_string()) throw ConfigError("experiment: expected a string");

  RunConfig c;
  c.experiment = j["experiment"].get<std::string>();
  const ExperimentDef& def = experiment(c.experiment);

  json given = j.value("parameters", json::object());
  if (!given.is_object()) throw ConfigError("parameters: expected an object");
  for (auto it = given.begin(); it != given.end(); ++it) {
    const bool known = std::any_of(def.params.begin(), def.params.end(), [&](const ParamDef& d) { return d.key == it.key(); });
    if (!known) throw ConfigError("parameters." + it.key() + ": unknown key for experiment '" + c.experiment + "'");
  }
  c.parameters = json::object();
  for (const auto& d : def.params) {
    const std::string path = "parameters." + d.key;
    c.parameters[d.key] = given.contains(d.key) ? check_value(d, given[d.key], path) : check_value(d, d.def, path);
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("output: expected an object");
    for (auto it = o.begin(); it != o.end(); ++it) {
      if (it.key() == "dir") {
        if (!it->is_string()) throw ConfigError("output.dir: expected a string");
        c.out_dir = it->get<std::string>();
      } else if (it.key() == "format") {
        if (!it->is_string()) throw ConfigError("output.format: expected a string");
        c.format = it->get<std::string>();
        if (c.format != "csv" && c.format != "json") throw ConfigError("output.format: must be csv or json");
      } else {
        throw ConfigError("output." + it.key() + ": unknown key");
      }
    }
  }
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_integer()) throw ConfigError("seed: expected an integer");
    c.seed = s.get<std::int64_t>();
  }
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["parameters"] = c.parameters;
  json o;
  if (!c.out_dir.empty()) o["dir"] = c.out_dir;
  o["format"] = c.format;
  j["output"] = o;
  j["seed"] = c.seed;
  return j;
}

double Params::num(const std::string& key) const {
  const double v = j_.at(key).get<double>();
  return key.size() > 3 && key.compare(key.size() - 3, 3, "_hz") == 0 ? two_pi * v : v;
}

int Params::integer(const std::string& key) const { return j_.at(key).get<int>(); }
bool Params::flag(const std::string& key) const { return j_.at(key).get<bool>(); }
std::string Params::text(const std::string& key) const { return j_.at(key).get<std::string>(); }

std::vector<double> Params::list(const std::string& key) const {
  std::vector<double> v = j_.at(key).get<std::vector<double>>();
  if (key.size() > 3 && key.compare(key.size() - 3, 3, "_hz") == 0)
    for (double& x : v) x *= two_pi;
  return v;
}

std::string schema_markdown() {
  std::ostringstream os;
  for (const auto& e : experiments()) {
    os << "## " << e.name << "\n\n" << e.summary << "\n\n";
    os << "| key | type | default | meaning |\n|---|---|---|---|\n";
    for (const auto& d : e.params) {
      os << "| `" << d.key << "` | " << type_name(d.type) << " | `" << d.def.dump() << "` | " << d.doc;
      if (!d.choices.empty()) {
        os << " (";
        for (std::size_t k = 0; k < d.choices.size(); ++k) os << (k ? ", " : "") << d.choices[k];
        os << ")";
      }
      os << " |\n";
    }
    os << "\nColumns: ";
    for (std::size_t k = 0; k < e.columns.size(); ++k) os << (k ? ", " : "") << "`" << e.columns[k] << "`";
    os << "\n\n";
  }
  return os.str();
}

}  // namespace phononet::cli
