#include "cli/experiments.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "phononet/cascaded_me.hpp"
#include "phononet/errors.hpp"
#include "phononet/linear_network.hpp"
#include "phononet/noise_filter.hpp"
#include "phononet/nonreciprocal.hpp"
#include "phononet/qubit_interface.hpp"
#include "phononet/transfer.hpp"
#include "phononet/warnings.hpp"
#include "phononet/waveguide.hpp"

namespace phononet::cli {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::string fnum(double x) { return format_number(x); }

void positive(double x, const char* key) {
  if (!(x > 0.0)) throw ConfigError(std::string("parameters.") + key + ": must be > 0");
}
void non_negative(double x, const char* key) {
  if (!(x >= 0.0)) throw ConfigError(std::string("parameters.") + key + ": must be >= 0");
}
void at_least(int x, int lo, const char* key) {
  if (x < lo) throw ConfigError(std::string("parameters.") + key + ": must be >= " + std::to_string(lo));
}

Table filter(const Params& p, Execution exec) {
  const double gamma = p.num("gamma_hz");
  positive(gamma, "gamma_hz");
  positive(p.num("kappa_hz"), "kappa_hz");
  positive(p.num("omega_m_hz"), "omega_m_hz");
  non_negative(p.num("gamma0_hz"), "gamma0_hz");
  non_negative(p.num("N_th"), "N_th");
  non_negative(p.num("span_over_gamma"), "span_over_gamma");
  at_least(p.integer("points"), 2, "points");
  // work in units of gamma
  FilterParams f;
  f.gamma = 1.0;
  f.gamma0 = p.num("gamma0_hz") / gamma;
  f.kappa = p.num("kappa_hz") / gamma;
  f.omega_m = p.num("omega_m_hz") / gamma;
  f.N_th = p.num("N_th");
  f.rotating_wave = p.flag("rotating_wave");
  if (p.flag("match_impedance"))
    f.g_alpha = f.rotating_wave ? impedance_matched_coupling(1.0, f.gamma0, f.kappa)
                                : impedance_matched_coupling_full(1.0, f.gamma0, f.kappa, f.omega_m);
  else
    f.g_alpha = p.num("g_alpha_hz") / gamma;

  const auto grid = linear_grid(f.omega_m, p.num("span_over_gamma"), p.integer("points"));
  const auto spec = filtered_noise_spectrum(optomechanical_filter_network(f), grid, exec);
  const double gop = optical_damping(f.g_alpha, f.kappa, f.omega_m, f.detuning(), f.rotating_wave);
  const ClosedFormFilter cf{1.0, optical_damping(f.g_alpha, f.kappa, f.omega_m, f.detuning(), true), f.kappa,
                            f.omega_m, f.N_th};
  Table t;
  t.columns = {"omega_over_gamma", "N_F", "N_F_closed_form"};
  for (std::size_t k = 0; k < grid.size(); ++k)
    t.rows.push_back({grid[k] - f.omega_m, spec.values[k], closed_form_filter(cf, grid[k])});
  t.notes.push_back({"omega_over_gamma", "(omega - omega_m) / gamma"});
  t.notes.push_back({"g_alpha_hz", fnum(f.g_alpha * gamma / two_pi)});
  t.notes.push_back({"gamma_op_over_gamma", fnum(gop)});
  t.notes.push_back({"intrinsic_floor", fnum(intrinsic_loss_floor(f.N_th, 1.0, f.gamma0, gop))});
  if (p.flag("fit")) {
    try {
      const auto fit = fit_lorentzian_dip(spec);
      t.notes.push_back({"fit", "omega_tilde_minus_omega_m_over_gamma=" + fnum(fit.omega_tilde - f.omega_m) +
                                    " gamma_tilde_over_gamma=" + fnum(fit.gamma_tilde) + " N0=" + fnum(fit.N0) + " plateau=" + fnum(fit.plateau) +
                                    " rms=" + fnum(fit.rms_residual)});
    } catch (const NumericalError& e) {
      t.notes.push_back({"fit", std::string("failed: ") + e.what()});
    }
  }
  return t;
}

Table multimode(const Params& p, Execution exec) {
  const double K = p.num("K_hz");
  positive(K, "K_hz");
  at_least(p.integer("n_sites"), 2, "n_sites");
  at_least(p.integer("points"), 2, "points");
  const int site = p.integer("site");
  if (site < 1 || site > p.integer("n_sites")) throw ConfigError("parameters.site: must lie in [1, n_sites]");
  MultimodeParams m;
  m.n_sites = p.integer("n_sites");
  m.K = 1.0;
  m.omega_m = p.num("omega_m_hz") / K;
  m.gamma0 = p.num("gamma0_hz") / K;
  m.kappa = p.num("kappa_hz") / K;
  m.N_th = p.num("N_th");
  positive(m.gamma0, "gamma0_hz");
  positive(m.kappa, "kappa_hz");
  const auto grid = linear_grid(m.omega_m, p.num("span_over_K"), p.integer("points"));
  Table t;
  t.columns = {"g_alpha_over_K", "omega_over_K", "occupation"};
  for (double ga : p.list("g_alpha_hz")) {
    m.g_alpha = ga / K;
    const auto s = internal_spectrum(multimode_chain_network(m), grid, "b" + std::to_string(site), exec);
    for (std::size_t k = 0; k < grid.size(); ++k) t.rows.push_back({m.g_alpha, grid[k] - m.omega_m, s.values[k]});
  }
  t.notes.push_back({"omega_over_K", "(omega - omega_m) / K"});
  std::ostringstream peaks;
  for (int n = 1; n <= m.n_sites; ++n)
    peaks << (n > 1 ? " " : "") << fnum(chain_mode_frequency(m, n) - m.omega_m);
  t.notes.push_back({"bare_mode_offsets_over_K", peaks.str()});
  return t;
}

Table transfer_run(const Params& p, Execution) {
  positive(p.num("gamma_max_hz"), "gamma_max_hz");
  positive(p.num("window_factor"), "window_factor");
  at_least(p.integer("points"), 2, "points");
  non_negative(p.num("cutoff_floor_ratio"), "cutoff_floor_ratio");
  // time in units of 1 / Gamma_max
  transfer::PulseSchedule s = transfer::analytic_schedule(1.0, p.num("window_factor"), p.num("cutoff_floor_ratio"));
  if (p.text("shape") == "iterative") {
    const int n = p.integer("design_steps");
    at_least(n, 2, "design_steps");
    std::vector<double> times(n + 1), g1(n);
    for (int k = 0; k <= n; ++k) times[k] = s.t_start + (s.t_end - s.t_start) * k / n;
    for (int k = 0; k < n; ++k) g1[k] = transfer::pulse_eq31(0.5 * (times[k] + times[k + 1]), 1.0);
    s = transfer::design_pulses_iterative(times, g1);
  }
  const int n = p.integer("points");
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = s.t_start + (s.t_end - s.t_start) * k / (n - 1);
  const auto a = transfer::evolve_amplitudes(s, grid);
  Table t;
  t.columns = {"t_times_gamma_max", "Gamma1_over_max", "Gamma2_over_max", "G1", "G2", "T", "p1", "p2",
               "dark_residual"};
  for (std::size_t k = 0; k < grid.size(); ++k)
    t.rows.push_back({grid[k], s.gamma1(grid[k]), s.gamma2(grid[k]), a.G1[k], a.G2[k], a.T[k], std::norm(a.v1[k]),
                      std::norm(a.v2[k]), transfer::dark_state_residual(a, s, k)});
  t.notes.push_back({"T_final", fnum(a.T.back())});
  t.notes.push_back({"dark_residual", "|sqrt(Gamma1) v1 + sqrt(Gamma2) v2| / sqrt(Gamma_max), left limit"});
  return t;
}

Table fidelity_run(const Params& p, Execution exec) {
  const auto Gs = p.list("gamma_max_over_gamma");
  const auto Ns = p.list("N_th");
  for (double G : Gs) positive(G, "gamma_max_over_gamma");
  for (double N : Ns) non_negative(N, "N_th");
  const double r = p.num("gamma0_over_gamma");
  non_negative(r, "gamma0_over_gamma");
  const bool filter = p.flag("filter");
  const bool me = p.text("model") == "master_equation";
  const bool sup = p.text("state") == "superposition";
  const cd a0 = sup ? cd(1.0 / std::sqrt(2.0)) : cd(0.0);
  const cd a1 = sup ? cd(1.0 / std::sqrt(2.0)) : cd(1.0);
  const double window = p.num("window_factor");
  positive(window, "window_factor");

  std::vector<std::vector<double>> rows(Gs.size() * Ns.size());
  // the master equation is already heavy per point; run the points serially
  // there and parallelize the cheap reduced model
  for_each_index(rows.size(), me ? Execution::serial : exec, [&](std::size_t k) {
    const double G = Gs[k / Ns.size()], N = Ns[k % Ns.size()];
    auto s = std::make_shared<transfer::PulseSchedule>(transfer::analytic_schedule(G, window));
    const double N_eff = filter ? transfer::effective_occupation_closed(N, r * N, 1.0, G) : N;
    const double sign = transfer::evolve_amplitudes(*s, {s->t_start, s->t_end}).T.back() < 0.0 ? -1.0 : 1.0;
    const auto target = cascade::transfer_target(a0, a1, sign);
    double F = 0.0;
    if (me) {
      cascade::CascadedModel m;
      m.gamma = 1.0;
      m.N_th = N;
      if (filter) {
        // N0 = N_th gamma_int / (gamma + gamma_int) = r N_th
        if (!(r < 1.0)) throw ConfigError("parameters.gamma0_over_gamma: must be < 1 for the master equation");
        m.gamma_intrinsic = r / (1.0 - r);
        m.gamma_op = 1.0 + m.gamma_intrinsic;
      }
      m.hilbert.fock_cutoff = cascade::default_fock_cutoff(N);
      m.schedule = s;
      const auto rho0 = cascade::initial_state(m.hilbert, a0, a1, cascade::cavity_steady_occupation(m));
      const auto tr = cascade::integrate(m, rho0, {s->t_start, s->t_end});
      F = cascade::fidelity(cascade::reduce_to_qubit(tr.states.back(), m.hilbert, 2), target);
    } else {
      const auto tr = cascade::reduced_two_qubit_model(N_eff, s, a0, a1, {s->t_start, s->t_end});
      F = cascade::fidelity(cascade::reduce_to_qubit(tr.states.back(), cascade::HilbertSpec{0, false}, 2), target);
    }
    rows[k] = {G, N, N_eff, F};
  });
  Table t;
  t.columns = {"Gamma_max_over_gamma", "N_th", "N_eff", "fidelity"};
  t.rows = std::move(rows);
  t.notes.push_back({"N_eff", filter ? "(2 gamma N0 + Gamma_max N_th) / (2 gamma + Gamma_max), N0 = gamma0 N_th / gamma"
                                     : "N_th (white noise)"});
  return t;
}

Table circulator_run(const Params& p, Execution exec) {
  const double gamma = p.num("gamma_hz");
  positive(gamma, "gamma_hz");
  at_least(p.integer("points"), 2, "points");
  circulator::CirculatorSpec s;
  s.t = p.num("t_over_gamma");
  s.phi = p.num("phi");
  s.gamma = 1.0;
  s.gamma0 = p.num("gamma0_over_gamma");
  const auto grid = linear_grid(0.0, p.num("span_over_gamma"), p.integer("points"));
  const auto pr = circulator::scattering_probabilities(s, grid, exec);
  Table t;
  t.columns = {"delta_omega_over_gamma", "P_11", "P_12", "P_13", "P_loss"};
  for (std::size_t k = 0; k < grid.size(); ++k)
    t.rows.push_back({grid[k], pr.P[k][0], pr.P[k][1], pr.P[k][2], pr.loss[k]});
  t.notes.push_back({"P_1j", "|S_{1->j}|^2 with b_{j,out} = S_{1->j} b_{1,in}"});
  return t;
}

Table waveguide_run(const Params& p, Execution exec) {
  const double gamma = p.num("gamma_hz");
  positive(gamma, "gamma_hz");
  at_least(p.integer("points"), 2, "points");
  FilterParams f;
  f.gamma = 1.0;
  f.kappa = p.num("kappa_hz") / gamma;
  f.omega_m = p.num("omega_m_hz") / gamma;
  f.N_th = p.num("N_th");
  positive(f.kappa, "kappa_hz");
  f.g_alpha = impedance_matched_coupling(1.0, 0.0, f.kappa);
  const auto drive =
      filtered_noise_spectrum(optomechanical_filter_network(f), linear_grid(f.omega_m, p.num("span_over_gamma"),
                                                                            p.integer("points")), exec);
  waveguide::ChainSpec chain;
  chain.coupling_K = p.num("K_over_gamma");
  positive(chain.coupling_K, "K_over_gamma");
  chain.omega0 = f.omega_m - chain.coupling_K;
  chain.intrinsic_gamma0 = p.num("gamma0_over_gamma");
  non_negative(chain.intrinsic_gamma0, "gamma0_over_gamma");
  chain.bath_occupation = f.N_th;
  int max_site = 0;
  for (double s : p.list("sites")) {
    if (s < 0.0 || s != std::floor(s)) throw ConfigError("parameters.sites: entries must be integers >= 0");
    max_site = std::max(max_site, static_cast<int>(s));
  }
  chain.n_sites = max_site + 1;
  const auto ch = waveguide::continuum_parameters(chain);
  Table t;
  t.columns = {"site", "z_over_l", "omega_over_gamma", "N_model", "N_oracle"};
  for (double sd : p.list("sites")) {
    const int site = static_cast<int>(sd);
    const double z = site * chain.lattice_a;
    const auto model = waveguide::propagate_spectrum(drive, z, ch);
    std::vector<double> oracle(drive.grid.size(), NAN);
    if (p.flag("oracle")) oracle = waveguide::simulate_lossy_chain(chain, drive, site, exec).values;
    for (std::size_t k = 0; k < drive.grid.size(); ++k)
      t.rows.push_back({sd, z / ch.mean_free_path, drive.grid[k] - f.omega_m, model.values[k], oracle[k]});
  }
  t.notes.push_back({"mean_free_path_sites", fnum(ch.mean_free_path / chain.lattice_a)});
  return t;
}

Table design_run(const Params& p, Execution) {
  const double gamma = p.num("gamma_hz");
  positive(gamma, "gamma_hz");
  const double wm = p.num("omega_m_hz");
  circulator::OpticalDriveDesign d;
  d.delta1 = d.delta2 = -wm + p.num("delta_offset_hz");
  d.J = p.num("J_hz");
  d.kappa = p.num("kappa_hz");
  d.g = p.num("g_hz");
  positive(d.g, "g_hz");
  const auto sol = circulator::solve_drives_for_target(p.num("t_over_gamma") * gamma, p.num("phi"), d, wm,
                                                       p.num("alpha_max"));
  const auto e = circulator::effective_coupling(sol, wm);
  Table t;
  t.columns = {"E1_hz", "E2_hz", "phi1", "phi2", "alpha_abs", "g_alpha_hz", "t_eff_over_gamma", "phi_eff",
               "gamma_op_over_gamma", "Delta_plus_hz", "Delta_minus_hz"};
  t.rows.push_back({sol.E1 / two_pi, sol.E2 / two_pi, sol.phi1, sol.phi2, std::abs(e.alpha1),
                    sol.g * std::abs(e.alpha1) / two_pi, e.t_eff / gamma, e.phi, e.gamma_op / gamma,
                    e.Delta_plus / two_pi, e.Delta_minus / two_pi});
  return t;
}

Table nv_run(const Params& p, Execution exec) {
  nv::RamanParams r;
  r.lambda = p.num("lambda_hz");
  r.omega_m = p.num("omega_m_hz");
  r.Omega0 = p.num("Omega0_hz");
  r.Omega1 = p.num("Omega1_hz");
  r.Gamma_e = p.num("Gamma_e_hz");
  r.validate();
  const int n = p.integer("points");
  at_least(n, 1, "points");
  const double lo = p.num("Delta_min_over_omega_m"), hi = p.num("Delta_max_over_omega_m");
  std::vector<double> grid(n);
  for (int k = 0; k < n; ++k) grid[k] = r.omega_m * (n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
  std::vector<nv::SpinPhononCoupling> c(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    nv::RamanParams q = r;
    q.Delta = grid[k];
    c[k] = nv::effective_spin_phonon(q);
  });
  Table t;
  t.columns = {"Delta_over_omega_m", "lambda_eff_hz", "lambda_phase", "Gamma_eff_0_hz", "Gamma_eff_1_hz", "ratio"};
  for (std::size_t k = 0; k < grid.size(); ++k)
    t.rows.push_back({grid[k] / r.omega_m, c[k].lambda_eff / two_pi, c[k].lambda_phase, c[k].Gamma_eff_0 / two_pi,
                      c[k].Gamma_eff_1 / two_pi, c[k].ratio});
  t.notes.push_back({"ratio", "|lambda_eff| / Gamma_bar_eff"});
  return t;
}

}  // namespace

Table run_experiment(const RunConfig& c, Execution exec) {
  take_warnings();
  const Params p(c.parameters);
  Table t;
  if (c.experiment == "filter") t = filter(p, exec);
  else if (c.experiment == "multimode") t = multimode(p, exec);
  else if (c.experiment == "transfer") t = transfer_run(p, exec);
  else if (c.experiment == "fidelity") t = fidelity_run(p, exec);
  else if (c.experiment == "circulator") t = circulator_run(p, exec);
  else if (c.experiment == "waveguide") t = waveguide_run(p, exec);
  else if (c.experiment == "design") t = design_run(p, exec);
  else if (c.experiment == "nv") t = nv_run(p, exec);
  else throw ConfigError("experiment: unknown experiment '" + c.experiment + "'");
  for (const auto& w : take_warnings()) t.notes.push_back({"warning", w});
  return t;
}

}  // namespace phononet::cli
