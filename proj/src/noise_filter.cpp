#include "phononet/noise_filter.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phononet/errors.hpp"

namespace phononet {

LinearNetwork optomechanical_filter_network(const FilterParams& p) {
  if (!(p.gamma > 0.0) || !(p.kappa > 0.0)) throw ConfigError("filter: gamma and kappa must be > 0");
  LinearNetwork net;
  net.modes.push_back({"a", ModeKind::optical, -p.detuning(), 0.0, 0.0});
  net.modes.push_back({"b", ModeKind::mechanical, p.omega_m, p.gamma0, p.N_th});
  net.couplings.push_back({"a", "b", cd(p.g_alpha, 0.0), p.rotating_wave});
  net.ports.push_back({"a", 2.0 * p.kappa, 0.0, "optical"});
  net.ports.push_back({"b", p.gamma, p.N_th, "waveguide"});
  return net;
}

double impedance_matched_coupling(double gamma, double gamma0, double kappa) {
  return std::sqrt((gamma + gamma0) * kappa / 2.0);
}

double impedance_matched_coupling_full(double gamma, double gamma0, double kappa, double omega_m) {
  const double eps = kappa * kappa / (kappa * kappa + 4.0 * omega_m * omega_m);
  return impedance_matched_coupling(gamma, gamma0, kappa) / std::sqrt(1.0 - eps);
}

double optical_damping(double g_alpha, double kappa, double omega_m, double delta, bool rotating_wave) {
  const double g2 = g_alpha * g_alpha;
  const double anti_stokes = 2.0 * kappa * g2 / (kappa * kappa + (omega_m + delta) * (omega_m + delta));
  if (rotating_wave) return anti_stokes;
  const double stokes = 2.0 * kappa * g2 / (kappa * kappa + (omega_m - delta) * (omega_m - delta));
  return anti_stokes - stokes;
}

double closed_form_filter(const ClosedFormFilter& p, double omega) {
  const double x = omega - p.omega_m;
  const double k2 = p.kappa * p.kappa;
  const double s = p.gamma_op + p.gamma;
  const double b = p.gamma - 2.0 * p.kappa;
  const double den = k2 * s * s + b * b * x * x + 4.0 * x * x * x * x;
  return p.N_th * (1.0 - 4.0 * k2 * p.gamma_op * p.gamma / den);
}

double intrinsic_loss_floor(double N_th, double gamma, double gamma0, double gamma_op) {
  const double s = gamma_op + gamma + gamma0;
  return 4.0 * N_th * gamma * gamma0 / (s * s);
}

LinearNetwork single_mode_cooling_network(const CoolingParams& p) {
  LinearNetwork net;
  const double delta = p.delta ? *p.delta : -p.omega_m;
  net.modes.push_back({"a", ModeKind::optical, -delta, 0.0, 0.0});
  net.modes.push_back({"b", ModeKind::mechanical, p.omega_m, p.gamma0, p.N_th});
  net.couplings.push_back({"a", "b", cd(p.g_alpha, 0.0), p.rotating_wave});
  net.ports.push_back({"a", 2.0 * p.kappa, 0.0, "optical"});
  return net;
}

double cooled_occupation(const CoolingParams& p) {
  const double gop = 2.0 * p.g_alpha * p.g_alpha / p.kappa;
  return p.N_th * p.gamma0 / (p.gamma0 + gop) + p.kappa * p.kappa / (4.0 * p.omega_m * p.omega_m);
}

double cooling_lorentzian(const CoolingParams& p, double omega) {
  const double gop = 2.0 * p.g_alpha * p.g_alpha / p.kappa;
  const double w = p.gamma0 + gop;
  const double x = omega - p.omega_m;
  return w * cooled_occupation(p) / (x * x + w * w / 4.0);
}

LinearNetwork multimode_chain_network(const MultimodeParams& p) {
  if (p.n_sites < 2) throw ConfigError("multimode chain needs at least 2 sites");
  LinearNetwork net;
  const double delta = p.delta ? *p.delta : -p.omega_m;
  net.modes.push_back({"a", ModeKind::optical, -delta, 0.0, 0.0});
  for (int j = 1; j <= p.n_sites; ++j)
    net.modes.push_back({"b" + std::to_string(j), ModeKind::mechanical, p.omega_m, p.gamma0, p.N_th});
  // H contains -K (b_i b_j^dag + h.c.)
  for (int j = 1; j < p.n_sites; ++j)
    net.couplings.push_back({"b" + std::to_string(j + 1), "b" + std::to_string(j), cd(-p.K, 0.0), true});
  net.couplings.push_back({"a", "b1", cd(p.g_alpha, 0.0), true});
  net.ports.push_back({"a", 2.0 * p.kappa, 0.0, "optical"});
  return net;
}

double chain_mode_frequency(const MultimodeParams& p, int n) {
  return p.omega_m - 2.0 * p.K * std::cos(n * std::numbers::pi / (p.n_sites + 1));
}

double chain_mode_amplitude(int n_sites, int n, int j) {
  return std::sqrt(2.0 / (n_sites + 1)) * std::sin(n * j * std::numbers::pi / (n_sites + 1));
}

double chain_peak_height(const MultimodeParams& p, int n, int site) {
  const double c = chain_mode_amplitude(p.n_sites, n, site);
  return 4.0 * p.N_th / p.gamma0 * c * c;
}

}  // namespace phononet
