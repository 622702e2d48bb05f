#pragma once

#include <optional>
#include <vector>

#include "phononet/linear_network.hpp"

namespace phononet {

// Optomechanical noise filter: one optical mode "a" (field decay kappa, port
// rate 2 kappa, vacuum) coupled to a localized mechanical mode "b" that is
// side coupled to a waveguide port "waveguide" with rate gamma and thermal
// input N_th. The intrinsic loss gamma0 draws from the same N_th bath.
struct FilterParams {
  double gamma = 1.0;
  double gamma0 = 0.0;
  double kappa = 300.0;
  double omega_m = 1200.0;
  std::optional<double> delta;  // laser detuning, defaults to -omega_m
  double g_alpha = 0.0;
  double N_th = 40.0;
  bool rotating_wave = true;

  double detuning() const { return delta ? *delta : -omega_m; }
};

LinearNetwork optomechanical_filter_network(const FilterParams& p);

// g|alpha| for gamma_op = gamma + gamma0 with gamma_op = 2 g^2 alpha^2 / kappa.
double impedance_matched_coupling(double gamma, double gamma0, double kappa);

// Same matching, but against the optical damping of the full linearized
// model, which subtracts the Stokes (heating) rate from the cooling rate.
double impedance_matched_coupling_full(double gamma, double gamma0, double kappa, double omega_m);

// Optical damping of the mechanics: anti-Stokes minus Stokes rate. With
// rotating_wave only the anti-Stokes part is kept.
double optical_damping(double g_alpha, double kappa, double omega_m, double delta, bool rotating_wave);

// Closed-form beam-splitter filter spectrum.
struct ClosedFormFilter {
  double gamma = 1.0;
  double gamma_op = 1.0;
  double kappa = 300.0;
  double omega_m = 1200.0;
  double N_th = 40.0;
};
double closed_form_filter(const ClosedFormFilter& p, double omega);

// Floor of the dip due to intrinsic loss, 4 N_th gamma gamma0 / (gamma_op + gamma + gamma0)^2.
double intrinsic_loss_floor(double N_th, double gamma, double gamma0, double gamma_op);

// Single-mode cooling: mechanical mode with intrinsic loss only (no waveguide port).
struct CoolingParams {
  double gamma0 = 0.1;
  double kappa = 50.0;
  double omega_m = 1000.0;
  std::optional<double> delta;
  double g_alpha = 5.0;
  double N_th = 100.0;
  bool rotating_wave = false;
};
LinearNetwork single_mode_cooling_network(const CoolingParams& p);

// Weak-coupling Lorentzian for the cooled mode and its occupation N-bar.
double cooling_lorentzian(const CoolingParams& p, double omega);
double cooled_occupation(const CoolingParams& p);

// Chain b1..bN (nearest-neighbour tunneling K) with the optical mode on b1.
struct MultimodeParams {
  int n_sites = 10;
  double K = 1.0;
  double omega_m = 1000.0;
  double gamma0 = 0.05;
  double kappa = 0.5;
  std::optional<double> delta;
  double g_alpha = 0.0;
  double N_th = 1.0;
};
LinearNetwork multimode_chain_network(const MultimodeParams& p);

// Bare chain eigenfrequencies and the predicted peak heights at site j
// (1-based) for g alpha = 0.
double chain_mode_frequency(const MultimodeParams& p, int n);
double chain_mode_amplitude(int n_sites, int n, int j);
double chain_peak_height(const MultimodeParams& p, int n, int site);

}  // namespace phononet
