#pragma once

#include <vector>

#include "phononet/execution.hpp"

namespace phononet::nv {

// Raman-dressed NV spin: two ground levels |0>, |1> driven by Rabi
// frequencies Omega0, Omega1 through an excited level at mean detuning Delta,
// with Delta_0 = Delta + omega_m/2 and Delta_1 = Delta - omega_m/2.
struct RamanParams {
  double lambda = 1.0;
  double omega_m = 1.0;
  double Omega0 = 0.0;
  double Omega1 = 0.0;
  double Delta = 0.0;
  double Gamma_e = 1.0;
  void validate() const;
};

struct SpinPhononCoupling {
  double lambda_eff = 0.0;        // signed value lambda Omega0 Omega1 / (Delta^2 - omega_m^2/4)
  double lambda_magnitude = 0.0;  // |lambda_eff|
  double lambda_phase = 0.0;      // 0 or pi
  double Gamma_eff_0 = 0.0;
  double Gamma_eff_1 = 0.0;
  double Gamma_bar = 0.0;
  double ratio = 0.0;             // |lambda_eff| / Gamma_bar
};

SpinPhononCoupling effective_spin_phonon(const RamanParams& p);

struct FigureOfMerit {
  std::vector<double> Delta;
  std::vector<double> ratio;
  std::size_t argmax = 0;
};

FigureOfMerit figure_of_merit_sweep(RamanParams p, const std::vector<double>& Delta_grid,
                                    Execution exec = Execution::serial);

}  // namespace phononet::nv
