#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phononet/execution.hpp"

namespace phononet {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

enum class ModeKind { optical, mechanical };

// All rates and frequencies are angular frequencies in whatever unit the
// caller picks (the tests mostly use gamma = 1). For optical modes
// `frequency` is the detuning term -delta of the rotating-frame Hamiltonian.
struct ModeSpec {
  std::string label;
  ModeKind kind = ModeKind::mechanical;
  double frequency = 0.0;
  double intrinsic_rate = 0.0;
  double bath_occupation = 0.0;
};

// H contains amplitude * a^dag b + h.c. and, without the rotating-wave
// approximation, also amplitude * a^dag b^dag + h.c.
struct CouplingSpec {
  std::string mode_a;
  std::string mode_b;
  cd amplitude{0.0, 0.0};
  bool rotating_wave = true;
};

// b_out = b_in + sqrt(rate) b. Optical cavities with field decay kappa use rate 2 kappa.
struct PortSpec {
  std::string mode;
  double rate = 0.0;
  double input_occupation = 0.0;
  std::string label;  // optional, defaults to the mode label
};

struct LinearNetwork {
  std::vector<ModeSpec> modes;
  std::vector<CouplingSpec> couplings;
  std::vector<PortSpec> ports;

  // Throws ConfigError for dangling references, duplicate labels, negative rates.
  void validate() const;
  int mode_index(const std::string& label) const;  // -1 if absent
  int port_index(const std::string& label) const;  // matches label, then mode
  bool all_rotating_wave() const;
};

// Drift matrix in the doubled basis (a1, a1^dag, a2, a2^dag, ...):
//   dA/dt = -M A - L^T A_in - L0^T B_in
//   A_out = A_in + L A
// L has one (annihilation, creation) row pair per port, L0 one pair per
// intrinsic channel (every mode with intrinsic_rate > 0).
struct DriftMatrix {
  CMat M;
  Eigen::MatrixXd L;
  Eigen::MatrixXd L0;
  std::vector<double> port_occupation;
  std::vector<double> intrinsic_occupation;
  std::vector<int> intrinsic_mode;  // mode index of each intrinsic channel
  int n_modes = 0;

  int dim() const { return 2 * n_modes; }
  int n_ports() const { return static_cast<int>(port_occupation.size()); }
  int n_intrinsic() const { return static_cast<int>(intrinsic_occupation.size()); }
};

// Validates, assembles and checks particle-hole symmetry and stability.
DriftMatrix build_drift_matrix(const LinearNetwork& network);

// max |M - Sigma conj(M) Sigma| where Sigma swaps each (x, x^dag) pair.
double particle_hole_defect(const CMat& M);

// X(omega) = (M - i omega)^-1. Throws NumericalError if singular.
CMat susceptibility(const DriftMatrix& drift, double omega);

// Relative residual ||(M - i omega) X - I|| / ||I||.
double susceptibility_residual(const DriftMatrix& drift, double omega, const CMat& X);

struct Scattering {
  CMat S;      // 2P x 2P, port in -> port out
  CMat S_int;  // 2P x 2Nint, intrinsic baths -> port out
};

Scattering scattering(const DriftMatrix& drift, double omega);
Scattering scattering(const LinearNetwork& network, double omega);

// Annihilation-only scattering from the half-dimension solve; valid only for
// all-RWA networks. Used to cross-check the doubled solve.
Scattering scattering_rwa_half(const LinearNetwork& network, double omega);

// Normal-ordered occupation <c_out^dag c_out> of port p for thermal inputs.
// Creation-operator input channels contribute with n + 1.
double port_output_occupation(const DriftMatrix& drift, const Scattering& sc, int port);

struct LorentzFit {
  double omega_tilde = 0.0;
  double gamma_tilde = 0.0;  // half width of the dip
  double N0 = 0.0;
  double plateau = 0.0;
  double rms_residual = 0.0;
};

struct NoiseSpectrum {
  std::vector<double> grid;
  std::vector<double> values;
  std::optional<LorentzFit> fit;
};

std::vector<double> linear_grid(double center, double half_span, int points);

// <b^dag(omega) b(omega)> of one mode.
NoiseSpectrum internal_spectrum(const LinearNetwork& network, const std::vector<double>& grid,
                                const std::string& mode, Execution exec = Execution::serial);

// Output occupation of a named port; the default picks the first port that
// is attached to a mechanical mode (the reflected waveguide field).
NoiseSpectrum output_spectrum(const LinearNetwork& network, const std::vector<double>& grid,
                              const std::string& port, Execution exec = Execution::serial);
NoiseSpectrum filtered_noise_spectrum(const LinearNetwork& network,
                                      const std::vector<double>& grid,
                                      Execution exec = Execution::serial);

// Least-squares fit of N(w) = P - (P - N0) g^2 / ((w - w0)^2 + g^2).
// With `fixed_plateau` the plateau P is held; otherwise it is fitted too.
LorentzFit fit_lorentzian_dip(const NoiseSpectrum& spectrum,
                              std::optional<double> fixed_plateau = std::nullopt);

double lorentzian_dip(const LorentzFit& p, double omega);

}  // namespace phononet
