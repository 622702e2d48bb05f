#pragma once

#include "phononet/execution.hpp"
#include "phononet/linear_network.hpp"

namespace phononet::waveguide {

struct ChainSpec {
  int n_sites = 100;
  double omega0 = 1.0;
  double coupling_K = 0.01;  // K = k / (m omega0)
  double lattice_a = 1.0;
  double intrinsic_gamma0 = 0.0;
  double bath_occupation = 0.0;
};

struct ContinuumChannel {
  double sound_speed_c = 0.0;
  double omega_offset = 0.0;  // omega0 - (pi/2 - 1) K
  double bandwidth = 0.0;     // 2 K
  double mean_free_path = 0.0;
  double bath_occupation = 0.0;
};

// omega_n = sqrt(omega0^2 + 2 K omega0 (1 - cos(2 pi n / N))), n in (-N/2, N/2].
double dispersion_exact(const ChainSpec& chain, int n);
// Same with continuous quasi-momentum q a in (-pi, pi].
double dispersion_exact_q(const ChainSpec& chain, double qa);
double dispersion_tight_binding(const ChainSpec& chain, double qa);
double dispersion_linear(const ChainSpec& chain, double qa);

ContinuumChannel continuum_parameters(const ChainSpec& chain);

// gamma = 2 K_loc^2 / bandwidth.
double waveguide_coupling_rate(double K_loc, double bandwidth);

// Rethermalization along the channel:
// N(w, z) = exp(-z/l) N(w, 0) + N_th (1 - exp(-z/l)).
NoiseSpectrum propagate_spectrum(const NoiseSpectrum& at_origin, double z, const ContinuumChannel& channel);

// Microscopic oracle: open chain of sites 0..site in the rotating-wave
// picture (on-site omega0 + K, hopping K/2, intrinsic gamma0 at N_th). Both
// ends carry impedance-matched ports (rate K) so the chain behaves as a
// reflectionless piece of waveguide near mid-band. The drive spectrum gives
// the input occupation at site 0 per frequency; the return value is the
// output occupation at `site`, a distance site * a downstream.
NoiseSpectrum simulate_lossy_chain(const ChainSpec& chain, const NoiseSpectrum& drive, int site,
                                   Execution exec = Execution::serial);

// The same open chain as a LinearNetwork (for small cross-checks).
LinearNetwork lossy_chain_network(const ChainSpec& chain, int site, double drive_occupation);

}  // namespace phononet::waveguide
