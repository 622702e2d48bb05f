#include <gtest/gtest.h>

#include <cmath>

#include "phononet/errors.hpp"
#include "phononet/noise_filter.hpp"

using namespace phononet;

TEST(NoiseFilter, ClosedFormMatchesRwaNetwork) {
  FilterParams p;
  p.gamma = 1.0;
  p.kappa = 300.0;
  p.omega_m = 1200.0;
  p.N_th = 40.0;
  p.g_alpha = impedance_matched_coupling(p.gamma, 0.0, p.kappa);
  const auto grid = linear_grid(p.omega_m, 5.0, 101);
  const auto num = filtered_noise_spectrum(optomechanical_filter_network(p), grid);
  const ClosedFormFilter cf{1.0, 1.0, p.kappa, p.omega_m, p.N_th};
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(num.values[k], closed_form_filter(cf, grid[k]), 1e-9);
  EXPECT_NEAR(closed_form_filter(cf, p.omega_m), 0.0, 1e-12);
}

TEST(NoiseFilter, ClosedFormApproachesThermalFarOff) {
  const ClosedFormFilter cf{1.0, 1.0, 300.0, 1200.0, 40.0};
  EXPECT_NEAR(closed_form_filter(cf, 1200.0 + 5000.0), 40.0, 1e-3);
  // unmatched coupling leaves a finite floor
  const ClosedFormFilter un{1.0, 3.0, 300.0, 1200.0, 40.0};
  EXPECT_NEAR(closed_form_filter(un, 1200.0), 40.0 * (1.0 - 12.0 / 16.0), 1e-12);
}

TEST(NoiseFilter, IntrinsicLossFloorMatchesNetwork) {
  FilterParams p;
  p.gamma0 = 0.005;
  p.g_alpha = impedance_matched_coupling(p.gamma, p.gamma0, p.kappa);
  const auto s = filtered_noise_spectrum(optomechanical_filter_network(p), {p.omega_m - 0.01, p.omega_m, p.omega_m + 0.01});
  const double gop = optical_damping(p.g_alpha, p.kappa, p.omega_m, p.detuning(), true);
  EXPECT_NEAR(gop, p.gamma + p.gamma0, 1e-12);
  // the residual reflection adds N_th (1 - 2 gamma / (gamma_op + gamma + gamma0))^2 on top
  EXPECT_NEAR(s.values[1] / intrinsic_loss_floor(p.N_th, p.gamma, p.gamma0, gop), 1.0, 0.01);
}

TEST(NoiseFilter, FullMatchingCompensatesStokes) {
  const double ga = impedance_matched_coupling_full(1.0, 0.0, 300.0, 1200.0);
  EXPECT_NEAR(optical_damping(ga, 300.0, 1200.0, -1200.0, false), 1.0, 1e-12);
  EXPECT_GT(ga, impedance_matched_coupling(1.0, 0.0, 300.0));
}

TEST(NoiseFilter, BadParametersThrow) {
  FilterParams p;
  p.gamma = 0.0;
  EXPECT_THROW(optomechanical_filter_network(p), ConfigError);
}

TEST(Cooling, WeakCouplingLorentzianMatchesNetwork) {
  CoolingParams p;
  p.rotating_wave = false;
  const auto net = single_mode_cooling_network(p);
  const auto s = internal_spectrum(net, linear_grid(p.omega_m, 1e-3, 3), "b");
  const double peak = cooling_lorentzian(p, p.omega_m);
  EXPECT_NEAR(s.values[1] / peak, 1.0, 0.02);
  EXPECT_LT(cooled_occupation(p), p.N_th);
}

TEST(Multimode, BareChainPeaksSitAtChainModes) {
  MultimodeParams p;
  p.n_sites = 6;
  p.K = 1.0;
  p.gamma0 = 0.01;
  const auto net = multimode_chain_network(p);
  for (int n = 1; n <= p.n_sites; ++n) {
    const double w = chain_mode_frequency(p, n);
    const auto s = internal_spectrum(net, {w}, "b2");
    EXPECT_NEAR(s.values[0] / chain_peak_height(p, n, 2), 1.0, 0.02) << "mode " << n;
  }
  double norm = 0.0;
  for (int j = 1; j <= p.n_sites; ++j) norm += std::pow(chain_mode_amplitude(p.n_sites, 3, j), 2);
  EXPECT_NEAR(norm, 1.0, 1e-12);
  p.n_sites = 1;
  EXPECT_THROW(multimode_chain_network(p), ConfigError);
}
