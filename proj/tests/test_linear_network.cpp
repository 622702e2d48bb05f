#include <gtest/gtest.h>

#include <cmath>

#include "phononet/errors.hpp"
#include "phononet/linear_network.hpp"
#include "phononet/noise_filter.hpp"

using namespace phononet;

namespace {
const cd I(0.0, 1.0);

LinearNetwork single_cavity(double rate, double gamma0 = 0.0, double N = 0.0) {
  LinearNetwork n;
  n.modes.push_back({"b", ModeKind::mechanical, 0.0, gamma0, N});
  n.ports.push_back({"b", rate, N, "wg"});
  return n;
}
}  // namespace

TEST(DriftMatrix, MatchesFourByFourOptomechanicalBlock) {
  FilterParams p;
  p.gamma = 1.3;
  p.gamma0 = 0.2;
  p.kappa = 7.0;
  p.omega_m = 50.0;
  p.delta = -48.0;
  p.g_alpha = 2.5;
  p.rotating_wave = false;
  const auto d = build_drift_matrix(optomechanical_filter_network(p));
  const double ga = p.g_alpha, dl = *p.delta, g = p.gamma0 + p.gamma;
  CMat want(4, 4);
  want << -I * dl + p.kappa, 0.0, I * ga, I * ga,
          0.0, I * dl + p.kappa, -I * ga, -I * ga,
          I * ga, I * ga, I * p.omega_m + g / 2.0, 0.0,
          -I * ga, -I * ga, 0.0, -I * p.omega_m + g / 2.0;
  EXPECT_LT((d.M - want).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(particle_hole_defect(d.M), 1e-14);
}

TEST(DriftMatrix, RotatingWaveZeroesAnomalousBlocks) {
  FilterParams p;
  p.g_alpha = 3.0;
  const auto d = build_drift_matrix(optomechanical_filter_network(p));
  EXPECT_EQ(d.M(0, 3), cd(0.0));
  EXPECT_EQ(d.M(2, 1), cd(0.0));
  EXPECT_EQ(d.M.rows(), 4);
}

TEST(DriftMatrix, ValidationErrors) {
  LinearNetwork n = single_cavity(1.0);
  n.couplings.push_back({"b", "x", 1.0, true});
  EXPECT_THROW(build_drift_matrix(n), ConfigError);
  n = single_cavity(1.0);
  n.modes.push_back(n.modes[0]);
  EXPECT_THROW(build_drift_matrix(n), ConfigError);
  n = single_cavity(-1.0);
  EXPECT_THROW(build_drift_matrix(n), ConfigError);
  n = single_cavity(1.0, -0.1);
  EXPECT_THROW(build_drift_matrix(n), ConfigError);
  EXPECT_THROW(build_drift_matrix(LinearNetwork{}), ConfigError);
}

TEST(DriftMatrix, ParametricInstabilityIsReported) {
  // blue-detuned drive with strong two-mode squeezing
  FilterParams p;
  p.gamma = 1.0;
  p.kappa = 10.0;
  p.omega_m = 100.0;
  p.delta = 100.0;
  p.g_alpha = 20.0;
  p.rotating_wave = false;
  try {
    build_drift_matrix(optomechanical_filter_network(p));
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("eigenvalue"), std::string::npos);
  }
}

TEST(Scattering, SingleSidedCavityReflectsWithMinusOneOnResonance) {
  const auto sc = scattering(single_cavity(2.0), 0.0);
  EXPECT_NEAR(std::abs(sc.S(0, 0) + 1.0), 0.0, 1e-14);
  const auto off = scattering(single_cavity(2.0), 1e4);
  EXPECT_NEAR(std::abs(off.S(0, 0) - 1.0), 0.0, 1e-3);
}

TEST(Scattering, SingularSusceptibilityThrows) {
  LinearNetwork n;
  n.modes.push_back({"b", ModeKind::mechanical, 1.0, 0.0, 0.0});
  n.modes.push_back({"c", ModeKind::mechanical, 1.0, 0.0, 0.0});
  n.ports.push_back({"b", 1.0, 0.0, ""});
  // c is lossless and uncoupled: M - i omega is singular at omega = 1
  EXPECT_THROW(scattering(n, 1.0), NumericalError);
}

TEST(Scattering, LosslessRwaIsUnitaryAndMatchesHalfSolve) {
  LinearNetwork n;
  for (const char* l : {"a", "b", "c"}) n.modes.push_back({l, ModeKind::mechanical, 0.3, 0.0, 0.0});
  n.couplings.push_back({"b", "a", std::polar(0.7, 0.4), true});
  n.couplings.push_back({"c", "b", 0.5, true});
  for (const char* l : {"a", "b", "c"}) n.ports.push_back({l, 1.0, 0.0, ""});
  for (double w : {-3.0, -0.2, 0.0, 0.9, 4.0}) {
    const auto full = scattering(n, w);
    const auto half = scattering_rwa_half(n, w);
    EXPECT_LT((full.S.adjoint() * full.S - CMat::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-12);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(full.S(2 * j, 2 * k) - half.S(j, k)), 1e-13);
  }
}

TEST(Scattering, NonRwaLosslessIsPseudoUnitary) {
  FilterParams p;
  p.gamma = 1.0;
  p.kappa = 5.0;
  p.omega_m = 30.0;
  p.g_alpha = 2.0;
  p.rotating_wave = false;
  const auto net = optomechanical_filter_network(p);
  CMat eta = CMat::Zero(4, 4);
  for (int k = 0; k < 4; ++k) eta(k, k) = k % 2 == 0 ? 1.0 : -1.0;
  for (double w : {28.0, 30.0, 31.5}) {
    const auto sc = scattering(net, w);
    EXPECT_LT((sc.S * eta * sc.S.adjoint() - eta).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(Scattering, FluxBalanceWithIntrinsicLoss) {
  LinearNetwork n = single_cavity(1.0, 0.25);
  n.modes.push_back({"c", ModeKind::mechanical, 0.1, 0.05, 0.0});
  n.couplings.push_back({"c", "b", 0.4, true});
  n.ports.push_back({"c", 0.7, 0.0, "c"});
  for (double w : {-1.0, 0.0, 0.3}) {
    const auto sc = scattering(n, w);
    const double out = std::norm(sc.S(0, 0)) + std::norm(sc.S(2, 0));
    const CMat Sd = sc.S_int;
    double lost = 0.0;
    // column flux of port 0 into the intrinsic channels, from S S^dag + S_int S_int^dag = 1
    const CMat T = sc.S * sc.S.adjoint() + Sd * Sd.adjoint();
    EXPECT_NEAR(T(0, 0).real(), 1.0, 1e-12);
    lost = 1.0 - out;
    EXPECT_GT(lost, 0.0);
  }
}

TEST(Spectrum, ThermalCavityIsLorentzian) {
  // single cavity, port and bath both at N: output equals N everywhere,
  // internal spectrum is (gamma N) / (w^2 + gamma^2/4)
  const double N = 3.0;
  const auto net = single_cavity(0.8, 0.2, N);
  const auto grid = linear_grid(0.0, 2.0, 41);
  const auto out = output_spectrum(net, grid, "wg");
  const auto in = internal_spectrum(net, grid, "b");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_NEAR(out.values[k], N, 1e-12);
    EXPECT_NEAR(in.values[k], N / (grid[k] * grid[k] + 0.25), 1e-12);
  }
}

TEST(Spectrum, SerialAndParallelAreBitIdentical) {
  FilterParams p;
  p.g_alpha = impedance_matched_coupling(1.0, 0.0, p.kappa);
  const auto net = optomechanical_filter_network(p);
  const auto grid = linear_grid(p.omega_m, 5.0, 257);
  const auto a = filtered_noise_spectrum(net, grid, Execution::serial);
  const auto b = filtered_noise_spectrum(net, grid, Execution::parallel);
  EXPECT_EQ(a.values, b.values);
}

TEST(Spectrum, GridErrors) {
  const auto net = single_cavity(1.0);
  EXPECT_THROW(output_spectrum(net, {}, "wg"), ConfigError);
  EXPECT_THROW(output_spectrum(net, {1.0, 0.0}, "wg"), ConfigError);
  EXPECT_THROW(output_spectrum(net, {0.0}, "nope"), ConfigError);
  EXPECT_THROW(linear_grid(0.0, 1.0, 1), ConfigError);
}

TEST(LorentzFit, RecoversSyntheticDip) {
  const LorentzFit truth{10.2, 0.7, 0.05, 12.0, 0.0};
  NoiseSpectrum s;
  s.grid = linear_grid(10.0, 4.0, 401);
  for (double w : s.grid) s.values.push_back(lorentzian_dip(truth, w));
  const auto free = fit_lorentzian_dip(s);
  EXPECT_NEAR(free.omega_tilde, truth.omega_tilde, 1e-9);
  EXPECT_NEAR(free.gamma_tilde, truth.gamma_tilde, 1e-9);
  EXPECT_NEAR(free.N0, truth.N0, 1e-9);
  EXPECT_NEAR(free.plateau, truth.plateau, 1e-9);
  const auto fixed = fit_lorentzian_dip(s, 12.0);
  EXPECT_NEAR(fixed.N0, truth.N0, 1e-9);
}

TEST(LorentzFit, MonotoneSpectrumHasNoDip) {
  NoiseSpectrum s;
  s.grid = linear_grid(0.0, 1.0, 21);
  for (double w : s.grid) s.values.push_back(w);
  EXPECT_THROW(fit_lorentzian_dip(s), NumericalError);
}
