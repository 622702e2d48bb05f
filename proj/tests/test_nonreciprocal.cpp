#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phononet/errors.hpp"
#include "phononet/nonreciprocal.hpp"
#include "phononet/warnings.hpp"

using namespace phononet;
using namespace phononet::circulator;
constexpr double pi = std::numbers::pi;

TEST(Circulator, UncoupledNodesReflect) {
  CirculatorSpec s;
  s.t = 0.0;
  const auto S = port_scattering(s, 0.0);
  EXPECT_LT((S + Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Circulator, LosslessIsUnitaryAtAllPhases) {
  CirculatorSpec s;
  for (double phi : {0.0, 0.3, pi / 2, -2.0}) {
    s.phi = phi;
    for (double w : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      const Eigen::Matrix3cd S = port_scattering(s, w);
      EXPECT_LT((S.adjoint() * S - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Circulator, PhaseReversalSwapsRouting) {
  CirculatorSpec s;
  s.phi = pi / 2;
  const std::vector<double> w{-1.0, -0.2, 0.0, 0.4};
  const auto f = scattering_probabilities(s, w);
  s.phi = -pi / 2;
  const auto r = scattering_probabilities(s, w);
  for (std::size_t k = 0; k < w.size(); ++k) {
    EXPECT_NEAR(f.P[k][1], r.P[k][2], 1e-12);
    EXPECT_NEAR(f.P[k][2], r.P[k][1], 1e-12);
    EXPECT_NEAR(f.P[k][0], r.P[k][0], 1e-12);
  }
  // phi = 0 is reciprocal
  s.phi = 0.0;
  const auto z = scattering_probabilities(s, w);
  for (std::size_t k = 0; k < w.size(); ++k) EXPECT_NEAR(z.P[k][1], z.P[k][2], 1e-12);
}

TEST(Circulator, LossClosesFluxBalance) {
  CirculatorSpec s;
  s.phi = pi / 2;
  s.gamma0 = 0.2;
  const auto p = scattering_probabilities(s, {-1.0, 0.0, 0.5}, Execution::parallel);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(p.P[k][0] + p.P[k][1] + p.P[k][2] + p.loss[k], 1.0, 1e-12);
    EXPECT_GT(p.loss[k], 0.0);
  }
}

TEST(Circulator, ValidationErrors) {
  CirculatorSpec s;
  s.t = -1.0;
  EXPECT_THROW(circulator_network(s), ConfigError);
  s.t = 0.5;
  s.gamma = 0.0;
  EXPECT_THROW(circulator_network(s), ConfigError);
}

namespace {
OpticalDriveDesign design_point() {
  OpticalDriveDesign d;
  d.delta1 = d.delta2 = -100.0;
  d.J = 50.0;
  d.kappa = 1.0;
  d.g = 0.05;
  return d;
}
}  // namespace

TEST(Drives, SteadyStateSolvesLinearSystem) {
  auto d = design_point();
  d.E1 = 3.0;
  d.E2 = 1.0;
  d.phi1 = 0.4;
  d.phi2 = -1.1;
  const auto a = steady_state_amplitudes(d);
  const cd I(0.0, 1.0);
  EXPECT_LT(std::abs((d.kappa - I * d.delta1) * a[0] - I * d.J * a[1] - std::polar(d.E1, d.phi1)), 1e-12);
  EXPECT_LT(std::abs((d.kappa - I * d.delta2) * a[1] - I * d.J * a[0] - std::polar(d.E2, d.phi2)), 1e-12);
}

TEST(Drives, RoundTripThroughSolver) {
  take_warnings();
  for (double phi : {pi / 2, -pi / 2, 0.3}) {
    const auto d = solve_drives_for_target(0.5, phi, design_point(), 100.0);
    const auto e = effective_coupling(d, 100.0);
    EXPECT_NEAR(e.t_eff, 0.5, 1e-9);
    EXPECT_NEAR(e.phi, phi, 1e-9);
    EXPECT_NEAR(std::abs(e.alpha1), std::abs(e.alpha2), 1e-9);
    EXPECT_GT(e.gamma_op, 0.0);
  }
  EXPECT_TRUE(take_warnings().empty());
}

TEST(Drives, GlobalPhaseDoesNotChangeCoupling) {
  auto d = solve_drives_for_target(0.5, 1.0, design_point(), 100.0);
  const auto e0 = effective_coupling(d, 100.0);
  d.phi1 += 0.8;
  d.phi2 += 0.8;
  const auto e1 = effective_coupling(d, 100.0);
  EXPECT_NEAR(e0.t_eff, e1.t_eff, 1e-12);
  EXPECT_NEAR(e0.phi, e1.phi, 1e-12);
}

TEST(Drives, UnreachableTargets) {
  EXPECT_THROW(solve_drives_for_target(-0.5, 0.0, design_point(), 100.0), NumericalError);
  EXPECT_THROW(solve_drives_for_target(0.5, 0.0, design_point(), 100.0, 1.0), NumericalError);
  auto d = design_point();
  d.J = 0.0;
  EXPECT_THROW(solve_drives_for_target(0.5, 0.0, d, 100.0), ConfigError);
}

TEST(Drives, WeakDetuningWarns) {
  take_warnings();
  auto d = design_point();
  d.J = 5.0;
  const auto s = solve_drives_for_target(0.5, 0.0, d, 100.0);
  (void)s;
  EXPECT_FALSE(take_warnings().empty());
}
