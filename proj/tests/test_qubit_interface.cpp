#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "phononet/errors.hpp"
#include "phononet/qubit_interface.hpp"
#include "phononet/warnings.hpp"

using namespace phononet;
using namespace phononet::nv;

namespace {
RamanParams base() {
  RamanParams p;
  p.lambda = 0.03;
  p.omega_m = 1000.0;
  p.Omega0 = 10.0;
  p.Omega1 = 10.0;
  p.Delta = 800.0;
  p.Gamma_e = 15.0;
  return p;
}
}  // namespace

TEST(Raman, CouplingAndRates) {
  const auto c = effective_spin_phonon(base());
  const double want = 0.03 * 100.0 / (640000.0 - 250000.0);
  EXPECT_NEAR(c.lambda_eff, want, 1e-15);
  EXPECT_EQ(c.lambda_phase, 0.0);
  EXPECT_NEAR(c.Gamma_eff_0, 15.0 * 100.0 / (1300.0 * 1300.0), 1e-15);
  EXPECT_NEAR(c.Gamma_eff_1, 15.0 * 100.0 / (300.0 * 300.0), 1e-15);
  EXPECT_NEAR(c.ratio, c.lambda_magnitude / c.Gamma_bar, 1e-15);
}

TEST(Raman, InsideWindowFlipsSign) {
  auto p = base();
  p.Delta = 0.0;
  const auto c = effective_spin_phonon(p);
  EXPECT_LT(c.lambda_eff, 0.0);
  EXPECT_NEAR(c.lambda_phase, std::numbers::pi, 1e-15);
  EXPECT_NEAR(c.Gamma_eff_0, c.Gamma_eff_1, 1e-15);
}

TEST(Raman, ResonanceAndValidation) {
  auto p = base();
  p.Delta = 500.0;
  EXPECT_THROW(effective_spin_phonon(p), NumericalError);
  p = base();
  p.Gamma_e = 0.0;
  EXPECT_THROW(effective_spin_phonon(p), ConfigError);
  p = base();
  p.Delta = 520.0;
  take_warnings();
  effective_spin_phonon(p);
  EXPECT_EQ(take_warnings().size(), 1u);
}

TEST(Raman, SweepIsExecutionIndependent) {
  std::vector<double> g;
  for (int k = 0; k < 41; ++k) g.push_back(-400.0 + 20.0 * k);
  const auto a = figure_of_merit_sweep(base(), g, Execution::serial);
  const auto b = figure_of_merit_sweep(base(), g, Execution::parallel);
  EXPECT_EQ(a.ratio, b.ratio);
  EXPECT_EQ(a.argmax, b.argmax);
  // symmetric drives: the figure of merit is even in Delta
  EXPECT_NEAR(a.ratio.front(), a.ratio.back(), 1e-12 * a.ratio.front());
}
