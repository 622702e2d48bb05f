#include <gtest/gtest.h>

#include <cmath>

#include "phononet/errors.hpp"
#include "phononet/transfer.hpp"

using namespace phononet;
using namespace phononet::transfer;

namespace {
std::vector<double> grid_of(const PulseSchedule& s, int n) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = s.t_start + (s.t_end - s.t_start) * k / (n - 1);
  return g;
}
}  // namespace

TEST(Pulse, ContinuousAndBounded) {
  const double G = 0.7;
  EXPECT_NEAR(pulse_eq31(-1e-12, G), G, 1e-10);
  EXPECT_DOUBLE_EQ(pulse_eq31(0.0, G), G);
  EXPECT_DOUBLE_EQ(pulse_eq31(5.0, G), G);
  for (double t = -30.0; t < 0.0; t += 0.37) {
    EXPECT_GT(pulse_eq31(t, G), 0.0);
    EXPECT_LE(pulse_eq31(t, G), G);
  }
}

TEST(Pulse, CumulativeIsAntiderivative) {
  const double G = 1.3, h = 1e-5;
  for (double t : {-8.0, -1.0, -0.2, 0.5, 3.0}) {
    const double d = (pulse_eq31_cumulative(t + h, G) - pulse_eq31_cumulative(t - h, G)) / (2 * h);
    EXPECT_NEAR(d, pulse_eq31(t, G), 1e-6) << t;
  }
  EXPECT_NEAR(pulse_eq31_cumulative(-60.0, G), 0.0, 1e-12);
}

TEST(Pulse, TabulatedScheduleIsPiecewiseConstant) {
  const auto s = tabulated_schedule({0.0, 1.0, 3.0}, {2.0, 0.5}, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(s.gamma1(0.5), 2.0);
  EXPECT_DOUBLE_EQ(s.gamma1(2.0), 0.5);
  EXPECT_DOUBLE_EQ(s.gamma1(4.0), 0.0);
  EXPECT_NEAR(s.integral1(0.5, 2.0), 1.0 + 0.5, 1e-14);
  EXPECT_THROW(tabulated_schedule({0.0, 1.0}, {1.0, 1.0}, {1.0}), ConfigError);
  EXPECT_THROW(tabulated_schedule({0.0, 0.0}, {1.0}, {1.0}), ConfigError);
  EXPECT_THROW(tabulated_schedule({0.0, 1.0}, {-1.0}, {1.0}), ConfigError);
  EXPECT_THROW(analytic_schedule(0.0), ConfigError);
}

TEST(Transfer, AmplitudesMatchClosedForm) {
  const auto s = analytic_schedule(1.0);
  const auto a = evolve_amplitudes(s, grid_of(s, 281));
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    EXPECT_NEAR(std::abs(a.v1[k]), a.G1[k], 1e-8);
    EXPECT_NEAR(std::abs(a.v2[k]), std::abs(a.T[k]), 1e-7);
    EXPECT_LE(std::norm(a.v1[k]) + std::norm(a.v2[k]), 1.0 + 1e-9);
  }
  EXPECT_THROW(evolve_amplitudes(s, {}), ConfigError);
  EXPECT_THROW(evolve_amplitudes(s, {1.0, 0.0}), ConfigError);
}

TEST(Transfer, IterativeDesignKeepsDarkState) {
  const auto ref = analytic_schedule(1.0);
  const int n = 28000;  // step 1e-3 / Gamma_max
  std::vector<double> times(n + 1), g1(n);
  for (int k = 0; k <= n; ++k) times[k] = ref.t_start + (ref.t_end - ref.t_start) * k / n;
  for (int k = 0; k < n; ++k) g1[k] = pulse_eq31(0.5 * (times[k] + times[k + 1]), 1.0);
  const auto s = design_pulses_iterative(times, g1);
  const auto a = evolve_amplitudes(s, times);
  EXPECT_GT(std::abs(a.T.back()), 0.99);
  // time-reversed pulse pair
  for (double t : {-3.0, -1.0, 0.0, 1.0}) EXPECT_NEAR(s.gamma2(t) / pulse_eq31(-t, 1.0), 1.0, 0.01) << t;
  EXPECT_THROW(design_pulses_iterative(times, {1.0}), ConfigError);
}

TEST(Transfer, IterativeDesignStepAndShortPulses) {
  const int n = 20000;  // step 1e-3
  std::vector<double> times(n + 1);
  for (int k = 0; k <= n; ++k) times[k] = 20.0 * k / n;
  const auto s = design_pulses_iterative(times, std::vector<double>(n, 1.0));
  EXPECT_GE(std::abs(evolve_amplitudes(s, times).T.back()), 1.0 - 1e-3);
  // G1(t_f) = 0.5 leaves most of the excitation behind
  const double tf = 2.0 * std::log(2.0);
  std::vector<double> short_times(n + 1);
  for (int k = 0; k <= n; ++k) short_times[k] = tf * k / n;
  EXPECT_THROW(design_pulses_iterative(short_times, std::vector<double>(n, 1.0)), NumericalError);
}

TEST(Noise, ClosedFormLimits) {
  EXPECT_DOUBLE_EQ(effective_occupation_closed(10.0, 0.0, 1.0, 1.0), 10.0 / 3.0);
  // no filter benefit when the pulse is much wider than the dip
  EXPECT_NEAR(effective_occupation_closed(10.0, 0.5, 1.0, 1e6), 10.0, 1e-4);
  const auto s = analytic_schedule(0.1);
  EXPECT_DOUBLE_EQ(effective_occupation_integral(s, ChannelNoiseModel::white(0.0)), 0.0);
  EXPECT_THROW(effective_occupation_integral(s, ChannelNoiseModel::white(-1.0)), ConfigError);
}

TEST(Noise, DetunedDipHelpsLess) {
  const auto s = analytic_schedule(0.1);
  const double on = effective_occupation_integral(s, ChannelNoiseModel::filtered(1.0, 0.0, 1.0, 0.0));
  const double off = effective_occupation_integral(s, ChannelNoiseModel::filtered(1.0, 0.0, 1.0, 3.0));
  EXPECT_LT(on, off);
  EXPECT_LT(off, 1.0);
}

TEST(Spectrum, ParsevalAndExecutionIdentity) {
  const auto s = analytic_schedule(1.0);
  const int n = 4001;
  const double W = 200.0;
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = -W + 2.0 * W * k / (n - 1);
  const auto F = pulse_spectrum_F(s, w, Execution::serial);
  const auto Fp = pulse_spectrum_F(s, w, Execution::parallel);
  ASSERT_EQ(F.size(), Fp.size());
  for (int k = 0; k < n; ++k) EXPECT_EQ(F[k], Fp[k]);
  double pw = 0.0;
  for (int k = 0; k + 1 < n; ++k) pw += 0.5 * (std::norm(F[k]) + std::norm(F[k + 1])) * (w[k + 1] - w[k]);
  double pt = 0.0;
  const int m = 20001;
  const double dt = (s.t_end - s.t_start) / (m - 1);
  for (int k = 0; k < m; ++k) {
    const double f = absorption_kernel(s, s.t_start + k * dt);
    pt += (k == 0 || k == m - 1 ? 0.5 : 1.0) * f * f * dt;
  }
  EXPECT_NEAR(pw / pt, 1.0, 5e-3);
  EXPECT_NEAR(pt, 1.0, 1e-3);
}
