#include <gtest/gtest.h>

#include <cmath>

#include "phononet/cascaded_me.hpp"
#include "phononet/errors.hpp"

using namespace phononet;
using namespace phononet::cascade;

namespace {
std::shared_ptr<const transfer::PulseSchedule> sched(double G) {
  return std::make_shared<transfer::PulseSchedule>(transfer::analytic_schedule(G));
}
std::vector<double> samples(const transfer::PulseSchedule& s, int n) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = s.t_start + (s.t_end - s.t_start) * k / (n - 1);
  return g;
}
}  // namespace

TEST(Cascade, DefaultCutoff) {
  EXPECT_EQ(default_fock_cutoff(0.0), 4);
  EXPECT_EQ(default_fock_cutoff(0.5), 6);
  EXPECT_EQ(default_fock_cutoff(1.0), 8);
  EXPECT_EQ(default_fock_cutoff(100.0), 30);
}

TEST(Cascade, ConstructorErrors) {
  CascadedModel m;
  EXPECT_THROW(LindbladGenerator{m}, ConfigError);
  m.schedule = sched(0.5);
  m.gamma_op = -1.0;
  EXPECT_THROW(LindbladGenerator{m}, ConfigError);
  m.gamma_op = 1.0;
  m.hilbert.fock_cutoff = 0;
  EXPECT_THROW(LindbladGenerator{m}, ConfigError);
  m.hilbert.fock_cutoff = 4;
  EXPECT_NO_THROW(LindbladGenerator{m});
}

TEST(Cascade, GeneratorIsTracePreservingAndHermitian) {
  CascadedModel m;
  m.N_th = 0.7;
  m.gamma_intrinsic = 0.1;
  m.hilbert.fock_cutoff = 5;
  m.schedule = sched(0.5);
  const LindbladGenerator L(m);
  const auto g = L.at(0.3);
  const int d = m.hilbert.dim();
  DensityMatrix rho = DensityMatrix::Random(d, d);
  rho = rho * rho.adjoint();
  rho /= rho.trace();
  DensityMatrix drho(d, d);
  g.apply(rho, drho);
  EXPECT_LT(std::abs(drho.trace()), 1e-12);
  EXPECT_LT((drho - drho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((DensityMatrix(g.H) - DensityMatrix(g.H).adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Cascade, ZeroTemperatureReproducesAmplitudes) {
  const auto s = sched(0.5);
  const auto t = samples(*s, 29);
  const auto tr = reduced_two_qubit_model(0.0, s, 0.0, 1.0, t);
  const auto a = transfer::evolve_amplitudes(*s, t);
  HilbertSpec h;
  h.include_cavity = false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    EXPECT_NEAR(excited_population(tr.states[k], h, 1), std::norm(a.v1[k]), 1e-6);
    EXPECT_NEAR(excited_population(tr.states[k], h, 2), std::norm(a.v2[k]), 1e-6);
  }
  EXPECT_LT(tr.max_trace_error, 1e-9);
}

TEST(Cascade, ThermalRunStaysPhysical) {
  CascadedModel m;
  m.N_th = 1.0;
  m.gamma_op = 1.0;
  m.hilbert.fock_cutoff = default_fock_cutoff(m.N_th);
  m.schedule = sched(0.5);
  const auto t = samples(*m.schedule, 15);
  const auto rho0 = initial_state(m.hilbert, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), cavity_steady_occupation(m));
  EXPECT_NEAR(cavity_occupation(rho0, m.hilbert), 0.5, 0.01);
  const auto tr = integrate(m, rho0, t);
  for (const auto& r : tr.states) {
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-8);
    EXPECT_LT((r - r.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT(min_eigenvalue(r), -1e-7);
  }
  // the filter cavity stays near its steady occupation
  EXPECT_NEAR(cavity_occupation(tr.states.back(), m.hilbert), 0.5, 0.05);
}

TEST(Cascade, FidelityHelpers) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto tgt = transfer_target(r, r, -1.0);
  EXPECT_NEAR(tgt.trace().real(), 1.0, 1e-15);
  EXPECT_NEAR(tgt(0, 1).real(), -0.5, 1e-15);
  EXPECT_NEAR(fidelity(tgt, tgt), 1.0, 1e-15);
  EXPECT_THROW(fidelity(Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(4, 4)), ConfigError);
}

TEST(Cascade, SweepOrderingAndFilterGain) {
  const auto pts = fidelity_sweep(1.0, {0.1}, {0.0, 2.0}, 0.05, 28.0, Execution::parallel);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0].fidelity, 1.0, 1e-3);
  const auto nofilter = fidelity_sweep(1.0, {0.1}, {2.0}, -1.0);
  EXPECT_DOUBLE_EQ(nofilter[0].N_eff, 2.0);
  EXPECT_GT(pts[1].fidelity, nofilter[0].fidelity);
  EXPECT_LT(pts[1].N_eff, 2.0);
}
