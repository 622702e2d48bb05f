#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "phononet/execution.hpp"
#include "phononet/transfer.hpp"

namespace phononet::cascade {

using cd = std::complex<double>;
using DensityMatrix = Eigen::MatrixXcd;
using SpMat = Eigen::SparseMatrix<cd>;

// cavity (fock_cutoff + 1 levels) x qubit 1 x qubit 2, index = n * 4 + q1 * 2 + q2,
// qubit level 0 = ground, 1 = excited.
struct HilbertSpec {
  int fock_cutoff = 4;
  bool include_cavity = true;
  int cavity_levels() const { return include_cavity ? fock_cutoff + 1 : 1; }
  int dim() const { return 4 * cavity_levels(); }
};

// max(4, ceil(4 N_th) + 4), capped at 30.
int default_fock_cutoff(double N_th);

// Cascaded chain: filter cavity b -> qubit 1 -> qubit 2 through one
// waveguide carrying white noise N_th. gamma_op is the optical damping of the
// cavity; gamma_intrinsic is an optional intrinsic cavity loss to a bath at
// N_th, which sets a finite floor of the filtered spectrum.
struct CascadedModel {
  double gamma = 1.0;
  double gamma_op = 1.0;
  double gamma_intrinsic = 0.0;
  double N_th = 0.0;
  HilbertSpec hilbert;
  std::shared_ptr<const transfer::PulseSchedule> schedule;
};

// Generator at a fixed time in the form rho' = K rho + rho K^dag + sum_j L_j rho L_j^dag.
struct Generator {
  SpMat K;
  std::vector<SpMat> jumps;
  SpMat H;
  void apply(const DensityMatrix& rho, DensityMatrix& drho) const;
};

class LindbladGenerator {
 public:
  explicit LindbladGenerator(const CascadedModel& model);
  Generator at(double t) const;
  // Rates evaluated with t clamped into (lo, hi), so one-sided values at
  // pulse discontinuities belong to the segment being integrated.
  Generator at(double t, double lo, double hi) const;
  const CascadedModel& model() const { return model_; }
  const SpMat& b() const { return c_[0]; }
  const SpMat& sigma(int q) const { return c_[q]; }

 private:
  Generator build(double g1, double g2) const;
  CascadedModel model_;
  SpMat c_[3];
  SpMat cdc_[3][3];  // c_k^dag c_l
  SpMat ccd_[3][3];  // c_k c_l^dag
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double max_trace_error = 0.0;
  std::size_t steps = 0;
};

struct IntegratorOptions {
  double rel = 1e-8;
  double abs = 1e-10;
};

Trajectory integrate(const CascadedModel& model, const DensityMatrix& rho0, const std::vector<double>& sample_times,
                     IntegratorOptions opt = {});

// Cavity thermal at `cavity_occupation` (truncated, renormalized), qubit 1 in
// a0|0> + a1|1>, qubit 2 in |0>.
DensityMatrix initial_state(const HilbertSpec& h, cd a0, cd a1, double cavity_occupation);

// Steady occupation of the cavity fed by the waveguide and its intrinsic bath.
double cavity_steady_occupation(const CascadedModel& m);

Eigen::Matrix2cd reduce_to_qubit(const DensityMatrix& rho, const HilbertSpec& h, int qubit);
double excited_population(const DensityMatrix& rho, const HilbertSpec& h, int qubit);
double cavity_occupation(const DensityMatrix& rho, const HilbertSpec& h);
double min_eigenvalue(const DensityMatrix& rho);

// Tr(rho_target rho), both of the same dimension.
double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& rho_target);

// Qubit-2 target for transferring a0|0> + a1|1>; `transfer_sign` is the sign
// of the final transfer amplitude T(t_f), which multiplies the |1> component.
Eigen::Matrix2cd transfer_target(cd a0, cd a1, double transfer_sign);

// Two-qubit cascade with white noise N_eff, no cavity.
Trajectory reduced_two_qubit_model(double N_eff, std::shared_ptr<const transfer::PulseSchedule> schedule, cd a0,
                                   cd a1, const std::vector<double>& sample_times, IntegratorOptions opt = {});

struct FidelityPoint {
  double N_th = 0.0;
  double gamma_max = 0.0;
  double N_eff = 0.0;
  double fidelity = 0.0;
};

// Reduced-model fidelity of transferring (|0> + |1>)/sqrt(2) for every
// (Gamma_max, N_th) pair; N_eff from the closed-form overlap with floor
// N0 = n0_ratio * N_th (n0_ratio < 0 means no filter, N_eff = N_th).
std::vector<FidelityPoint> fidelity_sweep(double gamma, const std::vector<double>& gamma_max,
                                          const std::vector<double>& N_th, double n0_ratio,
                                          double window_factor = 28.0, Execution exec = Execution::serial);

}  // namespace phononet::cascade
