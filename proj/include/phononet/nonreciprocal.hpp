#pragma once

#include <array>
#include <vector>

#include "phononet/execution.hpp"
#include "phononet/linear_network.hpp"

namespace phononet::circulator {

// Three localized modes b1, b2, b3 at omega_m with tunneling t e^{i phi}
// (b1 -> b2 link) and t on the other two links, each side coupled to its own
// waveguide port with rate gamma.
struct CirculatorSpec {
  double t = 0.5;
  double phi = 0.0;
  double gamma = 1.0;
  double gamma0 = 0.0;
  double omega_m = 0.0;
  double bath_occupation = 0.0;
  void validate() const;
};

LinearNetwork circulator_network(const CirculatorSpec& spec);

// 3x3 annihilation block, S(j, k) = amplitude for port k in -> port j out.
Eigen::Matrix3cd port_scattering(const CirculatorSpec& spec, double omega);

// |S_{1->j}(omega)|^2 for j = 1, 2, 3 (b_{j,out} = S_{1->j} b_{1,in}) and the
// intrinsic-loss flux for a unit input in port 1.
struct ScatteringProbabilities {
  std::vector<double> omega;
  std::vector<std::array<double, 3>> P;
  std::vector<double> loss;
};
ScatteringProbabilities scattering_probabilities(const CirculatorSpec& spec, const std::vector<double>& omega,
                                                 Execution exec = Execution::serial);

// Two coupled optical cavities driven at E_i e^{i phi_i}; each couples with g
// to one of the mechanical modes b1, b2.
struct OpticalDriveDesign {
  double delta1 = 0.0, delta2 = 0.0;
  double J = 0.0;
  double kappa = 1.0;
  double g = 1.0;
  double E1 = 0.0, E2 = 0.0;
  double phi1 = 0.0, phi2 = 0.0;
  void validate() const;
};

struct EffectiveCoupling {
  cd alpha1, alpha2;
  double t_eff = 0.0;
  double phi = 0.0;  // arg(alpha1) - arg(alpha2), wrapped to (-pi, pi]
  double gamma_op = 0.0;
  double Delta_plus = 0.0, Delta_minus = 0.0;
};

// Linear steady state (kappa - i delta_1) alpha_1 - i J alpha_2 = E_1 e^{i phi_1}
// and the same with 1 <-> 2.
std::array<cd, 2> steady_state_amplitudes(const OpticalDriveDesign& d);

// t_eff = (g^2 alpha^2 / 2)(1/Delta_+ - 1/Delta_-), Delta_pm = delta_pm + omega_m,
// gamma_op = g^2 alpha^2 kappa (Delta_+^-2 + Delta_-^-2), alpha^2 = |alpha_1||alpha_2|.
EffectiveCoupling effective_coupling(const OpticalDriveDesign& d, double omega_m);

// Drives reproducing (t_target, phi_target) with |alpha_1| = |alpha_2|. The
// amplitude follows from the t_eff formula and the drives from the linear
// steady-state equations; the phases use the symmetric gauge
// arg(alpha_{1,2}) = +-phi_target / 2.
OpticalDriveDesign solve_drives_for_target(double t_target, double phi_target, OpticalDriveDesign fixed,
                                           double omega_m, double alpha_max = 1e9);

}  // namespace phononet::circulator
