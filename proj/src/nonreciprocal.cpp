#include "phononet/nonreciprocal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "phononet/errors.hpp"
#include "phononet/warnings.hpp"

namespace phononet::circulator {

namespace {
constexpr double pi = std::numbers::pi;

double wrap(double x) {
  x = std::remainder(x, 2.0 * pi);
  return x <= -pi ? x + 2.0 * pi : x;
}

// normal-mode detunings of the coupled optical cavities
std::array<double, 2> supermode_detunings(const OpticalDriveDesign& d) {
  const double mean = 0.5 * (d.delta1 + d.delta2);
  const double split = std::hypot(d.J, 0.5 * (d.delta1 - d.delta2));
  return {mean + split, mean - split};
}
}  // namespace

void CirculatorSpec::validate() const {
  if (!(t >= 0.0)) throw ConfigError("circulator: t must be >= 0");
  if (!(gamma > 0.0)) throw ConfigError("circulator: gamma must be > 0");
  if (!(gamma0 >= 0.0)) throw ConfigError("circulator: gamma0 must be >= 0");
  if (!std::isfinite(phi)) throw ConfigError("circulator: phi must be finite");
}

LinearNetwork circulator_network(const CirculatorSpec& s) {
  s.validate();
  LinearNetwork net;
  for (int j = 1; j <= 3; ++j) {
    const std::string b = "b" + std::to_string(j);
    net.modes.push_back({b, ModeKind::mechanical, s.omega_m, s.gamma0, s.bath_occupation});
  }
  net.couplings.push_back({"b2", "b1", std::polar(s.t, s.phi), true});
  net.couplings.push_back({"b3", "b2", cd(s.t, 0.0), true});
  net.couplings.push_back({"b1", "b3", cd(s.t, 0.0), true});
  for (int j = 1; j <= 3; ++j)
    net.ports.push_back({"b" + std::to_string(j), s.gamma, s.bath_occupation, "port" + std::to_string(j)});
  return net;
}

Eigen::Matrix3cd port_scattering(const CirculatorSpec& spec, double omega) {
  const auto sc = scattering(circulator_network(spec), omega);
  Eigen::Matrix3cd S;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) S(j, k) = sc.S(2 * j, 2 * k);
  return S;
}

ScatteringProbabilities scattering_probabilities(const CirculatorSpec& spec, const std::vector<double>& omega,
                                                 Execution exec) {
  const DriftMatrix drift = build_drift_matrix(circulator_network(spec));
  ScatteringProbabilities out;
  out.omega = omega;
  out.P.resize(omega.size());
  out.loss.resize(omega.size());
  for_each_index(omega.size(), exec, [&](std::size_t k) {
    const auto sc = scattering(drift, omega[k]);
    // the intrinsic loss flux follows from the internal response to port 1
    const CMat X = susceptibility(drift, omega[k]);
    const CVec v = X * drift.L.transpose().col(0).cast<cd>();
    double loss = 0.0;
    for (int c = 0; c < drift.n_intrinsic(); ++c) {
      const cd a = (drift.L0.row(2 * c).cast<cd>() * v)(0);
      loss += std::norm(a);
    }
    for (int j = 0; j < 3; ++j) out.P[k][j] = std::norm(sc.S(2 * j, 0));
    out.loss[k] = loss;
  });
  return out;
}

void OpticalDriveDesign::validate() const {
  if (!(kappa > 0.0)) throw ConfigError("optical drive: kappa must be > 0");
  if (!(J >= 0.0)) throw ConfigError("optical drive: J must be >= 0");
  if (!(E1 >= 0.0) || !(E2 >= 0.0)) throw ConfigError("optical drive: drive strengths must be >= 0");
}

std::array<cd, 2> steady_state_amplitudes(const OpticalDriveDesign& d) {
  d.validate();
  const cd I(0.0, 1.0);
  const cd a11 = d.kappa - I * d.delta1, a22 = d.kappa - I * d.delta2;
  const cd det = a11 * a22 + d.J * d.J;
  if (std::abs(det) <= 1e-14 * (std::norm(a11) + std::norm(a22) + d.J * d.J))
    throw NumericalError("optical drive: singular steady-state denominator (kappa - i delta1)(kappa - i delta2) + J^2");
  const cd e1 = std::polar(d.E1, d.phi1), e2 = std::polar(d.E2, d.phi2);
  return {(a22 * e1 + I * d.J * e2) / det, (a11 * e2 + I * d.J * e1) / det};
}

EffectiveCoupling effective_coupling(const OpticalDriveDesign& d, double omega_m) {
  const auto a = steady_state_amplitudes(d);
  const auto dm = supermode_detunings(d);
  EffectiveCoupling e;
  e.alpha1 = a[0];
  e.alpha2 = a[1];
  e.Delta_plus = dm[0] + omega_m;
  e.Delta_minus = dm[1] + omega_m;
  if (e.Delta_plus == 0.0 || e.Delta_minus == 0.0)
    throw ConfigError("effective coupling: optical supermode resonant with the mechanics (Delta_pm = 0)");
  const double m1 = std::abs(a[0]), m2 = std::abs(a[1]);
  const double alpha2 = m1 * m2;
  const double galpha = d.g * std::sqrt(alpha2);
  if (std::min(std::abs(e.Delta_plus), std::abs(e.Delta_minus)) < 5.0 * galpha)
    warn("effective coupling: |Delta_pm| / (g alpha) < 5, adiabatic elimination questionable");
  if (std::max(m1, m2) > 0.0 && std::abs(m1 - m2) > 0.05 * std::max(m1, m2))
    warn("effective coupling: |alpha1| and |alpha2| differ by more than 5%");
  const double g2a2 = d.g * d.g * alpha2;
  e.t_eff = 0.5 * g2a2 * (1.0 / e.Delta_plus - 1.0 / e.Delta_minus);
  e.gamma_op = g2a2 * d.kappa * (1.0 / (e.Delta_plus * e.Delta_plus) + 1.0 / (e.Delta_minus * e.Delta_minus));
  e.phi = (m1 > 0.0 && m2 > 0.0) ? wrap(std::arg(a[0]) - std::arg(a[1])) : 0.0;
  return e;
}

OpticalDriveDesign solve_drives_for_target(double t_target, double phi_target, OpticalDriveDesign d, double omega_m,
                                           double alpha_max) {
  d.E1 = d.E2 = 0.0;
  d.validate();
  const auto dm = supermode_detunings(d);
  const double Dp = dm[0] + omega_m, Dm = dm[1] + omega_m;
  if (Dp == 0.0 || Dm == 0.0)
    throw ConfigError("drive solver: optical supermode resonant with the mechanics (Delta_pm = 0)");
  const double lever = 0.5 * d.g * d.g * (1.0 / Dp - 1.0 / Dm);
  const double a2 = t_target / lever;
  if (!(a2 > 0.0) || !std::isfinite(a2)) {
    std::ostringstream os;
    os << "drive solver: target t = " << t_target << " unreachable, t_eff per unit |alpha|^2 is " << lever;
    throw NumericalError(os.str());
  }
  const double alpha = std::sqrt(a2);
  if (alpha > alpha_max) {
    std::ostringstream os;
    os << "drive solver: required |alpha| = " << alpha << " exceeds the bound " << alpha_max;
    throw NumericalError(os.str());
  }
  const cd I(0.0, 1.0);
  const cd al1 = std::polar(alpha, 0.5 * phi_target), al2 = std::polar(alpha, -0.5 * phi_target);
  const cd e1 = (d.kappa - I * d.delta1) * al1 - I * d.J * al2;
  const cd e2 = (d.kappa - I * d.delta2) * al2 - I * d.J * al1;
  d.E1 = std::abs(e1);
  d.E2 = std::abs(e2);
  d.phi1 = std::arg(e1);
  d.phi2 = std::arg(e2);

  const EffectiveCoupling check = effective_coupling(d, omega_m);
  const double rt = std::abs(check.t_eff - t_target) / std::abs(t_target);
  const double rp = std::abs(wrap(check.phi - phi_target));
  const double ra = std::abs(std::abs(check.alpha1) - std::abs(check.alpha2)) / alpha;
  if (rt > 1e-6 || rp > 1e-6 || ra > 1e-6) {
    std::ostringstream os;
    os << "drive solver: residuals t " << rt << ", phi " << rp << ", |alpha| mismatch " << ra;
    throw NumericalError(os.str());
  }
  return d;
}

}  // namespace phononet::circulator
