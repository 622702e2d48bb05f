#pragma once

#include <complex>
#include <vector>

#include "phononet/execution.hpp"

namespace phononet::transfer {

using cd = std::complex<double>;

enum class PulseShape { analytic_eq31, iterative_darkstate, user_tabulated };

// Time-dependent decay rates of the two nodes. Tabulated shapes are piecewise
// constant: gamma1[k] holds on [times[k], times[k+1]). Outside the window both
// rates are zero, and rates below cutoff_floor are clamped to zero.
struct PulseSchedule {
  double gamma_max = 1.0;
  double t_start = -14.0;
  double t_end = 14.0;
  PulseShape shape = PulseShape::analytic_eq31;
  double cutoff_floor = 0.0;
  std::vector<double> times;
  std::vector<double> g1;
  std::vector<double> g2;
  std::vector<double> cum1, cum2;  // prefix integrals, filled by tabulated_schedule

  double gamma1(double t) const;
  double gamma2(double t) const;
  double integral1(double a, double b) const;  // int_a^b Gamma1
  double integral2(double a, double b) const;
  // Points where the rates are not smooth, sorted, inside the window.
  std::vector<double> breakpoints() const;
};

// Gamma1(t) = Gamma_max e^{Gamma_max t} / (2 - e^{Gamma_max t}) for t < 0 and
// Gamma_max for t >= 0. The sign of the exponent is chosen so the pulse stays
// finite and switches on smoothly from t = -inf (the other sign blows up at
// t = -ln 2 / Gamma_max).
double pulse_eq31(double t, double gamma_max);
// int_{-inf}^t Gamma1
double pulse_eq31_cumulative(double t, double gamma_max);

// Window [-window/2, window/2] with window = window_factor / gamma_max.
PulseSchedule analytic_schedule(double gamma_max, double window_factor = 28.0, double cutoff_floor = 0.0);

PulseSchedule tabulated_schedule(std::vector<double> times, std::vector<double> g1, std::vector<double> g2,
                                 PulseShape shape = PulseShape::user_tabulated);

struct TransferAmplitudes {
  std::vector<double> times;
  std::vector<cd> v1, v2;   // ODE solution
  std::vector<double> G1;   // G1(t, t0) closed form
  std::vector<double> G2;   // G2(t, t0)
  std::vector<double> T;    // transfer amplitude T(t, t0) by quadrature
};

struct OdeTolerance {
  double rel = 1e-10;
  double abs = 1e-13;
};

// dv1/dt = -Gamma1/2 v1, dv2/dt = -Gamma2/2 v2 - sqrt(Gamma1 Gamma2) v1.
TransferAmplitudes evolve_amplitudes(const PulseSchedule& s, const std::vector<double>& t_grid,
                                     cd v1_0 = 1.0, cd v2_0 = 0.0, OdeTolerance tol = {});

// |sqrt(Gamma1) v1 + sqrt(Gamma2) v2| at grid index k.
double dark_state_residual(const TransferAmplitudes& a, const PulseSchedule& s, std::size_t k);

struct DesignOptions {
  double ceiling_factor = 1e4;  // Gamma2 ceiling = ceiling_factor * max Gamma1
  double max_G1_final = 1e-3;
};

// Builds Gamma2 step by step so that the dark-state condition holds at the
// end of every step. Gamma1 is piecewise constant on the given step grid
// (g1.size() == times.size() - 1). Each step picks the constant Gamma2 that
// zeroes the residual using the exact solution of the step.
PulseSchedule design_pulses_iterative(const std::vector<double>& times, const std::vector<double>& g1,
                                      DesignOptions opt = {});

struct ChannelNoiseModel {
  enum class Kind { white, filtered } kind = Kind::white;
  double N_th = 0.0;
  double N0 = 0.0;
  double gamma_tilde = 1.0;  // half width of the dip
  double detuning = 0.0;     // dip centre minus the qubit frequency

  static ChannelNoiseModel white(double N_th) { return {Kind::white, N_th, 0.0, 1.0, 0.0}; }
  static ChannelNoiseModel filtered(double N_th, double N0, double gamma_tilde, double detuning = 0.0) {
    return {Kind::filtered, N_th, N0, gamma_tilde, detuning};
  }
};

// Double time integral for the final excitation of a single qubit driven
// through Gamma1 by the channel noise. The filtered case uses the exact
// correlation function of the Lorentzian dip, evaluated through an auxiliary
// ODE for the exponential kernel.
double effective_occupation_integral(const PulseSchedule& s, const ChannelNoiseModel& noise);

// (2 gamma N0 + Gamma_max N_th) / (2 gamma + Gamma_max)
double effective_occupation_closed(double N_th, double N0, double gamma, double gamma_max);

// F(w) = (2 pi)^-1/2 int dt e^{i w t} sqrt(Gamma1(t)) G1(t_f, t); w is measured
// from the qubit frequency.
std::vector<cd> pulse_spectrum_F(const PulseSchedule& s, const std::vector<double>& omega,
                                 Execution exec = Execution::serial);

// The noise-driving kernel f(t) = sqrt(Gamma1(t)) G1(t_f, t).
double absorption_kernel(const PulseSchedule& s, double t);

}  // namespace phononet::transfer
