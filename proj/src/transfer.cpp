#include "phononet/transfer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "phononet/errors.hpp"

namespace phononet::transfer {

namespace odeint = boost::numeric::odeint;

double pulse_eq31(double t, double gamma_max) {
  if (t >= 0.0) return gamma_max;
  const double x = std::exp(gamma_max * t);
  return gamma_max * x / (2.0 - x);
}

double pulse_eq31_cumulative(double t, double gamma_max) {
  if (t >= 0.0) return std::numbers::ln2 + gamma_max * t;
  return -std::log1p(-0.5 * std::exp(gamma_max * t));
}

namespace {

// time below which the analytic Gamma1 is under the cutoff floor
double floor_time(const PulseSchedule& s) {
  if (s.cutoff_floor <= 0.0) return -INFINITY;
  const double r = s.cutoff_floor / s.gamma_max;
  if (r >= 1.0) return INFINITY;
  return std::log(2.0 * r / (1.0 + r)) / s.gamma_max;
}

bool tabulated(const PulseSchedule& s) { return s.shape != PulseShape::analytic_eq31; }

double tab_value(const PulseSchedule& s, const std::vector<double>& g, double t) {
  if (s.times.size() < 2 || t < s.times.front() || t > s.times.back()) return 0.0;
  auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - s.times.begin());
  k = k == 0 ? 0 : k - 1;
  k = std::min(k, g.size() - 1);
  const double v = g[k];
  return v < s.cutoff_floor ? 0.0 : v;
}

double tab_cum(const PulseSchedule& s, const std::vector<double>& g, const std::vector<double>& cum, double x) {
  // int_{times[0]}^x with x inside the table
  auto it = std::upper_bound(s.times.begin(), s.times.end(), x);
  std::size_t k = static_cast<std::size_t>(it - s.times.begin());
  k = k == 0 ? 0 : k - 1;
  k = std::min(k, g.size() - 1);
  const double v = g[k] < s.cutoff_floor ? 0.0 : g[k];
  return cum[k] + v * (x - s.times[k]);
}

double tab_integral(const PulseSchedule& s, const std::vector<double>& g, const std::vector<double>& cum, double a,
                    double b) {
  if (s.times.size() < 2 || b <= a) return 0.0;
  const double lo = std::max(a, s.times.front());
  const double hi = std::min(b, s.times.back());
  if (hi <= lo) return 0.0;
  if (cum.size() == s.times.size()) return tab_cum(s, g, cum, hi) - tab_cum(s, g, cum, lo);
  auto it = std::upper_bound(s.times.begin(), s.times.end(), lo);
  std::size_t k = static_cast<std::size_t>(it - s.times.begin()) - 1;
  double sum = 0.0;
  for (; k + 1 < s.times.size() && s.times[k] < hi; ++k) {
    const double v = g[k] < s.cutoff_floor ? 0.0 : g[k];
    const double x0 = std::max(lo, s.times[k]);
    const double x1 = std::min(hi, s.times[k + 1]);
    if (x1 > x0) sum += v * (x1 - x0);
  }
  return sum;
}

std::vector<double> prefix(const std::vector<double>& t, const std::vector<double>& g, double floor) {
  std::vector<double> c(t.size(), 0.0);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) c[k + 1] = c[k] + (g[k] < floor ? 0.0 : g[k]) * (t[k + 1] - t[k]);
  return c;
}

}  // namespace

double PulseSchedule::gamma1(double t) const {
  if (tabulated(*this)) return tab_value(*this, g1, t);
  if (t < t_start || t > t_end) return 0.0;
  const double v = pulse_eq31(t, gamma_max);
  return v < cutoff_floor ? 0.0 : v;
}

double PulseSchedule::gamma2(double t) const {
  if (tabulated(*this)) return tab_value(*this, g2, t);
  return gamma1(-t);
}

double PulseSchedule::integral1(double a, double b) const {
  if (tabulated(*this)) return tab_integral(*this, g1, cum1, a, b);
  const double lo = std::max({a, t_start, floor_time(*this)});
  const double hi = std::min(b, t_end);
  if (!(hi > lo)) return 0.0;
  return pulse_eq31_cumulative(hi, gamma_max) - pulse_eq31_cumulative(lo, gamma_max);
}

double PulseSchedule::integral2(double a, double b) const {
  if (tabulated(*this)) return tab_integral(*this, g2, cum2, a, b);
  return integral1(-b, -a);
}

std::vector<double> PulseSchedule::breakpoints() const {
  std::vector<double> bp;
  if (tabulated(*this)) {
    bp = times;
  } else {
    bp = {t_start, 0.0, t_end};
    const double tf = floor_time(*this);
    if (std::isfinite(tf)) {
      bp.push_back(tf);
      bp.push_back(-tf);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

PulseSchedule analytic_schedule(double gamma_max, double window_factor, double cutoff_floor) {
  if (!(gamma_max > 0.0)) throw ConfigError("pulse: gamma_max must be > 0");
  if (!(window_factor > 0.0)) throw ConfigError("pulse: window must be > 0");
  PulseSchedule s;
  s.gamma_max = gamma_max;
  s.t_start = -0.5 * window_factor / gamma_max;
  s.t_end = 0.5 * window_factor / gamma_max;
  s.shape = PulseShape::analytic_eq31;
  s.cutoff_floor = cutoff_floor;
  return s;
}

PulseSchedule tabulated_schedule(std::vector<double> times, std::vector<double> g1, std::vector<double> g2,
                                 PulseShape shape) {
  if (times.size() < 2) throw ConfigError("tabulated pulse needs at least two time points");
  if (g1.size() != times.size() - 1 || g2.size() != times.size() - 1)
    throw ConfigError("tabulated pulse: need one rate per interval");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ConfigError("tabulated pulse: times must increase");
  for (std::size_t k = 0; k < g1.size(); ++k)
    if (g1[k] < 0.0 || g2[k] < 0.0) throw ConfigError("tabulated pulse: rates must be >= 0");
  PulseSchedule s;
  s.shape = shape == PulseShape::analytic_eq31 ? PulseShape::user_tabulated : shape;
  s.t_start = times.front();
  s.t_end = times.back();
  s.gamma_max = std::max(*std::max_element(g1.begin(), g1.end()), *std::max_element(g2.begin(), g2.end()));
  s.times = std::move(times);
  s.g1 = std::move(g1);
  s.g2 = std::move(g2);
  s.cum1 = prefix(s.times, s.g1, s.cutoff_floor);
  s.cum2 = prefix(s.times, s.g2, s.cutoff_floor);
  return s;
}

namespace {

// Sorted union of grid points and schedule breakpoints within [a, b].
std::vector<double> merged_stops(const std::vector<double>& grid, const std::vector<double>& bp, double a, double b) {
  std::vector<double> stops(grid.begin(), grid.end());
  for (double x : bp)
    if (x > a && x < b) stops.push_back(x);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  return stops;
}

// Rates evaluated strictly inside a segment so that one-sided values at
// discontinuities belong to the segment being integrated.
struct SegmentRates {
  const PulseSchedule& s;
  double lo, hi;
  double clamp(double t) const {
    const double d = 1e-9 * (hi - lo);
    return std::min(std::max(t, lo + d), hi - d);
  }
  double g1(double t) const { return s.gamma1(clamp(t)); }
  double g2(double t) const { return s.gamma2(clamp(t)); }
};

template <class F>
double gk(F f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 18, tol);
}

using State4 = std::array<double, 4>;
using State5 = std::array<double, 5>;

template <class State, class System>
void integrate_segment(System sys, State& x, double a, double b, double rel, double abs) {
  if (!(b > a)) return;
  auto stepper = odeint::make_controlled(abs, rel, odeint::runge_kutta_dopri5<State>());
  try {
    odeint::integrate_adaptive(stepper, sys, x, a, b, (b - a) / 20.0);
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "ODE integration failed on [" << a << ", " << b << "]: " << e.what();
    throw NumericalError(os.str());
  }
}

}  // namespace

TransferAmplitudes evolve_amplitudes(const PulseSchedule& s, const std::vector<double>& t_grid, cd v1_0, cd v2_0,
                                     OdeTolerance tol) {
  if (t_grid.empty()) throw ConfigError("evolve_amplitudes: empty time grid");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw ConfigError("evolve_amplitudes: time grid must increase");
  const double t0 = t_grid.front();
  const auto stops = merged_stops(t_grid, s.breakpoints(), t0, t_grid.back());

  TransferAmplitudes out;
  out.times = t_grid;
  State4 x{v1_0.real(), v1_0.imag(), v2_0.real(), v2_0.imag()};
  double Tacc = 0.0;  // int sqrt(G1 G2) G1(t',t0)/G2(t',t0)
  std::size_t gi = 0;
  auto record = [&](double t) {
    out.v1.emplace_back(x[0], x[1]);
    out.v2.emplace_back(x[2], x[3]);
    const double G1 = std::exp(-0.5 * s.integral1(t0, t));
    const double G2 = std::exp(-0.5 * s.integral2(t0, t));
    out.G1.push_back(G1);
    out.G2.push_back(G2);
    out.T.push_back(-G2 * Tacc);
  };
  record(t0);
  ++gi;
  for (std::size_t k = 1; k < stops.size(); ++k) {
    const double a = stops[k - 1], b = stops[k];
    SegmentRates r{s, a, b};
    auto sys = [&r](const State4& y, State4& dy, double t) {
      const double g1 = r.g1(t), g2 = r.g2(t);
      const double c = std::sqrt(g1 * g2);
      dy[0] = -0.5 * g1 * y[0];
      dy[1] = -0.5 * g1 * y[1];
      dy[2] = -0.5 * g2 * y[2] - c * y[0];
      dy[3] = -0.5 * g2 * y[3] - c * y[1];
    };
    integrate_segment(sys, x, a, b, tol.rel, tol.abs);
    Tacc += gk(
        [&](double t) {
          const double g1 = r.g1(t), g2 = r.g2(t);
          if (g1 <= 0.0 || g2 <= 0.0) return 0.0;
          return std::sqrt(g1 * g2) * std::exp(-0.5 * (s.integral1(t0, t) - s.integral2(t0, t)));
        },
        a, b, 1e-10);
    if (gi < t_grid.size() && b == t_grid[gi]) {
      record(b);
      ++gi;
    }
  }
  return out;
}

double dark_state_residual(const TransferAmplitudes& a, const PulseSchedule& s, std::size_t k) {
  double t = a.times.at(k);
  // left limit, i.e. the rates of the step that just ended
  if (k > 0) t -= 1e-9 * (a.times[k] - a.times[k - 1]);
  return std::abs(std::sqrt(s.gamma1(t)) * a.v1[k] + std::sqrt(s.gamma2(t)) * a.v2[k]);
}

PulseSchedule design_pulses_iterative(const std::vector<double>& times, const std::vector<double>& g1,
                                      DesignOptions opt) {
  if (times.size() < 2 || g1.size() != times.size() - 1)
    throw ConfigError("pulse design: need one Gamma1 value per time step");
  double g1max = 0.0, total = 0.0;
  for (std::size_t k = 0; k < g1.size(); ++k) {
    if (!(times[k + 1] > times[k])) throw ConfigError("pulse design: times must increase");
    if (g1[k] < 0.0) throw ConfigError("pulse design: Gamma1 must be >= 0");
    g1max = std::max(g1max, g1[k]);
    total += g1[k] * (times[k + 1] - times[k]);
  }
  const double G1f = std::exp(-0.5 * total);
  if (!(G1f < opt.max_G1_final)) {
    std::ostringstream os;
    os << "pulse design failure: Gamma1 leaves G1(t_f, t_0) = " << G1f << ", needs < " << opt.max_G1_final;
    throw NumericalError(os.str());
  }
  const double ceiling = opt.ceiling_factor * g1max;

  std::vector<double> g2(g1.size(), 0.0);
  double v1 = 1.0, v2 = 0.0;
  for (std::size_t k = 0; k < g1.size(); ++k) {
    const double a = g1[k];
    const double dt = times[k + 1] - times[k];
    const double e1 = std::exp(-0.5 * a * dt);
    const double v1n = v1 * e1;
    // v2 after the step for constant Gamma2 = b
    auto v2_after = [&](double b) {
      const double u = 0.5 * (b - a) * dt;
      const double ratio = std::abs(u) < 1e-12 ? 1.0 : -std::expm1(-u) / u;
      return v2 * std::exp(-0.5 * b * dt) - std::sqrt(a * b) * v1 * e1 * dt * ratio;
    };
    auto resid = [&](double b) { return std::sqrt(a) * v1n + std::sqrt(b) * v2_after(b); };
    double b = 0.0;
    if (a > 0.0 && v1 != 0.0) {
      double hi = std::max(a, 1.0 / dt);
      while (resid(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 2.0 * ceiling) break;
      }
      if (resid(hi) > 0.0 || hi > 2.0 * ceiling) {
        std::ostringstream os;
        os << "pulse design failure: Gamma2 would exceed the ceiling " << ceiling << " at t = " << times[k];
        throw NumericalError(os.str());
      }
      double lo = 0.0;
      if (resid(lo) <= 0.0) {
        b = 0.0;
      } else {
        boost::uintmax_t iters = 200;
        auto tol = boost::math::tools::eps_tolerance<double>(52);
        const auto root = boost::math::tools::toms748_solve(resid, lo, hi, tol, iters);
        b = 0.5 * (root.first + root.second);
      }
      if (b > ceiling) {
        std::ostringstream os;
        os << "pulse design failure: Gamma2 = " << b << " exceeds the ceiling " << ceiling << " at t = " << times[k];
        throw NumericalError(os.str());
      }
    }
    g2[k] = b;
    v2 = v2_after(b);
    v1 = v1n;
  }
  return tabulated_schedule(times, g1, g2, PulseShape::iterative_darkstate);
}

double effective_occupation_closed(double N_th, double N0, double gamma, double gamma_max) {
  return (2.0 * gamma * N0 + gamma_max * N_th) / (2.0 * gamma + gamma_max);
}

double absorption_kernel(const PulseSchedule& s, double t) {
  const double g = s.gamma1(t);
  if (g <= 0.0) return 0.0;
  return std::sqrt(g) * std::exp(-0.5 * s.integral1(t, s.t_end));
}

double effective_occupation_integral(const PulseSchedule& s, const ChannelNoiseModel& noise) {
  if (noise.N_th < 0.0 || noise.N0 < 0.0) throw ConfigError("noise occupations must be >= 0");
  if (noise.N_th == 0.0 && (noise.kind == ChannelNoiseModel::Kind::white || noise.N0 == 0.0)) return 0.0;
  const auto bp = s.breakpoints();
  const std::vector<double> ends{s.t_start, s.t_end};
  const auto stops = merged_stops(ends, bp, s.t_start, s.t_end);
  const double gt = noise.gamma_tilde, dl = noise.detuning;
  // y = (int f^2, Re h, Im h, Re I, Im I) with dh/dt = (-gt + i dl) h + f, dI/dt = f h
  State5 y{0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 1; k < stops.size(); ++k) {
    SegmentRates r{s, stops[k - 1], stops[k]};
    auto sys = [&](const State5& x, State5& dx, double t) {
      const double g = r.g1(t);
      const double f = g > 0.0 ? std::sqrt(g) * std::exp(-0.5 * s.integral1(r.clamp(t), s.t_end)) : 0.0;
      dx[0] = f * f;
      dx[1] = -gt * x[1] - dl * x[2] + f;
      dx[2] = -gt * x[2] + dl * x[1];
      dx[3] = f * x[1];
      dx[4] = f * x[2];
    };
    integrate_segment(sys, y, stops[k - 1], stops[k], 1e-11, 1e-15);
  }
  if (noise.kind == ChannelNoiseModel::Kind::white) return noise.N_th * y[0];
  return noise.N_th * y[0] - (noise.N_th - noise.N0) * gt * y[3];
}

std::vector<cd> pulse_spectrum_F(const PulseSchedule& s, const std::vector<double>& omega, Execution exec) {
  const auto bp = s.breakpoints();
  const std::vector<double> ends{s.t_start, s.t_end};
  const auto stops = merged_stops(ends, bp, s.t_start, s.t_end);
  std::vector<cd> F(omega.size());
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for_each_index(omega.size(), exec, [&](std::size_t j) {
    const double w = omega[j];
    double re = 0.0, im = 0.0;
    for (std::size_t k = 1; k < stops.size(); ++k) {
      SegmentRates r{s, stops[k - 1], stops[k]};
      auto f = [&](double t) {
        const double g = r.g1(t);
        return g > 0.0 ? std::sqrt(g) * std::exp(-0.5 * s.integral1(r.clamp(t), s.t_end)) : 0.0;
      };
      re += gk([&](double t) { return f(t) * std::cos(w * t); }, stops[k - 1], stops[k], 1e-10);
      im += gk([&](double t) { return f(t) * std::sin(w * t); }, stops[k - 1], stops[k], 1e-10);
    }
    F[j] = norm * cd(re, im);
  });
  return F;
}

}  // namespace phononet::transfer
