#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "phononet/errors.hpp"
#include "phononet/linear_network.hpp"

namespace phononet {

double lorentzian_dip(const LorentzFit& p, double omega) {
  const double x = omega - p.omega_tilde;
  const double g2 = p.gamma_tilde * p.gamma_tilde;
  return p.plateau - (p.plateau - p.N0) * g2 / (x * x + g2);
}

namespace {

// Parameters: (w0 - center) / scale, g / scale, N0 [, P].
struct DipFunctor : Eigen::DenseFunctor<double> {
  const std::vector<double>& w;
  const std::vector<double>& y;
  double center, scale;
  bool fit_plateau;
  double plateau;

  DipFunctor(const std::vector<double>& w_, const std::vector<double>& y_, double c, double s, bool fp,
             double P)
      : Eigen::DenseFunctor<double>(fp ? 4 : 3, static_cast<int>(w_.size())),
        w(w_), y(y_), center(c), scale(s), fit_plateau(fp), plateau(P) {}

  int operator()(const InputType& p, ValueType& f) const {
    const double w0 = center + scale * p(0), g = scale * p(1), N0 = p(2);
    const double P = fit_plateau ? p(3) : plateau;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double x = w[k] - w0;
      f(k) = P - (P - N0) * g * g / (x * x + g * g) - y[k];
    }
    return 0;
  }

  int df(const InputType& p, JacobianType& J) const {
    const double w0 = center + scale * p(0), g = scale * p(1), N0 = p(2);
    const double P = fit_plateau ? p(3) : plateau;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double x = w[k] - w0;
      const double d = x * x + g * g;
      const double L = g * g / d;
      J(k, 0) = -(P - N0) * g * g * 2.0 * x / (d * d) * scale;
      J(k, 1) = -(P - N0) * 2.0 * g * x * x / (d * d) * scale;
      J(k, 2) = L;
      if (fit_plateau) J(k, 3) = 1.0 - L;
    }
    return 0;
  }
};

}  // namespace

LorentzFit fit_lorentzian_dip(const NoiseSpectrum& s, std::optional<double> fixed_plateau) {
  const std::size_t n = s.grid.size();
  if (n < 5 || s.values.size() != n) throw NumericalError("fit needs at least 5 spectrum samples");
  const auto it = std::min_element(s.values.begin(), s.values.end());
  const std::size_t kmin = static_cast<std::size_t>(it - s.values.begin());
  if (kmin == 0 || kmin == n - 1) throw NumericalError("fit error: spectrum has no interior minimum");

  const double ymin = *it;
  const double P0 = fixed_plateau ? *fixed_plateau : std::max(s.values.front(), s.values.back());
  if (!(P0 > ymin)) throw NumericalError("fit error: spectrum has no dip below its plateau");
  const double half = 0.5 * (P0 + ymin);
  std::size_t lo = kmin, hi = kmin;
  while (lo > 0 && s.values[lo] < half) --lo;
  while (hi < n - 1 && s.values[hi] < half) ++hi;
  double g0 = 0.5 * (s.grid[hi] - s.grid[lo]);
  if (!(g0 > 0.0)) g0 = 0.25 * (s.grid.back() - s.grid.front());

  const double center = s.grid[kmin];
  const bool fit_plateau = !fixed_plateau.has_value();
  DipFunctor f(s.grid, s.values, center, g0, fit_plateau, P0);
  Eigen::VectorXd p(fit_plateau ? 4 : 3);
  p(0) = 0.0;
  p(1) = 1.0;
  p(2) = ymin;
  if (fit_plateau) p(3) = P0;

  Eigen::LevenbergMarquardt<DipFunctor> lm(f);
  lm.setXtol(1e-15);
  lm.setFtol(1e-15);
  lm.setGtol(0.0);
  lm.setMaxfev(4000);
  const auto status = lm.minimize(p);
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters)
    throw NumericalError("fit error: improper input to Levenberg-Marquardt");

  LorentzFit out;
  out.omega_tilde = center + g0 * p(0);
  out.gamma_tilde = std::abs(g0 * p(1));
  out.N0 = p(2);
  out.plateau = fit_plateau ? p(3) : P0;
  Eigen::VectorXd r(n);
  f(p, r);
  out.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(n));
  if (!std::isfinite(out.omega_tilde) || !std::isfinite(out.N0))
    throw NumericalError("fit error: non-finite parameters");
  return out;
}

}  // namespace phononet
