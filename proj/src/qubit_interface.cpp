#include "phononet/qubit_interface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "phononet/errors.hpp"
#include "phononet/warnings.hpp"

namespace phononet::nv {

void RamanParams::validate() const {
  if (!(Gamma_e > 0.0)) throw ConfigError("nv: Gamma_e must be > 0");
  if (!(omega_m > 0.0)) throw ConfigError("nv: omega_m must be > 0");
  if (!std::isfinite(lambda) || !std::isfinite(Omega0) || !std::isfinite(Omega1) || !std::isfinite(Delta))
    throw ConfigError("nv: parameters must be finite");
}

SpinPhononCoupling effective_spin_phonon(const RamanParams& p) {
  p.validate();
  const double denom = p.Delta * p.Delta - 0.25 * p.omega_m * p.omega_m;
  const double D0 = p.Delta + 0.5 * p.omega_m, D1 = p.Delta - 0.5 * p.omega_m;
  if (denom == 0.0 || D0 == 0.0 || D1 == 0.0) {
    std::ostringstream os;
    os << "nv: Raman resonance at Delta = " << p.Delta << " (Delta = +-omega_m/2)";
    throw NumericalError(os.str());
  }
  if (std::abs(D0) < 5.0 * std::abs(p.Omega0) || std::abs(D1) < 5.0 * std::abs(p.Omega1))
    warn("nv: |Delta_j| / Omega_j < 5, adiabatic elimination questionable");
  SpinPhononCoupling c;
  c.lambda_eff = p.lambda * p.Omega0 * p.Omega1 / denom;
  c.lambda_magnitude = std::abs(c.lambda_eff);
  c.lambda_phase = c.lambda_eff < 0.0 ? std::numbers::pi : 0.0;
  c.Gamma_eff_0 = p.Gamma_e * p.Omega0 * p.Omega0 / (D0 * D0);
  c.Gamma_eff_1 = p.Gamma_e * p.Omega1 * p.Omega1 / (D1 * D1);
  c.Gamma_bar = 0.5 * (c.Gamma_eff_0 + c.Gamma_eff_1);
  c.ratio = c.Gamma_bar > 0.0 ? c.lambda_magnitude / c.Gamma_bar : 0.0;
  return c;
}

FigureOfMerit figure_of_merit_sweep(RamanParams p, const std::vector<double>& grid, Execution exec) {
  FigureOfMerit f;
  f.Delta = grid;
  f.ratio.resize(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    RamanParams q = p;
    q.Delta = grid[k];
    f.ratio[k] = effective_spin_phonon(q).ratio;
  });
  if (!grid.empty())
    f.argmax = static_cast<std::size_t>(std::max_element(f.ratio.begin(), f.ratio.end()) - f.ratio.begin());
  return f;
}

}  // namespace phononet::nv
