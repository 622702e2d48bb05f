#include "phononet/waveguide.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "phononet/errors.hpp"
#include "phononet/warnings.hpp"

namespace phononet::waveguide {

namespace {
constexpr double pi = std::numbers::pi;
}

double dispersion_exact_q(const ChainSpec& c, double qa) {
  return std::sqrt(c.omega0 * c.omega0 + 2.0 * c.coupling_K * c.omega0 * (1.0 - std::cos(qa)));
}

double dispersion_exact(const ChainSpec& c, int n) {
  if (c.n_sites < 2) throw ConfigError("chain needs at least 2 sites");
  const int N = c.n_sites;
  // zone (-N/2, N/2] for even N, [-(N-1)/2, (N-1)/2] for odd N
  const int hi = N / 2;
  const int lo = -((N - 1) / 2);
  if (n < lo || n > hi)
    throw ConfigError("mode index " + std::to_string(n) + " outside the Brillouin zone [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  return dispersion_exact_q(c, 2.0 * pi * n / N);
}

double dispersion_tight_binding(const ChainSpec& c, double qa) {
  return c.omega0 + c.coupling_K * (1.0 - std::cos(qa));
}

double dispersion_linear(const ChainSpec& c, double qa) {
  const ContinuumChannel ch = continuum_parameters(c);
  return ch.omega_offset + c.coupling_K * std::abs(qa);
}

ContinuumChannel continuum_parameters(const ChainSpec& c) {
  if (c.omega0 > 0.0 && c.coupling_K / c.omega0 >= 0.1)
    warn("continuum parameters: K/omega0 = " + std::to_string(c.coupling_K / c.omega0) +
         " is not small; tight-binding limit questionable");
  ContinuumChannel ch;
  ch.sound_speed_c = c.coupling_K * c.lattice_a;
  ch.omega_offset = c.omega0 - (pi / 2.0 - 1.0) * c.coupling_K;
  ch.bandwidth = 2.0 * c.coupling_K;
  ch.mean_free_path = c.intrinsic_gamma0 > 0.0 ? ch.sound_speed_c / c.intrinsic_gamma0 : INFINITY;
  ch.bath_occupation = c.bath_occupation;
  return ch;
}

double waveguide_coupling_rate(double K_loc, double bandwidth) {
  if (K_loc < 0.0 || bandwidth <= 0.0) throw ConfigError("waveguide coupling: need K_loc >= 0 and bandwidth > 0");
  if (K_loc >= bandwidth)
    throw ConfigError("waveguide coupling: K_loc must be small compared to the bandwidth (K_loc >= bandwidth)");
  if (K_loc > 0.2 * bandwidth) warn("waveguide coupling: K_loc/bandwidth > 0.2, Markov approximation marginal");
  return 2.0 * K_loc * K_loc / bandwidth;
}

NoiseSpectrum propagate_spectrum(const NoiseSpectrum& s, double z, const ContinuumChannel& ch) {
  if (!(z >= 0.0)) throw ConfigError("propagation distance must be >= 0");
  NoiseSpectrum out;
  out.grid = s.grid;
  out.values.resize(s.values.size());
  const double T = std::isinf(ch.mean_free_path) ? 1.0 : std::exp(-z / ch.mean_free_path);
  for (std::size_t k = 0; k < s.values.size(); ++k)
    out.values[k] = T * s.values[k] + ch.bath_occupation * (1.0 - T);
  return out;
}

LinearNetwork lossy_chain_network(const ChainSpec& c, int site, double drive_occupation) {
  LinearNetwork net;
  for (int l = 0; l <= site; ++l)
    net.modes.push_back({"s" + std::to_string(l), ModeKind::mechanical, c.omega0 + c.coupling_K,
                         c.intrinsic_gamma0, c.bath_occupation});
  for (int l = 0; l < site; ++l)
    net.couplings.push_back({"s" + std::to_string(l + 1), "s" + std::to_string(l), cd(-c.coupling_K / 2.0, 0.0), true});
  net.ports.push_back({"s0", c.coupling_K, drive_occupation, "in"});
  net.ports.push_back({"s" + std::to_string(site), c.coupling_K, c.bath_occupation, "out"});
  return net;
}

NoiseSpectrum simulate_lossy_chain(const ChainSpec& c, const NoiseSpectrum& drive, int site, Execution exec) {
  if (site < 0) throw ConfigError("lossy chain: site must be >= 0");
  if (site >= c.n_sites) throw ConfigError("lossy chain: site must be < n_sites");
  if (site + 1 > 400)
    throw NumericalError("lossy chain: " + std::to_string(site + 1) + " sites exceeds the oracle limit of 400");
  if (c.coupling_K <= 0.0) throw ConfigError("lossy chain: K must be > 0");
  const int n = site + 1;
  const cd I(0.0, 1.0);
  const double gp = c.coupling_K;
  const cd off = -I * c.coupling_K / 2.0;

  NoiseSpectrum out;
  out.grid = drive.grid;
  out.values.assign(drive.grid.size(), 0.0);
  for_each_index(drive.grid.size(), exec, [&](std::size_t k) {
    const double w = drive.grid[k];
    // Thomas solve of A x = e_site, A complex symmetric tridiagonal, so x is
    // also the row `site` of the susceptibility.
    std::vector<cd> diag(n), cp(n), dp(n), x(n);
    for (int l = 0; l < n; ++l) {
      double loss = c.intrinsic_gamma0;
      if (l == 0) loss += gp;
      if (l == site) loss += gp;
      diag[l] = I * (c.omega0 + c.coupling_K - w) + 0.5 * loss;
    }
    cp[0] = n > 1 ? off / diag[0] : cd(0.0);
    dp[0] = (site == 0 ? cd(1.0) : cd(0.0)) / diag[0];
    for (int l = 1; l < n; ++l) {
      const cd m = diag[l] - off * cp[l - 1];
      if (std::abs(m) == 0.0) throw NumericalError("lossy chain: singular tridiagonal system");
      cp[l] = l < n - 1 ? off / m : cd(0.0);
      dp[l] = ((l == site ? cd(1.0) : cd(0.0)) - off * dp[l - 1]) / m;
    }
    x[n - 1] = dp[n - 1];
    for (int l = n - 2; l >= 0; --l) x[l] = dp[l] - cp[l] * x[l + 1];

    double N = 0.0;
    if (site == 0) {
      // both ports on one site
      const cd r = 1.0 - gp * x[0];
      const cd t = -gp * x[0];
      N = std::norm(t) * drive.values[k] + std::norm(r) * c.bath_occupation;
    } else {
      const cd t = -gp * x[0];
      const cd r = 1.0 - gp * x[site];
      N = std::norm(t) * drive.values[k] + std::norm(r) * c.bath_occupation;
    }
    double intr = 0.0;
    for (int l = 0; l < n; ++l) intr += std::norm(x[l]);
    N += gp * c.intrinsic_gamma0 * intr * c.bath_occupation;
    out.values[k] = N;
  });
  return out;
}

}  // namespace phononet::waveguide
