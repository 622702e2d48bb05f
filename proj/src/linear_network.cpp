#include "phononet/linear_network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "phononet/errors.hpp"

namespace phononet {

namespace {
const cd I(0.0, 1.0);

std::string fmt_cd(cd z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}
}  // namespace

void LinearNetwork::validate() const {
  if (modes.empty()) throw ConfigError("network has no modes");
  std::set<std::string> labels;
  for (const auto& m : modes) {
    if (m.label.empty()) throw ConfigError("mode with empty label");
    if (!labels.insert(m.label).second) throw ConfigError("duplicate mode label '" + m.label + "'");
    if (!(m.intrinsic_rate >= 0.0) || !std::isfinite(m.intrinsic_rate))
      throw ConfigError("mode '" + m.label + "': intrinsic_rate must be >= 0");
    if (!(m.bath_occupation >= 0.0) || !std::isfinite(m.bath_occupation))
      throw ConfigError("mode '" + m.label + "': bath_occupation must be >= 0");
    if (!std::isfinite(m.frequency)) throw ConfigError("mode '" + m.label + "': frequency not finite");
  }
  for (const auto& c : couplings) {
    if (!labels.count(c.mode_a)) throw ConfigError("coupling references unknown mode '" + c.mode_a + "'");
    if (!labels.count(c.mode_b)) throw ConfigError("coupling references unknown mode '" + c.mode_b + "'");
    if (c.mode_a == c.mode_b) throw ConfigError("coupling of mode '" + c.mode_a + "' to itself");
    if (!std::isfinite(c.amplitude.real()) || !std::isfinite(c.amplitude.imag()))
      throw ConfigError("coupling " + c.mode_a + "-" + c.mode_b + ": amplitude not finite");
  }
  std::set<std::string> port_labels;
  for (const auto& p : ports) {
    if (!labels.count(p.mode)) throw ConfigError("port references unknown mode '" + p.mode + "'");
    if (!(p.rate > 0.0) || !std::isfinite(p.rate)) throw ConfigError("port on '" + p.mode + "': rate must be > 0");
    if (!(p.input_occupation >= 0.0)) throw ConfigError("port on '" + p.mode + "': input_occupation must be >= 0");
    const std::string l = p.label.empty() ? p.mode : p.label;
    if (!port_labels.insert(l).second) throw ConfigError("duplicate port '" + l + "'");
  }
}

int LinearNetwork::mode_index(const std::string& label) const {
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].label == label) return static_cast<int>(i);
  return -1;
}

int LinearNetwork::port_index(const std::string& label) const {
  for (std::size_t i = 0; i < ports.size(); ++i)
    if (ports[i].label == label) return static_cast<int>(i);
  for (std::size_t i = 0; i < ports.size(); ++i)
    if (ports[i].label.empty() && ports[i].mode == label) return static_cast<int>(i);
  return -1;
}

bool LinearNetwork::all_rotating_wave() const {
  for (const auto& c : couplings)
    if (!c.rotating_wave) return false;
  return true;
}

double particle_hole_defect(const CMat& M) {
  const int n = static_cast<int>(M.rows()) / 2;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const cd lhs = M(2 * i + a, 2 * j + b);
          const cd rhs = std::conj(M(2 * i + 1 - a, 2 * j + 1 - b));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

DriftMatrix build_drift_matrix(const LinearNetwork& network) {
  network.validate();
  const int n = static_cast<int>(network.modes.size());
  DriftMatrix d;
  d.n_modes = n;
  d.M = CMat::Zero(2 * n, 2 * n);

  std::vector<double> port_sum(n, 0.0);
  for (const auto& p : network.ports) port_sum[network.mode_index(p.mode)] += p.rate;

  for (int i = 0; i < n; ++i) {
    const auto& m = network.modes[i];
    d.M(2 * i, 2 * i) = I * m.frequency + 0.5 * (m.intrinsic_rate + port_sum[i]);
  }
  for (const auto& c : network.couplings) {
    const int a = network.mode_index(c.mode_a);
    const int b = network.mode_index(c.mode_b);
    const cd G = c.amplitude;
    d.M(2 * a, 2 * b) += I * G;
    d.M(2 * b, 2 * a) += I * std::conj(G);
    if (!c.rotating_wave) {
      d.M(2 * a, 2 * b + 1) += I * G;
      d.M(2 * b, 2 * a + 1) += I * G;
    }
  }
  // creation rows follow from the annihilation rows by conjugation
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d.M(2 * i + 1, 2 * j + 1) = std::conj(d.M(2 * i, 2 * j));
      d.M(2 * i + 1, 2 * j) = std::conj(d.M(2 * i, 2 * j + 1));
    }

  const int P = static_cast<int>(network.ports.size());
  d.L = Eigen::MatrixXd::Zero(2 * P, 2 * n);
  for (int p = 0; p < P; ++p) {
    const int i = network.mode_index(network.ports[p].mode);
    const double s = std::sqrt(network.ports[p].rate);
    d.L(2 * p, 2 * i) = s;
    d.L(2 * p + 1, 2 * i + 1) = s;
    d.port_occupation.push_back(network.ports[p].input_occupation);
  }
  for (int i = 0; i < n; ++i)
    if (network.modes[i].intrinsic_rate > 0.0) {
      d.intrinsic_mode.push_back(i);
      d.intrinsic_occupation.push_back(network.modes[i].bath_occupation);
    }
  const int K = static_cast<int>(d.intrinsic_mode.size());
  d.L0 = Eigen::MatrixXd::Zero(2 * K, 2 * n);
  for (int k = 0; k < K; ++k) {
    const int i = d.intrinsic_mode[k];
    const double s = std::sqrt(network.modes[i].intrinsic_rate);
    d.L0(2 * k, 2 * i) = s;
    d.L0(2 * k + 1, 2 * i + 1) = s;
  }

  const double scale = d.M.cwiseAbs().maxCoeff();
  if (particle_hole_defect(d.M) > 1e-12 * std::max(scale, 1.0))
    throw NumericalError("drift matrix violates particle-hole symmetry");

  Eigen::ComplexEigenSolver<CMat> es(d.M, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue computation for stability check failed");
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const cd lam = es.eigenvalues()(k);
    if (lam.real() < -1e-12 * std::max(scale, 1.0))
      throw NumericalError("unstable drift matrix: eigenvalue " + fmt_cd(lam) + " has negative real part");
  }
  return d;
}

CMat susceptibility(const DriftMatrix& drift, double omega) {
  const int n = drift.dim();
  CMat A = drift.M;
  A.diagonal().array() -= I * omega;
  Eigen::PartialPivLU<CMat> lu(A);
  // rcond() skips exactly-zero pivots, so look at them too
  const auto piv = lu.matrixLU().diagonal().cwiseAbs();
  const double rc = piv.maxCoeff() > 0.0 ? std::min(lu.rcond(), piv.minCoeff() / piv.maxCoeff()) : 0.0;
  if (!(rc > 1e-15)) {
    std::ostringstream os;
    os << "M - i*omega is singular at omega = " << omega << " (rcond " << rc << ")";
    throw NumericalError(os.str());
  }
  CMat X = lu.solve(CMat::Identity(n, n));
  return X;
}

double susceptibility_residual(const DriftMatrix& drift, double omega, const CMat& X) {
  const int n = drift.dim();
  CMat A = drift.M;
  A.diagonal().array() -= I * omega;
  return (A * X - CMat::Identity(n, n)).norm() / std::sqrt(static_cast<double>(n));
}

Scattering scattering(const DriftMatrix& drift, double omega) {
  const CMat X = susceptibility(drift, omega);
  Scattering sc;
  const CMat Lc = drift.L.cast<cd>();
  sc.S = CMat::Identity(Lc.rows(), Lc.rows()) - Lc * X * Lc.transpose();
  sc.S_int = -(Lc * X * drift.L0.cast<cd>().transpose());
  return sc;
}

Scattering scattering(const LinearNetwork& network, double omega) {
  return scattering(build_drift_matrix(network), omega);
}

Scattering scattering_rwa_half(const LinearNetwork& network, double omega) {
  if (!network.all_rotating_wave()) throw ConfigError("half-dimension solve needs an all-RWA network");
  const DriftMatrix d = build_drift_matrix(network);
  const int n = d.n_modes;
  CMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = d.M(2 * i, 2 * j);
  A.diagonal().array() -= I * omega;
  const CMat X = A.partialPivLu().solve(CMat::Identity(n, n));
  CMat L(d.n_ports(), n), L0(d.n_intrinsic(), n);
  for (int p = 0; p < d.n_ports(); ++p)
    for (int i = 0; i < n; ++i) L(p, i) = d.L(2 * p, 2 * i);
  for (int k = 0; k < d.n_intrinsic(); ++k)
    for (int i = 0; i < n; ++i) L0(k, i) = d.L0(2 * k, 2 * i);
  Scattering sc;
  sc.S = CMat::Identity(d.n_ports(), d.n_ports()) - L * X * L.transpose();
  sc.S_int = -(L * X * L0.transpose());
  return sc;
}

namespace {
// Normal-ordered occupation of a field whose row of input coefficients is
// given in the doubled input basis.
template <class Row>
double occupation_from_row(const Row& row, const std::vector<double>& occ) {
  double s = 0.0;
  for (std::size_t k = 0; k < occ.size(); ++k) {
    s += std::norm(row(2 * k)) * occ[k];
    s += std::norm(row(2 * k + 1)) * (occ[k] + 1.0);
  }
  return s;
}
}  // namespace

double port_output_occupation(const DriftMatrix& drift, const Scattering& sc, int port) {
  return occupation_from_row(sc.S.row(2 * port), drift.port_occupation) +
         occupation_from_row(sc.S_int.row(2 * port), drift.intrinsic_occupation);
}

std::vector<double> linear_grid(double center, double half_span, int points) {
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  std::vector<double> g(points);
  for (int k = 0; k < points; ++k)
    g[k] = center - half_span + 2.0 * half_span * static_cast<double>(k) / (points - 1);
  return g;
}

namespace {
void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("empty frequency grid");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw ConfigError("frequency grid must be strictly increasing");
}
}  // namespace

NoiseSpectrum internal_spectrum(const LinearNetwork& network, const std::vector<double>& grid,
                                const std::string& mode, Execution exec) {
  check_grid(grid);
  const DriftMatrix d = build_drift_matrix(network);
  const int i = network.mode_index(mode);
  if (i < 0) throw ConfigError("unknown mode '" + mode + "'");
  NoiseSpectrum out;
  out.grid = grid;
  out.values.assign(grid.size(), 0.0);
  const CMat Lt = d.L.cast<cd>().transpose();
  const CMat L0t = d.L0.cast<cd>().transpose();
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    const CMat X = susceptibility(d, grid[k]);
    const CVec y = (X.row(2 * i) * Lt).transpose();
    const CVec y0 = (X.row(2 * i) * L0t).transpose();
    out.values[k] = occupation_from_row(y, d.port_occupation) + occupation_from_row(y0, d.intrinsic_occupation);
  });
  return out;
}

NoiseSpectrum output_spectrum(const LinearNetwork& network, const std::vector<double>& grid,
                              const std::string& port, Execution exec) {
  check_grid(grid);
  const DriftMatrix d = build_drift_matrix(network);
  const int p = network.port_index(port);
  if (p < 0) throw ConfigError("unknown port '" + port + "'");
  NoiseSpectrum out;
  out.grid = grid;
  out.values.assign(grid.size(), 0.0);
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    out.values[k] = port_output_occupation(d, scattering(d, grid[k]), p);
  });
  return out;
}

NoiseSpectrum filtered_noise_spectrum(const LinearNetwork& network, const std::vector<double>& grid,
                                      Execution exec) {
  bool has_optical = false;
  std::string mech_port;
  for (const auto& p : network.ports) {
    const int i = network.mode_index(p.mode);
    if (i < 0) continue;
    if (network.modes[i].kind == ModeKind::optical) has_optical = true;
    if (network.modes[i].kind == ModeKind::mechanical && mech_port.empty())
      mech_port = p.label.empty() ? p.mode : p.label;
  }
  if (mech_port.empty()) throw ConfigError("filtered noise spectrum needs a mechanical waveguide port");
  if (!has_optical) throw ConfigError("filtered noise spectrum needs an optical port");
  return output_spectrum(network, grid, mech_port, exec);
}

}  // namespace phononet
