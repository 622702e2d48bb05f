#include "phononet/cascaded_me.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>

#include "phononet/errors.hpp"

namespace phononet::cascade {

namespace odeint = boost::numeric::odeint;

int default_fock_cutoff(double N_th) {
  const int n = std::max(4, static_cast<int>(std::ceil(4.0 * N_th)) + 4);
  return std::min(n, 30);
}

namespace {

SpMat lowering_cavity(int levels) {
  SpMat a(levels, levels);
  for (int n = 1; n < levels; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

SpMat sigma_minus() {
  SpMat s(2, 2);
  s.insert(0, 1) = 1.0;
  return s;
}

SpMat identity(int n) {
  SpMat I(n, n);
  I.setIdentity();
  return I;
}

SpMat kron(const SpMat& A, const SpMat& B) {
  SpMat C(A.rows() * B.rows(), A.cols() * B.cols());
  std::vector<Eigen::Triplet<cd>> trip;
  for (int ka = 0; ka < A.outerSize(); ++ka)
    for (SpMat::InnerIterator ia(A, ka); ia; ++ia)
      for (int kb = 0; kb < B.outerSize(); ++kb)
        for (SpMat::InnerIterator ib(B, kb); ib; ++ib)
          trip.emplace_back(ia.row() * B.rows() + ib.row(), ia.col() * B.cols() + ib.col(), ia.value() * ib.value());
  C.setFromTriplets(trip.begin(), trip.end());
  return C;
}

void check_rho(const DensityMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    std::ostringstream os;
    os << "density matrix is " << rho.rows() << "x" << rho.cols() << ", expected " << dim << "x" << dim;
    throw ConfigError(os.str());
  }
}

}  // namespace

void Generator::apply(const DensityMatrix& rho, DensityMatrix& drho) const {
  DensityMatrix Kr = K * rho;
  drho = Kr + Kr.adjoint();
  for (const auto& L : jumps) {
    DensityMatrix Lr = L * rho;
    drho.noalias() += Lr * SpMat(L.adjoint());
  }
}

LindbladGenerator::LindbladGenerator(const CascadedModel& model) : model_(model) {
  if (!model.schedule) throw ConfigError("cascaded model: missing pulse schedule");
  if (model.gamma < 0.0 || model.gamma_op < 0.0 || model.gamma_intrinsic < 0.0 || model.N_th < 0.0)
    throw ConfigError("cascaded model: rates and N_th must be >= 0");
  const auto& h = model.hilbert;
  if (h.include_cavity && (h.fock_cutoff < 1 || h.fock_cutoff > 60))
    throw ConfigError("cascaded model: fock_cutoff must lie in [1, 60]");
  const int nc = h.cavity_levels();
  const SpMat I2 = identity(2);
  const SpMat sm = sigma_minus();
  c_[0] = kron(kron(lowering_cavity(nc), I2), I2);
  c_[1] = kron(kron(identity(nc), sm), I2);
  c_[2] = kron(kron(identity(nc), I2), sm);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      cdc_[k][l] = SpMat(c_[k].adjoint()) * c_[l];
      ccd_[k][l] = c_[k] * SpMat(c_[l].adjoint());
    }
}

Generator LindbladGenerator::at(double t) const {
  return build(model_.schedule->gamma1(t), model_.schedule->gamma2(t));
}

Generator LindbladGenerator::at(double t, double lo, double hi) const {
  const double d = 1e-9 * (hi - lo);
  const double tc = std::min(std::max(t, lo + d), hi - d);
  return at(tc);
}

Generator LindbladGenerator::build(double g1, double g2) const {
  const cd I(0.0, 1.0);
  const auto& m = model_;
  const double rate[3] = {m.hilbert.include_cavity ? m.gamma : 0.0, g1, g2};
  double sq[3];
  for (int k = 0; k < 3; ++k) sq[k] = std::sqrt(std::max(rate[k], 0.0));

  const int d = m.hilbert.dim();
  SpMat S(d, d), H(d, d), StS(d, d), SSt(d, d);
  for (int k = 0; k < 3; ++k) {
    if (sq[k] == 0.0) continue;
    S += sq[k] * c_[k];
    for (int l = 0; l < 3; ++l) {
      if (sq[l] == 0.0) continue;
      StS += (sq[k] * sq[l]) * cdc_[k][l];
      SSt += (sq[k] * sq[l]) * ccd_[k][l];
      // upstream k < l drives downstream l
      if (k < l) H += (-0.5 * I * sq[k] * sq[l]) * (cdc_[l][k] - cdc_[k][l]);
    }
  }

  Generator g;
  g.H = H;
  const double N = m.N_th;
  SpMat decay = (N + 1.0) * StS + N * SSt;
  if (N + 1.0 > 0.0) g.jumps.push_back(std::sqrt(N + 1.0) * S);
  if (N > 0.0) g.jumps.push_back(std::sqrt(N) * SpMat(S.adjoint()));
  if (m.hilbert.include_cavity) {
    const SpMat& b = c_[0];
    if (m.gamma_op > 0.0) {
      g.jumps.push_back(std::sqrt(m.gamma_op) * b);
      decay += m.gamma_op * cdc_[0][0];
    }
    if (m.gamma_intrinsic > 0.0) {
      g.jumps.push_back(std::sqrt(m.gamma_intrinsic * (N + 1.0)) * b);
      decay += (m.gamma_intrinsic * (N + 1.0)) * cdc_[0][0];
      if (N > 0.0) {
        g.jumps.push_back(std::sqrt(m.gamma_intrinsic * N) * SpMat(b.adjoint()));
        decay += (m.gamma_intrinsic * N) * ccd_[0][0];
      }
    }
  }
  g.K = -I * H - 0.5 * decay;
  g.K.prune(cd(0.0));
  return g;
}

Trajectory integrate(const CascadedModel& model, const DensityMatrix& rho0, const std::vector<double>& sample_times,
                     IntegratorOptions opt) {
  const LindbladGenerator gen(model);
  const int d = model.hilbert.dim();
  check_rho(rho0, d);
  if (sample_times.empty()) throw ConfigError("cascaded integrate: no sample times");
  for (std::size_t k = 1; k < sample_times.size(); ++k)
    if (!(sample_times[k] > sample_times[k - 1])) throw ConfigError("cascaded integrate: sample times must increase");

  const double t0 = sample_times.front(), t1 = sample_times.back();
  std::vector<double> stops = sample_times;
  for (double x : model.schedule->breakpoints())
    if (x > t0 && x < t1) stops.push_back(x);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  using State = std::vector<double>;
  State x(2 * static_cast<std::size_t>(d) * d);
  auto as_matrix = [d](State& s) { return Eigen::Map<DensityMatrix>(reinterpret_cast<cd*>(s.data()), d, d); };
  as_matrix(x) = rho0;

  Trajectory out;
  auto record = [&](double t) {
    DensityMatrix r = as_matrix(x);
    out.times.push_back(t);
    out.max_trace_error = std::max(out.max_trace_error, std::abs(r.trace() - 1.0));
    out.states.push_back(std::move(r));
  };
  record(t0);

  auto stepper = odeint::make_controlled(opt.abs, opt.rel, odeint::runge_kutta_dopri5<State>());
  const double span = t1 - t0;
  double dt = span > 0.0 ? span * 1e-4 : 0.0;
  std::size_t si = 1;
  DensityMatrix tmp(d, d);
  for (std::size_t k = 1; k < stops.size(); ++k) {
    const double a = stops[k - 1], b = stops[k];
    auto sys = [&](const State& y, State& dy, double t) {
      const Generator g = gen.at(t, a, b);
      auto rho = Eigen::Map<const DensityMatrix>(reinterpret_cast<const cd*>(y.data()), d, d);
      g.apply(rho, tmp);
      dy.resize(y.size());
      Eigen::Map<DensityMatrix>(reinterpret_cast<cd*>(dy.data()), d, d) = tmp;
    };
    double t = a;
    stepper.reset();
    while (t < b) {
      if (t + dt > b) dt = b - t;
      const double t_before = t;
      const auto res = stepper.try_step(sys, x, t, dt);
      if (res == odeint::success) {
        ++out.steps;
        // keep rho Hermitian against roundoff
        auto r = as_matrix(x);
        r = (0.5 * (r + r.adjoint())).eval();
        stepper.reset();
        if (b - t < 1e-12 * std::max(1.0, std::abs(b))) t = b;
      } else if (dt < 1e-14 * std::max(span, 1.0)) {
        std::ostringstream os;
        os << "cascaded master equation: step size underflow at t = " << t_before;
        throw NumericalError(os.str());
      }
    }
    if (si < sample_times.size() && b == sample_times[si]) {
      record(b);
      ++si;
    }
  }
  for (const auto& r : out.states)
    if (!r.allFinite()) throw NumericalError("cascaded master equation: non-finite density matrix");
  return out;
}

DensityMatrix initial_state(const HilbertSpec& h, cd a0, cd a1, double cavity_occ) {
  if (cavity_occ < 0.0) throw ConfigError("initial state: cavity occupation must be >= 0");
  const double nrm = std::norm(a0) + std::norm(a1);
  if (!(nrm > 0.0)) throw ConfigError("initial state: qubit amplitudes vanish");
  a0 /= std::sqrt(nrm);
  a1 /= std::sqrt(nrm);
  const int nc = h.cavity_levels();
  std::vector<double> p(nc);
  double tot = 0.0;
  for (int n = 0; n < nc; ++n) {
    p[n] = std::pow(cavity_occ, n) / std::pow(1.0 + cavity_occ, n + 1);
    tot += p[n];
  }
  const int d = h.dim();
  DensityMatrix rho = DensityMatrix::Zero(d, d);
  const cd q[2] = {a0, a1};
  for (int n = 0; n < nc; ++n)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) rho(n * 4 + i * 2, n * 4 + j * 2) = p[n] / tot * q[i] * std::conj(q[j]);
  return rho;
}

double cavity_steady_occupation(const CascadedModel& m) {
  const double tot = m.gamma + m.gamma_intrinsic + m.gamma_op;
  if (!(tot > 0.0)) return m.N_th;
  return (m.gamma + m.gamma_intrinsic) * m.N_th / tot;
}

Eigen::Matrix2cd reduce_to_qubit(const DensityMatrix& rho, const HilbertSpec& h, int qubit) {
  check_rho(rho, h.dim());
  if (qubit != 1 && qubit != 2) throw ConfigError("reduce_to_qubit: qubit must be 1 or 2");
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  const int nc = h.cavity_levels();
  for (int n = 0; n < nc; ++n)
    for (int o = 0; o < 2; ++o)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const int ri = qubit == 1 ? n * 4 + i * 2 + o : n * 4 + o * 2 + i;
          const int rj = qubit == 1 ? n * 4 + j * 2 + o : n * 4 + o * 2 + j;
          r(i, j) += rho(ri, rj);
        }
  return r;
}

double excited_population(const DensityMatrix& rho, const HilbertSpec& h, int qubit) {
  return reduce_to_qubit(rho, h, qubit)(1, 1).real();
}

double cavity_occupation(const DensityMatrix& rho, const HilbertSpec& h) {
  check_rho(rho, h.dim());
  double n = 0.0;
  for (int i = 0; i < h.dim(); ++i) n += (i / 4) * rho(i, i).real();
  return n;
}

double min_eigenvalue(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& target) {
  if (rho.rows() != target.rows() || rho.cols() != target.cols())
    throw ConfigError("fidelity: dimension mismatch");
  return (target * rho).trace().real();
}

Eigen::Matrix2cd transfer_target(cd a0, cd a1, double transfer_sign) {
  const double nrm = std::sqrt(std::norm(a0) + std::norm(a1));
  if (!(nrm > 0.0)) throw ConfigError("transfer target: qubit amplitudes vanish");
  Eigen::Vector2cd v(a0 / nrm, (transfer_sign < 0.0 ? -1.0 : 1.0) * a1 / nrm);
  return v * v.adjoint();
}

Trajectory reduced_two_qubit_model(double N_eff, std::shared_ptr<const transfer::PulseSchedule> schedule, cd a0,
                                   cd a1, const std::vector<double>& sample_times, IntegratorOptions opt) {
  CascadedModel m;
  m.gamma = 0.0;
  m.gamma_op = 0.0;
  m.N_th = N_eff;
  m.hilbert.include_cavity = false;
  m.hilbert.fock_cutoff = 0;
  m.schedule = std::move(schedule);
  return integrate(m, initial_state(m.hilbert, a0, a1, 0.0), sample_times, opt);
}

std::vector<FidelityPoint> fidelity_sweep(double gamma, const std::vector<double>& gamma_max,
                                          const std::vector<double>& N_th, double n0_ratio, double window_factor,
                                          Execution exec) {
  if (!(gamma > 0.0)) throw ConfigError("fidelity sweep: gamma must be > 0");
  std::vector<FidelityPoint> out(gamma_max.size() * N_th.size());
  for_each_index(out.size(), exec, [&](std::size_t k) {
    const double G = gamma_max[k / N_th.size()];
    const double N = N_th[k % N_th.size()];
    if (!(G > 0.0)) throw ConfigError("fidelity sweep: Gamma_max must be > 0");
    if (N < 0.0) throw ConfigError("fidelity sweep: N_th must be >= 0");
    auto s = std::make_shared<transfer::PulseSchedule>(transfer::analytic_schedule(G, window_factor));
    const double N_eff = n0_ratio < 0.0 ? N : transfer::effective_occupation_closed(N, n0_ratio * N, gamma, G);
    // T(t_f) sign from the ideal transfer
    const auto amp = transfer::evolve_amplitudes(*s, {s->t_start, s->t_end});
    const double sign = amp.T.back() < 0.0 ? -1.0 : 1.0;
    const cd h(1.0 / std::sqrt(2.0), 0.0);
    const auto tr = reduced_two_qubit_model(N_eff, s, h, h, {s->t_start, s->t_end});
    const auto rho2 = reduce_to_qubit(tr.states.back(), HilbertSpec{0, false}, 2);
    out[k] = {N, G, N_eff, fidelity(rho2, transfer_target(h, h, sign))};
  });
  return out;
}

}  // namespace phononet::cascade
