#include "qdvr/mclachlan.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qdvr {

namespace {

// mean of `shots` +-1 outcomes, used for bounded interference estimates
double sample_pm1(double value, long shots, std::mt19937_64& rng) {
  const double p = std::clamp(0.5 * (1.0 + value), 0.0, 1.0);
  std::binomial_distribution<long> dist(shots, p);
  return 2.0 * static_cast<double>(dist(rng)) / static_cast<double>(shots) - 1.0;
}

Eigen::VectorXd theta_dot(const Eigen::MatrixXd& m, const Eigen::VectorXcd& f,
                          const IntegratorConfig& cfg, bool real_time) {
  Eigen::VectorXd rhs = real_time ? Eigen::VectorXd(-f.imag()) : Eigen::VectorXd(-f.real());
  if (cfg.sign == SignConvention::AsPrinted) rhs = -rhs;
  return solve_regularized(m, rhs, cfg.ridge);
}

// M and f from one sweep of derivative states (exact expectation path).
void assemble_exact_system(const Ansatz& a,
                           const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& h_apply,
                           Eigen::MatrixXd& m, Eigen::VectorXcd& f) {
  const auto ds = derivative_states(a);
  const long np = static_cast<long>(ds.size());
  m.resize(np, np);
  for (long k = 0; k < np; ++k) {
    m(k, k) = 1.0;
    for (long l = k + 1; l < np; ++l) {
      const double v = inner(ds[k], ds[l]).real();
      m(k, l) = v;
      m(l, k) = v;
    }
  }
  const StateVector psi = prepare(a);
  const Eigen::VectorXcd hpsi = h_apply(psi.amplitudes());
  f.resize(np);
  for (long k = 0; k < np; ++k) f[k] = hpsi.dot(ds[k].amplitudes());
}

}  // namespace

double HamiltonianOracle::expectation_value(const StateVector& psi) const {
  return psi.amplitudes().dot(apply(psi.amplitudes())).real();
}

Eigen::VectorXcd DrivenHamiltonian::apply(const Eigen::VectorXcd& v, double t) const {
  if (!h0) throw std::invalid_argument("DrivenHamiltonian: missing static part");
  Eigen::VectorXcd out = h0->apply(v);
  const double eps = field_at(t);
  if (coupling && eps != 0.0)
    out += (interaction_sign * eps) * coupling->apply(v);
  return out;
}

double DrivenHamiltonian::energy(const StateVector& psi, double t) const {
  return psi.amplitudes().dot(apply(psi.amplitudes(), t)).real();
}

Eigen::MatrixXd assemble_M(const Ansatz& a, const ShotConfig& cfg) {
  const auto ds = derivative_states(a);
  const long np = static_cast<long>(ds.size());
  Eigen::MatrixXd m(np, np);
  std::mt19937_64 rng(cfg.seed);
  for (long k = 0; k < np; ++k) {
    m(k, k) = 1.0;
    for (long l = k + 1; l < np; ++l) {
      double v = inner(ds[k], ds[l]).real();
      if (!cfg.is_exact()) v = sample_pm1(v, cfg.shots, rng);
      m(k, l) = v;
      m(l, k) = v;
    }
  }
  return m;
}

Eigen::VectorXcd assemble_f(const Ansatz& a, const PauliSum& h, const ShotConfig& cfg) {
  if (cfg.is_exact()) {
    PauliOracle oracle(h);
    return assemble_f(a, oracle, cfg);
  }
  // sampled mode estimates each term's interference value separately
  const StateVector psi = prepare(a);
  const auto ds = derivative_states(a);
  const long np = static_cast<long>(ds.size());
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(np);
  std::mt19937_64 rng(cfg.seed);
  for (long k = 0; k < np; ++k) {
    StateVector scratch = psi;
    for (const auto& [p, c] : h.terms()) {
      scratch.amplitudes() = psi.amplitudes();
      scratch.apply_pauli(p);
      const cdouble v = inner(scratch, ds[k]);
      const double re = sample_pm1(v.real(), cfg.shots, rng);
      const double im = sample_pm1(v.imag(), cfg.shots, rng);
      f[k] += c * cdouble{re, im};
    }
  }
  return f;
}

Eigen::VectorXcd assemble_f(const Ansatz& a, const HamiltonianOracle& h,
                            const ShotConfig& cfg) {
  if (!cfg.is_exact()) {
    // sampling needs a term decomposition
    const auto* pauli = dynamic_cast<const PauliOracle*>(&h);
    if (!pauli)
      throw std::invalid_argument("assemble_f: sampled mode needs a Pauli decomposition");
    return assemble_f(a, pauli->sum(), cfg);
  }
  const StateVector psi = prepare(a);
  const auto ds = derivative_states(a);
  const long np = static_cast<long>(ds.size());
  const Eigen::VectorXcd hpsi = h.apply(psi.amplitudes());
  Eigen::VectorXcd f(np);
  for (long k = 0; k < np; ++k) f[k] = hpsi.dot(ds[k].amplitudes());
  return f;
}

Eigen::VectorXcd assemble_f_deflated(const Ansatz& a, const PauliSum& h,
                                     const std::vector<std::pair<StateVector, double>>& deflation,
                                     const ShotConfig& cfg) {
  const StateVector psi = prepare(a);
  const auto ds = derivative_states(a);
  const long np = static_cast<long>(ds.size());
  Eigen::VectorXcd f(np);
  if (cfg.is_exact()) {
    Eigen::VectorXcd z = h.apply(psi.amplitudes());
    for (const auto& [state, beta] : deflation)
      z += (beta * inner(state, psi)) * state.amplitudes();
    for (long k = 0; k < np; ++k) f[k] = z.dot(ds[k].amplitudes());
    return f;
  }
  f = assemble_f(a, h, cfg);
  std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL);
  for (const auto& [state, beta] : deflation) {
    const cdouble ai = inner(state, psi);
    const cdouble ai_est{sample_pm1(ai.real(), cfg.shots, rng),
                         sample_pm1(ai.imag(), cfg.shots, rng)};
    for (long k = 0; k < np; ++k) {
      const cdouble bik = inner(state, ds[k]);
      const cdouble bik_est{sample_pm1(bik.real(), cfg.shots, rng),
                            sample_pm1(bik.imag(), cfg.shots, rng)};
      f[k] += beta * std::conj(ai_est) * bik_est;
    }
  }
  return f;
}

Eigen::MatrixXd assemble_M_hadamard(const Ansatz& a, const ShotConfig& cfg) {
  const long np = static_cast<long>(a.num_params());
  const StateVector ref = a.reference_state();
  Eigen::MatrixXd m(np, np);
  std::mt19937_64 seeds(cfg.seed);
  for (long k = 0; k < np; ++k) {
    for (long l = k; l < np; ++l) {
      std::vector<CircuitOp> ops;
      for (long j = 0; j <= k; ++j)
        ops.push_back(CircuitOp::rotation(a.generators[j], a.params[j]));
      ops.push_back(CircuitOp::pauli_gate(a.generators[k], CircuitOp::Control::OnZero));
      for (long j = k + 1; j <= l; ++j)
        ops.push_back(CircuitOp::rotation(a.generators[j], a.params[j]));
      ops.push_back(CircuitOp::pauli_gate(a.generators[l], CircuitOp::Control::OnOne));
      ShotConfig local = cfg;
      if (!cfg.is_exact()) local.seed = seeds();
      const double v = hadamard_test(ref, ops, 0.0, local);
      m(k, l) = v;
      m(l, k) = v;
    }
  }
  return m;
}

Eigen::VectorXcd assemble_f_hadamard(const Ansatz& a, const PauliSum& h,
                                     const ShotConfig& cfg) {
  const long np = static_cast<long>(a.num_params());
  const StateVector ref = a.reference_state();
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(np);
  std::mt19937_64 seeds(cfg.seed);
  for (long k = 0; k < np; ++k) {
    for (const auto& [p, c] : h.terms()) {
      std::vector<CircuitOp> ops;
      for (long j = 0; j <= k; ++j)
        ops.push_back(CircuitOp::rotation(a.generators[j], a.params[j]));
      ops.push_back(CircuitOp::pauli_gate(a.generators[k], CircuitOp::Control::OnOne));
      for (long j = k + 1; j < np; ++j)
        ops.push_back(CircuitOp::rotation(a.generators[j], a.params[j]));
      ops.push_back(CircuitOp::pauli_gate(p, CircuitOp::Control::OnZero));
      ShotConfig re_cfg = cfg, im_cfg = cfg;
      if (!cfg.is_exact()) {
        re_cfg.seed = seeds();
        im_cfg.seed = seeds();
      }
      const double re = hadamard_test(ref, ops, 0.0, re_cfg);
      const double im = hadamard_test(ref, ops, M_PI / 2.0, im_cfg);
      // bracket = <psi| h_p |d_k psi> / i, so f_k picks up a factor i
      f[k] += c * cdouble{0.0, 1.0} * cdouble{re, im};
    }
  }
  return f;
}

Eigen::VectorXd solve_regularized(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs,
                                  double ridge) {
  Eigen::MatrixXd reg = m;
  reg.diagonal().array() += ridge;
  Eigen::LLT<Eigen::MatrixXd> llt(reg);
  if (llt.info() != Eigen::Success) {
    // fall back to an LDLT factorization before giving up
    Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
    if (ldlt.info() != Eigen::Success)
      throw std::runtime_error("solve_regularized: factorization failed");
    return ldlt.solve(rhs);
  }
  return llt.solve(rhs);
}

void step_real_time(Ansatz& a, const DrivenHamiltonian& h, double t,
                    const IntegratorConfig& cfg, const ShotConfig& shots) {
  const long np = static_cast<long>(a.num_params());
  std::vector<double> saved;
  auto rate = [&](const std::vector<double>& params, double time) {
    saved = a.params;
    a.params = params;
    Eigen::MatrixXd m;
    Eigen::VectorXcd f;
    if (shots.is_exact()) {
      assemble_exact_system(
          a, [&](const Eigen::VectorXcd& v) { return h.apply(v, time); }, m, f);
    } else {
      m = assemble_M(a, shots);
      PauliSum merged = *h.h0;
      if (h.coupling) {
        PauliSum drive = *h.coupling;
        drive *= h.interaction_sign * h.field_at(time);
        merged += drive;
      }
      f = assemble_f(a, merged, shots);
    }
    a.params = saved;
    return theta_dot(m, f, cfg, true);
  };

  const double dt = cfg.step;
  if (cfg.scheme == Scheme::Euler) {
    const Eigen::VectorXd k1 = rate(a.params, t);
    for (long i = 0; i < np; ++i) a.params[i] += dt * k1[i];
    return;
  }
  const Eigen::VectorXd k1 = rate(a.params, t);
  std::vector<double> tmp(a.params);
  for (long i = 0; i < np; ++i) tmp[i] = a.params[i] + 0.5 * dt * k1[i];
  const Eigen::VectorXd k2 = rate(tmp, t + 0.5 * dt);
  for (long i = 0; i < np; ++i) tmp[i] = a.params[i] + 0.5 * dt * k2[i];
  const Eigen::VectorXd k3 = rate(tmp, t + 0.5 * dt);
  for (long i = 0; i < np; ++i) tmp[i] = a.params[i] + dt * k3[i];
  const Eigen::VectorXd k4 = rate(tmp, t + dt);
  for (long i = 0; i < np; ++i)
    a.params[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void step_imag_time(Ansatz& a, const HamiltonianOracle& h, const IntegratorConfig& cfg,
                    const ShotConfig& shots) {
  const long np = static_cast<long>(a.num_params());
  std::vector<double> saved;
  auto rate = [&](const std::vector<double>& params) {
    saved = a.params;
    a.params = params;
    Eigen::MatrixXd m;
    Eigen::VectorXcd f;
    if (shots.is_exact()) {
      assemble_exact_system(
          a, [&](const Eigen::VectorXcd& v) { return h.apply(v); }, m, f);
    } else {
      m = assemble_M(a, shots);
      f = assemble_f(a, h, shots);
    }
    a.params = saved;
    return theta_dot(m, f, cfg, false);
  };
  const double dt = cfg.step;
  if (cfg.scheme == Scheme::Euler) {
    const Eigen::VectorXd k1 = rate(a.params);
    for (long i = 0; i < np; ++i) a.params[i] += dt * k1[i];
    return;
  }
  const Eigen::VectorXd k1 = rate(a.params);
  std::vector<double> tmp(a.params);
  for (long i = 0; i < np; ++i) tmp[i] = a.params[i] + 0.5 * dt * k1[i];
  const Eigen::VectorXd k2 = rate(tmp);
  for (long i = 0; i < np; ++i) tmp[i] = a.params[i] + 0.5 * dt * k2[i];
  const Eigen::VectorXd k3 = rate(tmp);
  for (long i = 0; i < np; ++i) tmp[i] = a.params[i] + dt * k3[i];
  const Eigen::VectorXd k4 = rate(tmp);
  for (long i = 0; i < np; ++i)
    a.params[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

ImagTimeResult run_imag_time(Ansatz& a, const HamiltonianOracle& h,
                             const ImagTimeOptions& opt, const ShotConfig& shots) {
  IntegratorConfig cfg;
  cfg.step = opt.dtau;
  cfg.scheme = Scheme::Euler;
  cfg.ridge = opt.ridge;
  ImagTimeResult res;
  res.energies.push_back(h.expectation_value(prepare(a)));
  int plateau = 0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    // Euler direction at the current point
    Eigen::MatrixXd m;
    Eigen::VectorXcd f;
    if (shots.is_exact()) {
      assemble_exact_system(
          a, [&](const Eigen::VectorXcd& v) { return h.apply(v); }, m, f);
    } else {
      m = assemble_M(a, shots);
      f = assemble_f(a, h, shots);
    }
    const Eigen::VectorXd dir = theta_dot(m, f, cfg, false);
    const long np = static_cast<long>(a.num_params());
    const std::vector<double> base = a.params;
    const double prev = res.energies.back();
    // shrink the step until the energy stops rising; the direction is a
    // descent direction of <H> in the (M + ridge) metric, so this terminates
    // away from stationary points
    double step = opt.dtau;
    double e = prev;
    for (int attempt = 0;; ++attempt) {
      for (long i = 0; i < np; ++i) a.params[i] = base[i] + step * dir[i];
      e = h.expectation_value(prepare(a));
      if (e <= prev + 1e-12 || attempt >= opt.max_step_halvings) break;
      step *= 0.5;
      ++res.rejected_steps;
    }
    res.energies.push_back(e);
    res.iterations = it + 1;
    plateau = (std::abs(e - prev) < opt.plateau_tol) ? plateau + 1 : 0;
    if (plateau >= opt.plateau_window) {
      res.converged = true;
      break;
    }
  }
  return res;
}

RealTimeTrajectory run_real_time(Ansatz a, const DrivenHamiltonian& h,
                                 const RealTimeOptions& opt, const ShotConfig& shots) {
  IntegratorConfig cfg;
  cfg.step = opt.dt;
  cfg.scheme = opt.scheme;
  cfg.ridge = opt.ridge;

  RealTimeTrajectory traj;
  const long steps = static_cast<long>(std::llround(opt.duration / opt.dt));
  auto record = [&](double t) {
    const StateVector psi = prepare(a);
    traj.times.push_back(t);
    traj.thetas.push_back(a.params);
    traj.energies.push_back(h.energy(psi, t));
    if (!opt.population_states.empty()) {
      std::vector<double> pops;
      pops.reserve(opt.population_states.size());
      for (const auto& s : opt.population_states) pops.push_back(fidelity(s, psi));
      traj.populations.push_back(std::move(pops));
    }
  };

  record(0.0);
  for (long s = 0; s < steps; ++s) {
    const double t = s * opt.dt;
    try {
      step_real_time(a, h, t, cfg, shots);
    } catch (const std::runtime_error&) {
      traj.diverged = true;
      traj.diverged_at = t;
      return traj;
    }
    bool finite = true;
    for (double v : a.params)
      if (!std::isfinite(v)) finite = false;
    if (!finite) {
      traj.diverged = true;
      traj.diverged_at = t;
      return traj;
    }
    if ((s + 1) % opt.output_stride == 0 || s + 1 == steps) record((s + 1) * opt.dt);
  }
  return traj;
}

}  // namespace qdvr
