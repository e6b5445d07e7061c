#include "qdvr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qdvr {

using nlohmann::json;

double EigenSet::max_cross_overlap() const {
  double m = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      m = std::max(m, fidelity(states[i], states[j]));
  return m;
}

void EigenSet::validate(double overlap_tol) const {
  if (energies.size() != states.size())
    throw std::runtime_error("EigenSet: energy/state count mismatch");
  for (std::size_t i = 1; i < energies.size(); ++i)
    if (energies[i] < energies[i - 1])
      throw std::runtime_error("EigenSet: energies not ascending");
  for (const auto& s : states)
    if (std::abs(s.norm() - 1.0) > 1e-10)
      throw std::runtime_error("EigenSet: state not normalized");
  if (max_cross_overlap() > overlap_tol) {
    std::ostringstream msg;
    msg << "EigenSet: cross overlap " << max_cross_overlap() << " above " << overlap_tol;
    throw std::runtime_error(msg.str());
  }
}

std::string EigenSet::to_json() const {
  json j;
  j["provenance"] = provenance == Provenance::DenseOracle ? "dense" : "variational";
  j["energies"] = energies;
  json jstates = json::array();
  for (const auto& s : states) {
    json v = json::array();
    for (long b = 0; b < s.dimension(); ++b) {
      v.push_back(s.amplitudes()[b].real());
      v.push_back(s.amplitudes()[b].imag());
    }
    jstates.push_back(std::move(v));
  }
  j["states"] = std::move(jstates);
  j["num_qubits"] = states.empty() ? 0 : states.front().num_qubits();
  if (provenance == Provenance::Variational) {
    json ja = json::array();
    for (const auto& a : ansatzes) ja.push_back(a.to_text());
    j["ansatzes"] = std::move(ja);
    j["converged"] = converged;
    j["diagnostics"] = diagnostics;
  }
  return j.dump(2);
}

EigenSet EigenSet::from_json(const std::string& text) {
  const json j = json::parse(text);
  EigenSet set;
  set.provenance = j.at("provenance").get<std::string>() == "dense"
                       ? Provenance::DenseOracle
                       : Provenance::Variational;
  set.energies = j.at("energies").get<std::vector<double>>();
  const int nq = j.at("num_qubits").get<int>();
  for (const auto& v : j.at("states")) {
    const auto flat = v.get<std::vector<double>>();
    Eigen::VectorXcd amps(static_cast<long>(flat.size() / 2));
    for (long b = 0; b < amps.size(); ++b) amps[b] = {flat[2 * b], flat[2 * b + 1]};
    set.states.push_back(StateVector::from_amplitudes(std::move(amps)));
    if (set.states.back().num_qubits() != nq)
      throw std::runtime_error("EigenSet: state size mismatch in manifest");
  }
  if (set.provenance == Provenance::Variational) {
    for (const auto& t : j.at("ansatzes"))
      set.ansatzes.push_back(Ansatz::from_text(t.get<std::string>()));
    set.converged = j.at("converged").get<std::vector<bool>>();
    set.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  }
  return set;
}

namespace {

// largest-magnitude amplitude made real positive
void fix_phase(Eigen::VectorXcd& v) {
  long best = 0;
  double mag = 0.0;
  for (long b = 0; b < v.size(); ++b) {
    if (std::abs(v[b]) > mag + 1e-15) {
      mag = std::abs(v[b]);
      best = b;
    }
  }
  const cdouble a = v[best];
  if (std::abs(a) > 0.0) v *= std::conj(a) / std::abs(a);
}

}  // namespace

EigenSet dense_eigensolve(const GridOperator& h, int n_states) {
  const long n = h.dimension();
  if (n > kDenseCap)
    throw std::runtime_error("dense_eigensolve: dimension above dense cap");
  if (n_states < 1 || n_states > n)
    throw std::invalid_argument("dense_eigensolve: bad state count");
  const Eigen::MatrixXd hd = h.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hd);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense_eigensolve: eigensolver failed");
  EigenSet set;
  set.provenance = EigenSet::Provenance::DenseOracle;
  for (int k = 0; k < n_states; ++k) {
    const double e = solver.eigenvalues()[k];
    Eigen::VectorXcd v = solver.eigenvectors().col(k).cast<cdouble>();
    fix_phase(v);
    const double residual = (hd * v.real() - e * v.real()).norm();
    if (residual > 1e-9)
      throw std::runtime_error("dense_eigensolve: residual above tolerance");
    set.energies.push_back(e);
    set.states.push_back(StateVector::from_amplitudes(std::move(v)));
  }
  return set;
}

double deflation_beta(const GridOperator& h) {
  const Eigen::MatrixXd hd = h.dense();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (long i = 0; i < hd.rows(); ++i) {
    double radius = 0.0;
    for (long j = 0; j < hd.cols(); ++j)
      if (j != i) radius += std::abs(hd(i, j));
    lo = std::min(lo, hd(i, i) - radius);
    hi = std::max(hi, hd(i, i) + radius);
  }
  return 2.0 * (hi - lo);
}

EigenSet vqd_find(const PauliSum& h, int n_states, const VqdOptions& opt,
                  const ShotConfig& shots) {
  if (n_states < 1) throw std::invalid_argument("vqd_find: bad state count");
  if (!(opt.beta > 0.0))
    throw std::invalid_argument("vqd_find: deflation beta must be positive");

  EigenSet set;
  set.provenance = EigenSet::Provenance::Variational;
  std::vector<std::pair<StateVector, double>> deflation;

  for (int k = 0; k < n_states; ++k) {
    double best_penalized = std::numeric_limits<double>::infinity();
    double best_energy = std::numeric_limits<double>::infinity();
    Ansatz best_ansatz;
    bool best_converged = false;
    std::string diag;
    for (int r = 0; r < opt.restarts; ++r) {
      AnsatzInit init;
      init.kind = AnsatzInit::Kind::SmallRandom;
      init.amplitude = opt.init_amplitude;
      init.seed = opt.seed + 1000003ULL * static_cast<uint64_t>(k) + static_cast<uint64_t>(r);
      Ansatz a = build_hva(h, opt.layers, init);

      IntegratorConfig cfg;
      cfg.step = opt.dtau;
      cfg.ridge = opt.ridge;
      int plateau = 0;
      bool converged = false;
      auto energy_of = [&](const Ansatz& x) {
        const StateVector psi = prepare(x);
        double e = expectation(psi, h);
        for (const auto& [s, beta] : deflation) e += beta * fidelity(s, psi);
        return e;
      };
      double prev = energy_of(a);
      int it = 0;
      for (; it < opt.max_iterations; ++it) {
        const Eigen::MatrixXd m = assemble_M(a, shots);
        const Eigen::VectorXcd f = assemble_f_deflated(a, h, deflation, shots);
        Eigen::VectorXd rhs = -f.real();
        const Eigen::VectorXd dir = solve_regularized(m, rhs, cfg.ridge);
        // halve a step that raises the penalized energy, as in run_imag_time
        const std::vector<double> base = a.params;
        double step = cfg.step;
        double e = prev;
        for (int attempt = 0;; ++attempt) {
          for (std::size_t i = 0; i < a.params.size(); ++i)
            a.params[i] = base[i] + step * dir[i];
          e = energy_of(a);
          if (e <= prev + 1e-12 || attempt >= opt.max_step_halvings) break;
          step *= 0.5;
        }
        plateau = (std::abs(e - prev) < opt.plateau_tol) ? plateau + 1 : 0;
        prev = e;
        if (plateau >= opt.plateau_window) {
          converged = true;
          break;
        }
      }
      const double e_base = expectation(prepare(a), h);
      if (prev < best_penalized) {
        best_penalized = prev;
        best_energy = e_base;
        best_ansatz = a;
        best_converged = converged;
        std::ostringstream d;
        d << "state " << k << " restart " << r << ": iterations " << it
          << (converged ? ", energy plateau reached" : ", iteration budget exhausted");
        diag = d.str();
      }
      if (converged) break;
    }
    StateVector psi = prepare(best_ansatz);
    set.energies.push_back(best_energy);
    set.states.push_back(psi);
    set.ansatzes.push_back(std::move(best_ansatz));
    set.converged.push_back(best_converged);
    set.diagnostics.push_back(std::move(diag));
    deflation.emplace_back(std::move(psi), opt.beta);
  }
  return set;
}

}  // namespace qdvr
