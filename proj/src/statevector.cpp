#include "qdvr/statevector.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qdvr {

namespace {

constexpr cdouble kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline cdouble pauli_phase(const PauliString& p, uint64_t b) {
  cdouble ph = kIPow[p.y_count() % 4];
  if (std::popcount(b & p.z) & 1) ph = -ph;
  return ph;
}

void apply_pauli_raw(Eigen::VectorXcd& v, const PauliString& p) {
  const long dim = v.size();
  if (p.x == 0) {
    const cdouble base = kIPow[p.y_count() % 4];
    for (long b = 0; b < dim; ++b) {
      cdouble ph = base;
      if (std::popcount(static_cast<uint64_t>(b) & p.z) & 1) ph = -ph;
      v[b] *= ph;
    }
    return;
  }
  const uint64_t pivot = p.x & (~p.x + 1);
  for (long b = 0; b < dim; ++b) {
    if (b & pivot) continue;
    const long b2 = b ^ p.x;
    const cdouble a0 = v[b], a1 = v[b2];
    v[b2] = pauli_phase(p, b) * a0;
    v[b] = pauli_phase(p, b2) * a1;
  }
}

void apply_rotation_raw(Eigen::VectorXcd& v, const PauliString& p, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const cdouble is{0.0, s};
  const long dim = v.size();
  if (p.x == 0) {
    const cdouble base = kIPow[p.y_count() % 4];
    for (long b = 0; b < dim; ++b) {
      cdouble ph = base;
      if (std::popcount(static_cast<uint64_t>(b) & p.z) & 1) ph = -ph;
      v[b] = (c + is * ph) * v[b];
    }
    return;
  }
  const uint64_t pivot = p.x & (~p.x + 1);
  for (long b = 0; b < dim; ++b) {
    if (b & pivot) continue;
    const long b2 = b ^ p.x;
    const cdouble a0 = v[b], a1 = v[b2];
    v[b] = c * a0 + is * pauli_phase(p, b2) * a1;
    v[b2] = c * a1 + is * pauli_phase(p, b) * a0;
  }
}

double pauli_expectation_raw(const Eigen::VectorXcd& v, const PauliString& p) {
  const long dim = v.size();
  cdouble acc = 0.0;
  for (long b = 0; b < dim; ++b)
    acc += std::conj(v[b ^ p.x]) * pauli_phase(p, b) * v[b];
  return acc.real();
}

// mean of `shots` single-shot +-1 outcomes with <outcome> = value
double sample_pm1(double value, long shots, std::mt19937_64& rng) {
  const double p = std::clamp(0.5 * (1.0 + value), 0.0, 1.0);
  std::binomial_distribution<long> dist(shots, p);
  const long k = dist(rng);
  return 2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0;
}

}  // namespace

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 20)
    throw std::invalid_argument("StateVector: unsupported qubit count");
  amps_ = Eigen::VectorXcd::Zero(1L << n_);
  amps_[0] = 1.0;
}

StateVector StateVector::plus_state(int num_qubits) {
  StateVector s(num_qubits);
  const long dim = s.dimension();
  s.amps_.setConstant(1.0 / std::sqrt(static_cast<double>(dim)));
  return s;
}

StateVector StateVector::basis_state(int num_qubits, long m) {
  StateVector s(num_qubits);
  if (m < 0 || m >= s.dimension())
    throw std::out_of_range("StateVector: basis index out of range");
  s.amps_.setZero();
  s.amps_[m] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amps) {
  const long dim = amps.size();
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("StateVector: amplitude count must be a power of two");
  int n = 0;
  while ((1L << n) < dim) ++n;
  StateVector s(n);
  s.amps_ = std::move(amps);
  return s;
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.n != n_) throw std::invalid_argument("StateVector: qubit count mismatch");
  apply_pauli_raw(amps_, p);
}

void StateVector::apply_rotation(const PauliString& p, double theta) {
  if (p.n != n_) throw std::invalid_argument("StateVector: qubit count mismatch");
  apply_rotation_raw(amps_, p, theta);
}

void StateVector::apply_diagonal_phase(const Eigen::VectorXd& diag, double scale) {
  if (diag.size() != amps_.size())
    throw std::invalid_argument("StateVector: diagonal length mismatch");
  for (long b = 0; b < amps_.size(); ++b)
    amps_[b] *= std::polar(1.0, scale * diag[b]);
}

std::string StateVector::dump() const {
  std::ostringstream out;
  out.precision(17);
  for (long b = 0; b < amps_.size(); ++b)
    out << b << " " << amps_[b].real() << " " << amps_[b].imag() << "\n";
  return out.str();
}

cdouble inner(const StateVector& bra, const StateVector& ket) {
  if (bra.num_qubits() != ket.num_qubits())
    throw std::invalid_argument("inner: qubit count mismatch");
  return bra.amplitudes().dot(ket.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

double pauli_expectation(const StateVector& psi, const PauliString& p) {
  if (p.n != psi.num_qubits())
    throw std::invalid_argument("pauli_expectation: qubit count mismatch");
  return pauli_expectation_raw(psi.amplitudes(), p);
}

double expectation(const StateVector& psi, const PauliSum& h, const ShotConfig& cfg) {
  if (h.num_qubits() != psi.num_qubits())
    throw std::invalid_argument("expectation: qubit count mismatch");
  if (!h.is_hermitian())
    throw std::invalid_argument("expectation: observable is not Hermitian");
  if (cfg.is_exact()) {
    double acc = 0.0;
    for (const auto& [p, c] : h.terms())
      acc += c.real() * pauli_expectation_raw(psi.amplitudes(), p);
    return acc;
  }
  if (cfg.shots < 1) throw std::invalid_argument("expectation: shots must be >= 1");
  std::mt19937_64 rng(cfg.seed);
  double acc = 0.0;
  for (const auto& [p, c] : h.terms()) {
    if (p.is_identity()) {
      acc += c.real();
      continue;
    }
    const double v = pauli_expectation_raw(psi.amplitudes(), p);
    acc += c.real() * sample_pm1(v, cfg.shots, rng);
  }
  return acc;
}

cdouble transition_element(const StateVector& bra, const PauliSum& a,
                           const StateVector& ket) {
  if (a.num_qubits() != bra.num_qubits() || a.num_qubits() != ket.num_qubits())
    throw std::invalid_argument("transition_element: qubit count mismatch");
  Eigen::VectorXcd av = a.apply(ket.amplitudes());
  return bra.amplitudes().dot(av);
}

double hadamard_test(const StateVector& system, const std::vector<CircuitOp>& ops,
                     double phi, const ShotConfig& cfg) {
  const bool re_part = std::abs(phi) < 1e-12;
  const bool im_part = std::abs(phi - M_PI / 2.0) < 1e-12;
  if (!re_part && !im_part)
    throw std::invalid_argument("hadamard_test: phi must be 0 or pi/2");
  const int n = system.num_qubits();
  for (const auto& op : ops)
    if (op.pauli.n != n)
      throw std::invalid_argument("hadamard_test: op qubit count mismatch");

  // ancilla branches kept as separate system-register blocks
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd b0 = system.amplitudes() * inv_sqrt2;
  Eigen::VectorXcd b1 = system.amplitudes() * (std::polar(1.0, phi) * inv_sqrt2);
  for (const auto& op : ops) {
    const bool on0 = op.control != CircuitOp::Control::OnOne;
    const bool on1 = op.control != CircuitOp::Control::OnZero;
    if (op.kind == CircuitOp::Kind::Rotation) {
      if (on0) apply_rotation_raw(b0, op.pauli, op.angle);
      if (on1) apply_rotation_raw(b1, op.pauli, op.angle);
    } else {
      if (on0) apply_pauli_raw(b0, op.pauli);
      if (on1) apply_pauli_raw(b1, op.pauli);
    }
  }
  // after the final ancilla Hadamard, <Z_anc> = 2 Re <b0|b1>
  double z = 2.0 * b0.dot(b1).real();
  if (!cfg.is_exact()) {
    if (cfg.shots < 1) throw std::invalid_argument("hadamard_test: shots must be >= 1");
    std::mt19937_64 rng(cfg.seed);
    z = sample_pm1(z, cfg.shots, rng);
  }
  // <Z> = Re(e^{i phi} <A|B>); phi = pi/2 gives -Im
  return re_part ? z : -z;
}

double overlap_sq(const RotationCircuit& ui, const RotationCircuit& uj,
                  const StateVector& reference, const ShotConfig& cfg) {
  if (ui.num_qubits != reference.num_qubits() || uj.num_qubits != reference.num_qubits())
    throw std::invalid_argument("overlap_sq: qubit count mismatch");
  if (ui.generators.size() != ui.angles.size() ||
      uj.generators.size() != uj.angles.size())
    throw std::invalid_argument("overlap_sq: malformed circuit");
  StateVector psi = reference;
  for (std::size_t k = 0; k < uj.generators.size(); ++k)
    psi.apply_rotation(uj.generators[k], uj.angles[k]);
  for (std::size_t k = ui.generators.size(); k-- > 0;)
    psi.apply_rotation(ui.generators[k], -ui.angles[k]);
  double p = std::norm(inner(reference, psi));
  if (!cfg.is_exact()) {
    if (cfg.shots < 1) throw std::invalid_argument("overlap_sq: shots must be >= 1");
    std::mt19937_64 rng(cfg.seed);
    std::binomial_distribution<long> dist(cfg.shots, std::clamp(p, 0.0, 1.0));
    p = static_cast<double>(dist(rng)) / static_cast<double>(cfg.shots);
  }
  return p;
}

}  // namespace qdvr
