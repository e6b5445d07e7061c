#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qdvr/pauli.hpp"

namespace qdvr {

// Measurement emulation: exact expectation values, or binomial sampling of
// per-term measurement outcomes with a deterministic seed.
struct ShotConfig {
  enum class Mode { Exact, Sampled };
  Mode mode = Mode::Exact;
  long shots = 0;
  uint64_t seed = 0;

  static ShotConfig exact() { return {}; }
  static ShotConfig sampled(long shots, uint64_t seed) {
    return {Mode::Sampled, shots, seed};
  }
  bool is_exact() const { return mode == Mode::Exact; }
};

class StateVector {
 public:
  explicit StateVector(int num_qubits);
  static StateVector plus_state(int num_qubits);
  static StateVector basis_state(int num_qubits, long m);
  static StateVector from_amplitudes(Eigen::VectorXcd amps);

  int num_qubits() const { return n_; }
  long dimension() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }

  void apply_pauli(const PauliString& p);
  // exp(i theta P) = cos(theta) + i sin(theta) P
  void apply_rotation(const PauliString& p, double theta);
  // exp(i scale D) for diagonal D
  void apply_diagonal_phase(const Eigen::VectorXd& diag, double scale);

  // one line per basis state: index re im
  std::string dump() const;

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

cdouble inner(const StateVector& bra, const StateVector& ket);
double fidelity(const StateVector& a, const StateVector& b);

// <psi|P|psi> for a single string, always exact.
double pauli_expectation(const StateVector& psi, const PauliString& p);

// <psi|H|psi> for Hermitian H; sampled mode draws per-term binomial outcomes.
double expectation(const StateVector& psi, const PauliSum& h,
                   const ShotConfig& cfg = ShotConfig::exact());

// <bra|A|ket>, no hermiticity requirement.
cdouble transition_element(const StateVector& bra, const PauliSum& a,
                           const StateVector& ket);

// Plain sequence of Pauli rotations exp(i theta_k G_k) applied in order.
struct RotationCircuit {
  int num_qubits = 0;
  std::vector<PauliString> generators;
  std::vector<double> angles;
};

// One element of an ancilla-controlled sequence.
struct CircuitOp {
  enum class Kind { Rotation, Pauli };
  enum class Control { None, OnOne, OnZero };
  PauliString pauli;
  double angle = 0.0;
  Kind kind = Kind::Rotation;
  Control control = Control::None;

  static CircuitOp rotation(const PauliString& p, double theta,
                            Control c = Control::None) {
    return {p, theta, Kind::Rotation, c};
  }
  static CircuitOp pauli_gate(const PauliString& p, Control c) {
    return {p, 0.0, Kind::Pauli, c};
  }
};

// Single-ancilla interference test. The ancilla starts in
// (|0> + e^{i phi}|1>)/sqrt(2), the system in `system`; controlled ops act on
// the branch matching their control. Returns Re (phi = 0) or Im (phi = pi/2)
// of the interfered matrix element.
double hadamard_test(const StateVector& system, const std::vector<CircuitOp>& ops,
                     double phi, const ShotConfig& cfg = ShotConfig::exact());

// |<ref| U_i^dag U_j |ref>|^2 via the inversion test.
double overlap_sq(const RotationCircuit& ui, const RotationCircuit& uj,
                  const StateVector& reference,
                  const ShotConfig& cfg = ShotConfig::exact());

}  // namespace qdvr
