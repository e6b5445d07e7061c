#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdvr/pauli.hpp"
#include "qdvr/statevector.hpp"

namespace qdvr {

// Product of Pauli rotations applied to a fixed reference state:
//   |psi(theta)> = prod_k exp(i theta_k G_k) |ref>
// with k = 0 applied first.
struct Ansatz {
  enum class Reference { Plus, Zero };

  int num_qubits = 0;
  int layers = 1;
  Reference reference = Reference::Plus;
  std::vector<PauliString> generators;
  std::vector<double> params;

  std::size_t num_params() const { return generators.size(); }
  StateVector reference_state() const;
  RotationCircuit circuit() const;

  std::string to_text() const;
  static Ansatz from_text(const std::string& text);
};

struct AnsatzInit {
  enum class Kind { Zero, SmallRandom };
  Kind kind = Kind::SmallRandom;
  double amplitude = 0.01;
  uint64_t seed = 0;
};

// Hamiltonian-variational ansatz: one parameter per layer for every distinct
// weight-1 or weight-2 string of h, weight-1 strings first, lexicographic
// within each class. Identity and higher-weight strings are dropped.
Ansatz build_hva(const PauliSum& h, int layers, const AnsatzInit& init = {});

StateVector prepare(const Ansatz& a);

// d/d theta_k |psi(theta)>: the rotation sequence with i G_k inserted after
// the k-th rotation. Unit norm for Pauli generators.
StateVector derivative_state(const Ansatz& a, std::size_t k);

// All derivative states in one forward sweep.
std::vector<StateVector> derivative_states(const Ansatz& a);

}  // namespace qdvr
