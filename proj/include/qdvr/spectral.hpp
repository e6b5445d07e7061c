#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "qdvr/ansatz.hpp"
#include "qdvr/dvr.hpp"
#include "qdvr/mclachlan.hpp"
#include "qdvr/pauli.hpp"
#include "qdvr/statevector.hpp"

namespace qdvr {

// Lowest eigenpairs of a Hamiltonian, energies ascending. States are unit
// norm; dense-oracle states carry a fixed phase (largest amplitude real
// positive). For variationally found states the preparing ansatz is kept.
struct EigenSet {
  enum class Provenance { DenseOracle, Variational };

  Provenance provenance = Provenance::DenseOracle;
  std::vector<double> energies;
  std::vector<StateVector> states;
  std::vector<Ansatz> ansatzes;             // Variational only
  std::vector<bool> converged;              // Variational only
  std::vector<std::string> diagnostics;     // Variational only

  int count() const { return static_cast<int>(energies.size()); }
  // max pairwise |<i|j>|^2, i != j
  double max_cross_overlap() const;
  void validate(double overlap_tol) const;

  std::string to_json() const;
  static EigenSet from_json(const std::string& text);
};

// Dense diagonalization restricted to the lowest n_states pairs.
EigenSet dense_eigensolve(const GridOperator& h, int n_states);

// Gershgorin estimate of the spectral range of a grid operator; the returned
// beta = 2 (upper - lower) always exceeds any E_k - E_0 gap.
double deflation_beta(const GridOperator& h);

struct VqdOptions {
  int layers = 2;
  int max_iterations = 1000;
  double dtau = 1.0;
  double ridge = 1e-6;
  double plateau_tol = 1e-8;
  int plateau_window = 20;
  int restarts = 3;
  uint64_t seed = 1;
  double init_amplitude = 0.01;
  double beta = 0.0;  // deflation weight; must exceed every E_k - E_0
  // retry limit for the monotonic step safeguard (see ImagTimeOptions)
  int max_step_halvings = 40;
};

// Variational deflation: state k minimizes <H> + sum_{i<k} beta |<psi_i|psi>|^2
// by imaginary-time flow on a hardware-variational ansatz built from h.
EigenSet vqd_find(const PauliSum& h, int n_states, const VqdOptions& opt,
                  const ShotConfig& shots = ShotConfig::exact());

}  // namespace qdvr
