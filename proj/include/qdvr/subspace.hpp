#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

#include "qdvr/dvr.hpp"
#include "qdvr/spectral.hpp"

namespace qdvr {

// Few-level model spanned by eigenstates: H_ij(t) = delta_ij E_i +
// interaction_sign * eps(t) * D_ij with D the projected coupling operator.
struct SubspaceModel {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd coupling;  // Hermitian
  double interaction_sign = 1.0;
  double dipole_sign = 1.0;
  std::function<double(double)> field;  // eps(t), atomic units

  int count() const { return static_cast<int>(energies.size()); }
  Eigen::MatrixXcd hamiltonian(double t) const;
};

// Project a diagonal grid operator into the span of an eigenset by direct
// matrix elements.
Eigen::MatrixXcd project_operator(const EigenSet& eigen, const GridOperator& op);

// Same matrix elements from phase-kick overlaps <i|e^{-i eps D}|j> with
// three-point Richardson extrapolation in eps^2.
Eigen::MatrixXcd project_operator_phase_kick(
    const EigenSet& eigen, const GridOperator& op,
    const std::array<double, 3>& eps = {1e-2, 5e-3, 2.5e-3});

SubspaceModel build_subspace_model(const EigenSet& eigen, const GridOperator& coupling,
                                   double interaction_sign, double dipole_sign,
                                   std::function<double(double)> field,
                                   bool phase_kick = false);

struct SubspaceOptions {
  // output sampling step, atomic time units
  double dt = 0.5;
  double duration = 1.0;
  // when set, RK4 subdivides each output step enough to keep the accumulated
  // norm drift an order of magnitude below norm_drift_bound
  bool allow_substepping = true;
  double norm_drift_bound = 1e-9;
};

struct SubspaceTrajectory {
  std::vector<double> times;  // atomic units
  std::vector<Eigen::VectorXcd> coeffs;
  std::vector<std::vector<double>> populations;
  std::vector<double> dipole;
};

// RK4 integration of i dc/dt = H(t) c from c0 (default: lowest state).
// Energies are measured from E_0 internally; populations and the dipole are
// unchanged by that global shift.
SubspaceTrajectory propagate_subspace(const SubspaceModel& model,
                                      const SubspaceOptions& opt,
                                      const Eigen::VectorXcd* c0 = nullptr);

}  // namespace qdvr
