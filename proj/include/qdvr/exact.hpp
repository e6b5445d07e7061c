#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qdvr/dvr.hpp"
#include "qdvr/spectral.hpp"

namespace qdvr {

struct ExactOptions {
  double dt = 0.5;       // atomic time units
  double duration = 1.0;
  int output_stride = 1;
  double unitarity_tol = 1e-12;  // per-step norm check
};

struct ExactTrajectory {
  std::vector<double> times;  // atomic units
  std::vector<Eigen::VectorXcd> states;
};

// Unconditionally unitary reference propagation: each step applies
// exp(-i H(t_mid) dt) through an eigendecomposition of the instantaneous
// Hamiltonian, with the field frozen at the step midpoint.
// H(t) = h0 + interaction_sign * eps(t) * coupling, dense.
ExactTrajectory propagate_exact(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& coupling,
                                double interaction_sign,
                                const std::function<double(double)>& field,
                                const Eigen::VectorXcd& initial, const ExactOptions& opt);

// P_i(t) = |<eigenstate_i | state(t)>|^2
std::vector<std::vector<double>> project_populations(const ExactTrajectory& traj,
                                                     const EigenSet& eigen);

// d(t) = dipole_sign * <state| D |state> for a diagonal D
std::vector<double> dipole_series(const ExactTrajectory& traj,
                                  const Eigen::VectorXd& diag, double dipole_sign);

}  // namespace qdvr
