#include "qdvr/subspace.hpp"

#include <cmath>
#include <stdexcept>

namespace qdvr {

Eigen::MatrixXcd SubspaceModel::hamiltonian(double t) const {
  Eigen::MatrixXcd h = coupling * (interaction_sign * (field ? field(t) : 0.0));
  h.diagonal() += energies.cast<cdouble>();
  return h;
}

Eigen::MatrixXcd project_operator(const EigenSet& eigen, const GridOperator& op) {
  const int ns = eigen.count();
  Eigen::MatrixXcd out(ns, ns);
  for (int i = 0; i < ns; ++i) {
    const Eigen::VectorXcd av = op.apply(eigen.states[i].amplitudes());
    for (int j = 0; j < ns; ++j)
      out(j, i) = eigen.states[j].amplitudes().dot(av);
  }
  // symmetrize away roundoff
  return 0.5 * (out + out.adjoint().eval());
}

Eigen::MatrixXcd project_operator_phase_kick(const EigenSet& eigen,
                                             const GridOperator& op,
                                             const std::array<double, 3>& eps) {
  if (!op.kinetic_blocks().empty() || !op.has_diagonal())
    throw std::invalid_argument("project_operator_phase_kick: operator must be diagonal");
  const Eigen::VectorXd& diag = op.diagonal_values();
  const int ns = eigen.count();

  auto estimate = [&](double e) {
    Eigen::MatrixXcd g(ns, ns);
    for (int j = 0; j < ns; ++j) {
      StateVector minus = eigen.states[j];
      minus.apply_diagonal_phase(diag, -e);
      StateVector plus = eigen.states[j];
      plus.apply_diagonal_phase(diag, +e);
      for (int i = 0; i < ns; ++i) {
        const cdouble om = inner(eigen.states[i], minus);
        const cdouble op_ = inner(eigen.states[i], plus);
        g(i, j) = cdouble{0.0, 1.0} / (2.0 * e) * (om - op_);
      }
    }
    return g;
  };

  // error series is even in eps; two Richardson sweeps with ratio 4
  const Eigen::MatrixXcd g0 = estimate(eps[0]);
  const Eigen::MatrixXcd g1 = estimate(eps[1]);
  const Eigen::MatrixXcd g2 = estimate(eps[2]);
  const Eigen::MatrixXcd r1 = (4.0 * g1 - g0) / 3.0;
  const Eigen::MatrixXcd r2 = (4.0 * g2 - g1) / 3.0;
  Eigen::MatrixXcd out = (16.0 * r2 - r1) / 15.0;
  return 0.5 * (out + out.adjoint().eval());
}

SubspaceModel build_subspace_model(const EigenSet& eigen, const GridOperator& coupling,
                                   double interaction_sign, double dipole_sign,
                                   std::function<double(double)> field, bool phase_kick) {
  SubspaceModel model;
  model.energies = Eigen::Map<const Eigen::VectorXd>(eigen.energies.data(),
                                                     static_cast<long>(eigen.energies.size()));
  model.coupling = phase_kick ? project_operator_phase_kick(eigen, coupling)
                              : project_operator(eigen, coupling);
  model.interaction_sign = interaction_sign;
  model.dipole_sign = dipole_sign;
  model.field = std::move(field);
  const double herm = (model.coupling - model.coupling.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw std::runtime_error("build_subspace_model: projected coupling not Hermitian");
  return model;
}

SubspaceTrajectory propagate_subspace(const SubspaceModel& model,
                                      const SubspaceOptions& opt,
                                      const Eigen::VectorXcd* c0) {
  const int ns = model.count();
  Eigen::VectorXcd c = c0 ? *c0 : Eigen::VectorXcd::Unit(ns, 0);
  if (c.size() != ns)
    throw std::invalid_argument("propagate_subspace: coefficient size mismatch");
  if (std::abs(c.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("propagate_subspace: initial coefficients not normalized");

  // measure energies from the lowest one; a global phase only
  SubspaceModel shifted = model;
  const double e0 = model.energies.minCoeff();
  shifted.energies = model.energies.array() - e0;

  double hscale = shifted.energies.maxCoeff();
  double fmax = 0.0;
  const long nsteps = static_cast<long>(std::llround(opt.duration / opt.dt));
  for (long s = 0; s <= nsteps; ++s)
    fmax = std::max(fmax, std::abs(model.field ? model.field(s * opt.dt) : 0.0));
  hscale += fmax * shifted.coupling.cwiseAbs().maxCoeff() * ns;

  // local RK4 defect per substep is of order (|H| h)^5 / 120; choose h so the
  // accumulated drift stays an order below the bound
  long nsub = 1;
  if (opt.allow_substepping && hscale > 0.0) {
    const double budget = 0.1 * opt.norm_drift_bound * 120.0 /
                          (opt.duration * std::pow(hscale, 5));
    const double hmax = std::pow(budget, 0.25);
    if (opt.dt > hmax) nsub = static_cast<long>(std::ceil(opt.dt / hmax));
  }

  auto deriv = [&](const Eigen::VectorXcd& y, double t) -> Eigen::VectorXcd {
    return cdouble{0.0, -1.0} * (shifted.hamiltonian(t) * y);
  };

  SubspaceTrajectory traj;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.coeffs.push_back(c);
    std::vector<double> pops(ns);
    for (int i = 0; i < ns; ++i) pops[i] = std::norm(c[i]);
    traj.populations.push_back(std::move(pops));
    const cdouble d = c.dot(model.coupling * c);
    traj.dipole.push_back(model.dipole_sign * d.real());
  };

  record(0.0);
  const double h = opt.dt / static_cast<double>(nsub);
  for (long s = 0; s < nsteps; ++s) {
    for (long sub = 0; sub < nsub; ++sub) {
      const double t = s * opt.dt + sub * h;
      const Eigen::VectorXcd k1 = deriv(c, t);
      const Eigen::VectorXcd k2 = deriv(c + 0.5 * h * k1, t + 0.5 * h);
      const Eigen::VectorXcd k3 = deriv(c + 0.5 * h * k2, t + 0.5 * h);
      const Eigen::VectorXcd k4 = deriv(c + h * k3, t + h);
      c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (std::abs(c.norm() - 1.0) > opt.norm_drift_bound)
      throw std::runtime_error(
          "propagate_subspace: norm drift above bound, use a smaller step");
    record((s + 1) * opt.dt);
  }
  return traj;
}

}  // namespace qdvr
