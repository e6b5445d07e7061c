#include "qdvr/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace qdvr {

ExactTrajectory propagate_exact(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& coupling,
                                double interaction_sign,
                                const std::function<double(double)>& field,
                                const Eigen::VectorXcd& initial, const ExactOptions& opt) {
  const long n = h0.rows();
  if (h0.cols() != n || coupling.rows() != n || coupling.cols() != n)
    throw std::invalid_argument("propagate_exact: matrix size mismatch");
  if (initial.size() != n)
    throw std::invalid_argument("propagate_exact: initial state size mismatch");
  if (!(opt.dt > 0.0) || !(opt.duration > 0.0))
    throw std::invalid_argument("propagate_exact: bad step or duration");

  Eigen::VectorXcd psi = initial;
  const long nsteps = static_cast<long>(std::llround(opt.duration / opt.dt));
  ExactTrajectory traj;
  traj.times.reserve(nsteps / opt.output_stride + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(psi);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  double prev_norm = psi.norm();
  for (long s = 0; s < nsteps; ++s) {
    const double tmid = (s + 0.5) * opt.dt;
    const double eps = field ? field(tmid) : 0.0;
    Eigen::MatrixXd h = h0;
    if (eps != 0.0) h += (interaction_sign * eps) * coupling;
    solver.compute(h);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("propagate_exact: eigendecomposition failed");
    const Eigen::MatrixXd& v = solver.eigenvectors();
    Eigen::VectorXcd phases(n);
    for (long i = 0; i < n; ++i)
      phases[i] = std::polar(1.0, -solver.eigenvalues()[i] * opt.dt);
    psi = v * (phases.asDiagonal() * (v.transpose() * psi));
    const double norm = psi.norm();
    if (std::abs(norm - prev_norm) > opt.unitarity_tol)
      throw std::runtime_error("propagate_exact: unitarity check failed at step " +
                               std::to_string(s));
    prev_norm = norm;
    if ((s + 1) % opt.output_stride == 0 || s + 1 == nsteps) {
      traj.times.push_back((s + 1) * opt.dt);
      traj.states.push_back(psi);
    }
  }
  return traj;
}

std::vector<std::vector<double>> project_populations(const ExactTrajectory& traj,
                                                     const EigenSet& eigen) {
  std::vector<std::vector<double>> pops;
  pops.reserve(traj.states.size());
  for (const auto& psi : traj.states) {
    std::vector<double> row(eigen.count());
    for (int i = 0; i < eigen.count(); ++i)
      row[i] = std::norm(eigen.states[i].amplitudes().dot(psi));
    pops.push_back(std::move(row));
  }
  return pops;
}

std::vector<double> dipole_series(const ExactTrajectory& traj, const Eigen::VectorXd& diag,
                                  double dipole_sign) {
  std::vector<double> d;
  d.reserve(traj.states.size());
  for (const auto& psi : traj.states) {
    double acc = 0.0;
    for (long b = 0; b < psi.size(); ++b) acc += diag[b] * std::norm(psi[b]);
    d.push_back(dipole_sign * acc);
  }
  return d;
}

}  // namespace qdvr
