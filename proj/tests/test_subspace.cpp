#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qdvr/constants.hpp"
#include "qdvr/exact.hpp"
#include "qdvr/models.hpp"
#include "qdvr/spectral.hpp"
#include "qdvr/subspace.hpp"

using namespace qdvr;

TEST_CASE("projected coupling equals direct matrix elements", "[subspace]") {
  const ModelSystem dw = make_double_well({});
  const EigenSet eigen = dense_eigensolve(dw.h0, 4);
  const Eigen::MatrixXcd d = project_operator(eigen, dw.coupling);
  REQUIRE(d.rows() == 4);
  REQUIRE((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::MatrixXd mu = dw.coupling.dense();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cdouble want = eigen.states[i]
                               .amplitudes()
                               .dot(mu * eigen.states[j].amplitudes());
      REQUIRE(std::abs(d(i, j) - want) < 1e-12);
    }
}

TEST_CASE("phase-kick overlaps recover the projected coupling", "[subspace]") {
  const ModelSystem dw = make_double_well({});
  const EigenSet eigen = dense_eigensolve(dw.h0, 3);
  const Eigen::MatrixXcd direct = project_operator(eigen, dw.coupling);
  const Eigen::MatrixXcd kicked = project_operator_phase_kick(eigen, dw.coupling);
  REQUIRE((kicked - direct).cwiseAbs().maxCoeff() < 1e-6);
  REQUIRE((kicked - kicked.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("subspace hamiltonian assembles energies and field", "[subspace]") {
  const ModelSystem dw = make_double_well({});
  const EigenSet eigen = dense_eigensolve(dw.h0, 3);
  auto field = [](double t) { return 0.25 * t; };
  const SubspaceModel model = build_subspace_model(eigen, dw.coupling,
                                                   dw.interaction_sign,
                                                   dw.dipole_sign, field);
  REQUIRE(model.count() == 3);
  for (int i = 0; i < 3; ++i)
    REQUIRE(model.energies[i] == Catch::Approx(eigen.energies[i]).margin(1e-14));
  const double t = 2.0;
  const Eigen::MatrixXcd h = model.hamiltonian(t);
  Eigen::MatrixXcd want = dw.interaction_sign * field(t) * model.coupling;
  for (int i = 0; i < 3; ++i) want(i, i) += model.energies[i];
  REQUIRE((h - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("field-free subspace populations are stationary", "[subspace]") {
  const ModelSystem dw = make_double_well({});
  const EigenSet eigen = dense_eigensolve(dw.h0, 2);
  const SubspaceModel model = build_subspace_model(eigen, dw.coupling,
                                                   dw.interaction_sign,
                                                   dw.dipole_sign, {});
  SubspaceOptions opt;
  opt.dt = 1.0;
  opt.duration = 500.0;
  const SubspaceTrajectory traj = propagate_subspace(model, opt);
  const double d00 = model.dipole_sign * model.coupling(0, 0).real();
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    REQUIRE(traj.populations[k][0] == Catch::Approx(1.0).margin(1e-10));
    REQUIRE(traj.populations[k][1] == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(traj.dipole[k] == Catch::Approx(d00).margin(1e-10));
  }
}

TEST_CASE("full-span subspace propagation matches the dense reference", "[subspace]") {
  // with all 8 eigenstates kept the projection is exact, so the two
  // propagators integrate the same dynamics in different bases
  const ModelSystem dw = make_double_well({});
  const EigenSet eigen = dense_eigensolve(dw.h0, 8);
  auto field = [&](double t) { return dw.pulse(t); };

  const SubspaceModel model = build_subspace_model(eigen, dw.coupling,
                                                   dw.interaction_sign,
                                                   dw.dipole_sign, field);
  SubspaceOptions sopt;
  sopt.dt = units::fs_to_au(0.5);
  sopt.duration = units::fs_to_au(100.0);
  const SubspaceTrajectory sub = propagate_subspace(model, sopt);

  ExactOptions eopt;
  eopt.dt = units::fs_to_au(0.01);
  eopt.duration = sopt.duration;
  eopt.output_stride = 50;
  const ExactTrajectory ex = propagate_exact(dw.h0.dense(), dw.coupling.dense(),
                                             dw.interaction_sign, field,
                                             eigen.states[0].amplitudes(), eopt);
  const auto dex = dipole_series(ex, dw.coupling.diagonal_values(), dw.dipole_sign);

  REQUIRE(sub.times.size() == dex.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < dex.size(); ++k)
    worst = std::max(worst, std::abs(sub.dipole[k] - dex[k]));
  REQUIRE(worst < 1e-6);

  // populations agree state by state as well
  const auto pex = project_populations(ex, eigen);
  for (std::size_t k = 0; k < pex.size(); ++k)
    for (int i = 0; i < 8; ++i)
      REQUIRE(std::abs(sub.populations[k][i] - pex[k][i]) < 1e-6);
}

TEST_CASE("substepping keeps the norm drift within its bound", "[subspace]") {
  const ModelSystem dw = make_double_well({});
  const EigenSet eigen = dense_eigensolve(dw.h0, 2);
  const SubspaceModel model = build_subspace_model(eigen, dw.coupling,
                                                   dw.interaction_sign,
                                                   dw.dipole_sign,
                                                   [&](double t) { return dw.pulse(t); });
  SubspaceOptions opt;
  opt.dt = units::fs_to_au(0.58);
  opt.duration = dw.pulse.duration();
  const SubspaceTrajectory traj = propagate_subspace(model, opt);
  for (const auto& c : traj.coeffs) REQUIRE(std::abs(c.norm() - 1.0) < 1e-9);

  // populations stay inside the simplex
  for (const auto& row : traj.populations) {
    double sum = 0.0;
    for (double p : row) {
      REQUIRE(p >= -1e-12);
      sum += p;
    }
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("custom initial coefficients are honored", "[subspace]") {
  const ModelSystem dw = make_double_well({});
  const EigenSet eigen = dense_eigensolve(dw.h0, 2);
  const SubspaceModel model = build_subspace_model(eigen, dw.coupling,
                                                   dw.interaction_sign,
                                                   dw.dipole_sign, {});
  Eigen::VectorXcd c0(2);
  c0 << cdouble{0.6, 0.0}, cdouble{0.0, 0.8};
  SubspaceOptions opt;
  opt.dt = 1.0;
  opt.duration = 10.0;
  const SubspaceTrajectory traj = propagate_subspace(model, opt, &c0);
  REQUIRE(traj.populations.front()[0] == Catch::Approx(0.36).margin(1e-12));
  REQUIRE(traj.populations.front()[1] == Catch::Approx(0.64).margin(1e-12));
  // field-free: populations frozen at their initial values
  REQUIRE(traj.populations.back()[0] == Catch::Approx(0.36).margin(1e-10));
  REQUIRE(traj.populations.back()[1] == Catch::Approx(0.64).margin(1e-10));
}
