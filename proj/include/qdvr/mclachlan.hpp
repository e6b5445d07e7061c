#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qdvr/ansatz.hpp"
#include "qdvr/pauli.hpp"
#include "qdvr/statevector.hpp"

namespace qdvr {

// Anything that can act with a Hermitian operator on a statevector.
class HamiltonianOracle {
 public:
  virtual ~HamiltonianOracle() = default;
  virtual Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const = 0;
  virtual double expectation_value(const StateVector& psi) const;
};

class PauliOracle final : public HamiltonianOracle {
 public:
  explicit PauliOracle(const PauliSum& h) : h_(&h) {}
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const override { return h_->apply(v); }
  const PauliSum& sum() const { return *h_; }

 private:
  const PauliSum* h_;
};

// H(t) = h0 + interaction_sign * eps(t) * coupling
struct DrivenHamiltonian {
  const PauliSum* h0 = nullptr;
  const PauliSum* coupling = nullptr;
  std::function<double(double)> field;  // eps(t), atomic units
  double interaction_sign = 1.0;

  double field_at(double t) const { return field ? field(t) : 0.0; }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v, double t) const;
  double energy(const StateVector& psi, double t) const;
};

// Quantum geometric tensor real part, M_kl = Re <d_k psi | d_l psi>.
Eigen::MatrixXd assemble_M(const Ansatz& a, const ShotConfig& cfg = ShotConfig::exact());

// f_k = <psi|H|d_k psi>.
Eigen::VectorXcd assemble_f(const Ansatz& a, const PauliSum& h,
                            const ShotConfig& cfg = ShotConfig::exact());
Eigen::VectorXcd assemble_f(const Ansatz& a, const HamiltonianOracle& h,
                            const ShotConfig& cfg = ShotConfig::exact());

// f for H + sum_i beta_i |s_i><s_i| with fixed deflation states s_i.
Eigen::VectorXcd assemble_f_deflated(const Ansatz& a, const PauliSum& h,
                                     const std::vector<std::pair<StateVector, double>>& deflation,
                                     const ShotConfig& cfg = ShotConfig::exact());

// Same quantities assembled from single-ancilla interference circuits.
Eigen::MatrixXd assemble_M_hadamard(const Ansatz& a,
                                    const ShotConfig& cfg = ShotConfig::exact());
Eigen::VectorXcd assemble_f_hadamard(const Ansatz& a, const PauliSum& h,
                                     const ShotConfig& cfg = ShotConfig::exact());

// Solve (M + ridge I) x = rhs with a positive-definite factorization.
Eigen::VectorXd solve_regularized(const Eigen::MatrixXd& m, const Eigen::VectorXd& rhs,
                                  double ridge);

enum class Scheme { Euler, Rk4 };

// Equation-of-motion sign convention. Calibrated reproduces exact dynamics on
// closed-form cases: real time theta_dot = -(M+l)^-1 Im f, imaginary time
// theta_dot = -(M+l)^-1 Re f. AsPrinted flips both signs.
enum class SignConvention { Calibrated, AsPrinted };

struct IntegratorConfig {
  double step = 0.01;  // atomic time units
  Scheme scheme = Scheme::Euler;
  SignConvention sign = SignConvention::Calibrated;
  double ridge = 1e-6;
};

// Advance theta by one real-time step under H(t); field sampled at the left
// endpoint for Euler and at substage times for RK4.
void step_real_time(Ansatz& a, const DrivenHamiltonian& h, double t,
                    const IntegratorConfig& cfg,
                    const ShotConfig& shots = ShotConfig::exact());

// One imaginary-time step toward the ground state of h.
void step_imag_time(Ansatz& a, const HamiltonianOracle& h, const IntegratorConfig& cfg,
                    const ShotConfig& shots = ShotConfig::exact());

struct ImagTimeOptions {
  int max_iterations = 1000;
  double dtau = 0.5;
  double ridge = 1e-6;
  double plateau_tol = 1e-8;
  int plateau_window = 20;
  // a proposed step that raises the energy is retried at half length,
  // at most this many times, so accepted steps never increase <H>
  int max_step_halvings = 40;
};

struct ImagTimeResult {
  std::vector<double> energies;  // one per accepted step, starting value first
  bool converged = false;
  int iterations = 0;
  int rejected_steps = 0;  // proposals shrunk by the energy safeguard
};

// Run the imaginary-time flow until the energy plateaus or the iteration
// budget is exhausted. Mutates the ansatz parameters in place.
ImagTimeResult run_imag_time(Ansatz& a, const HamiltonianOracle& h,
                             const ImagTimeOptions& opt,
                             const ShotConfig& shots = ShotConfig::exact());

struct RealTimeOptions {
  double dt = 0.1;          // atomic time units
  double duration = 1.0;    // atomic time units
  Scheme scheme = Scheme::Euler;
  double ridge = 1e-6;
  int output_stride = 1;
  // optional projection basis for population output
  std::vector<StateVector> population_states;
};

struct RealTimeTrajectory {
  std::vector<double> times;  // atomic units
  std::vector<std::vector<double>> thetas;
  std::vector<double> energies;
  std::vector<std::vector<double>> populations;
  bool diverged = false;
  double diverged_at = 0.0;
};

RealTimeTrajectory run_real_time(Ansatz a, const DrivenHamiltonian& h,
                                 const RealTimeOptions& opt,
                                 const ShotConfig& shots = ShotConfig::exact());

}  // namespace qdvr
