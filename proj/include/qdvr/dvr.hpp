#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace qdvr {

// Largest basis dimension for which operators may be materialized densely.
inline constexpr long kDenseCap = 4096;

// Uniform real-space grid, L points per dimension with both endpoints on the
// grid. L must be a power of two so grid indices map onto qubit registers.
class DVRGrid {
 public:
  DVRGrid(int dims, int points_per_dim, std::vector<double> xmin,
          std::vector<double> xmax, std::vector<double> mass);

  int dims() const { return dims_; }
  int points_per_dim() const { return points_; }
  long total_points() const;
  int qubits_per_dim() const { return qubits_per_dim_; }
  int num_qubits() const { return dims_ * qubits_per_dim_; }

  double xmin(int dim) const { return xmin_.at(dim); }
  double xmax(int dim) const { return xmax_.at(dim); }
  double mass(int dim) const { return mass_.at(dim); }
  double spacing(int dim) const;
  double coordinate(int dim, int i) const;

  // Basis index convention: dimension 0 occupies the least significant qubit
  // block, so m = i_0 + L*i_1 + L^2*i_2 + ...
  std::vector<int> unpack_index(long m) const;
  long pack_index(const std::vector<int>& idx) const;

 private:
  int dims_;
  int points_;
  int qubits_per_dim_;
  std::vector<double> xmin_, xmax_, mass_;
};

// Operator on the grid basis, stored structurally: a set of one-dimension
// kinetic blocks plus an optional diagonal. Dense materialization is only
// permitted up to kDenseCap; matrix-vector products work at any size.
class GridOperator {
 public:
  enum class Kind { Kinetic1D, DiagonalPotential, Dense };

  static GridOperator kinetic_block(const DVRGrid& grid, int dim,
                                    Eigen::MatrixXd block);
  static GridOperator diagonal(const DVRGrid& grid, Eigen::VectorXd values);

  Kind kind() const;
  const DVRGrid& grid() const { return grid_; }
  long dimension() const { return grid_.total_points(); }

  const std::vector<std::pair<int, Eigen::MatrixXd>>& kinetic_blocks() const {
    return blocks_;
  }
  bool has_diagonal() const { return diag_.size() > 0; }
  const Eigen::VectorXd& diagonal_values() const { return diag_; }

  Eigen::MatrixXd dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  GridOperator& operator+=(const GridOperator& other);

 private:
  explicit GridOperator(const DVRGrid& grid) : grid_(grid) {}

  DVRGrid grid_;
  std::vector<std::pair<int, Eigen::MatrixXd>> blocks_;
  Eigen::VectorXd diag_;
};

using PotentialFn = std::function<double(const std::vector<double>&)>;

// Sinc-DVR kinetic energy matrix for one dimension (Colbert-Miller form):
//   T[i][i]  = pi^2 / (6 m dx^2)
//   T[i][i'] = (-1)^(i-i') / (m dx^2 (i-i')^2)   for i != i'
GridOperator build_kinetic_1d(const DVRGrid& grid, int dim);

// Diagonal potential operator, v evaluated at every grid point.
GridOperator build_potential(const DVRGrid& grid, const PotentialFn& v);

// H = sum_dim T_dim + V.
GridOperator assemble_hamiltonian(const DVRGrid& grid, const PotentialFn& v);

// One value per line; the index of the last dimension varies fastest
// (row-major over the multi-index), length L^d.
GridOperator load_potential_file(const DVRGrid& grid, const std::string& path);

}  // namespace qdvr
