#include "qdvr/dvr.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdvr {

namespace {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(long v) {
  int n = 0;
  while ((1L << n) < v) ++n;
  return n;
}

}  // namespace

DVRGrid::DVRGrid(int dims, int points_per_dim, std::vector<double> xmin,
                 std::vector<double> xmax, std::vector<double> mass)
    : dims_(dims),
      points_(points_per_dim),
      xmin_(std::move(xmin)),
      xmax_(std::move(xmax)),
      mass_(std::move(mass)) {
  if (dims_ < 1) throw std::invalid_argument("DVRGrid: dims must be >= 1");
  if (points_ < 2 || !is_power_of_two(points_))
    throw std::invalid_argument("DVRGrid: points per dimension must be a power of two >= 2");
  if (static_cast<int>(xmin_.size()) != dims_ ||
      static_cast<int>(xmax_.size()) != dims_ ||
      static_cast<int>(mass_.size()) != dims_)
    throw std::invalid_argument("DVRGrid: per-dimension parameter count mismatch");
  for (int d = 0; d < dims_; ++d) {
    if (!(xmax_[d] > xmin_[d]))
      throw std::invalid_argument("DVRGrid: xmax must exceed xmin");
    if (!(mass_[d] > 0.0))
      throw std::invalid_argument("DVRGrid: mass must be positive");
  }
  qubits_per_dim_ = log2_exact(points_);
}

long DVRGrid::total_points() const {
  long n = 1;
  for (int d = 0; d < dims_; ++d) n *= points_;
  return n;
}

double DVRGrid::spacing(int dim) const {
  return (xmax_.at(dim) - xmin_.at(dim)) / (points_ - 1);
}

double DVRGrid::coordinate(int dim, int i) const {
  if (i < 0 || i >= points_) throw std::out_of_range("DVRGrid: grid index out of range");
  return xmin_.at(dim) + i * spacing(dim);
}

std::vector<int> DVRGrid::unpack_index(long m) const {
  if (m < 0 || m >= total_points())
    throw std::out_of_range("DVRGrid: basis index out of range");
  std::vector<int> idx(dims_);
  for (int d = 0; d < dims_; ++d) {
    idx[d] = static_cast<int>(m % points_);
    m /= points_;
  }
  return idx;
}

long DVRGrid::pack_index(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != dims_)
    throw std::invalid_argument("DVRGrid: multi-index size mismatch");
  long m = 0;
  for (int d = dims_ - 1; d >= 0; --d) {
    if (idx[d] < 0 || idx[d] >= points_)
      throw std::out_of_range("DVRGrid: multi-index component out of range");
    m = m * points_ + idx[d];
  }
  return m;
}

GridOperator GridOperator::kinetic_block(const DVRGrid& grid, int dim,
                                         Eigen::MatrixXd block) {
  if (dim < 0 || dim >= grid.dims())
    throw std::invalid_argument("GridOperator: dimension index out of range");
  if (block.rows() != grid.points_per_dim() || block.cols() != grid.points_per_dim())
    throw std::invalid_argument("GridOperator: kinetic block size mismatch");
  GridOperator op(grid);
  op.blocks_.emplace_back(dim, std::move(block));
  return op;
}

GridOperator GridOperator::diagonal(const DVRGrid& grid, Eigen::VectorXd values) {
  if (values.size() != grid.total_points())
    throw std::invalid_argument("GridOperator: diagonal length mismatch");
  GridOperator op(grid);
  op.diag_ = std::move(values);
  return op;
}

GridOperator::Kind GridOperator::kind() const {
  if (blocks_.size() == 1 && !has_diagonal()) return Kind::Kinetic1D;
  if (blocks_.empty() && has_diagonal()) return Kind::DiagonalPotential;
  return Kind::Dense;
}

Eigen::MatrixXd GridOperator::dense() const {
  const long n = dimension();
  if (n > kDenseCap)
    throw std::runtime_error("GridOperator: dense materialization above cap of " +
                             std::to_string(kDenseCap));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  const int L = grid_.points_per_dim();
  for (const auto& [dim, block] : blocks_) {
    const long stride = [&] {
      long s = 1;
      for (int d = 0; d < dim; ++d) s *= L;
      return s;
    }();
    for (long m = 0; m < n; ++m) {
      const int i = static_cast<int>((m / stride) % L);
      const long base = m - i * stride;
      for (int j = 0; j < L; ++j) h(m, base + j * stride) += block(i, j);
    }
  }
  if (has_diagonal()) h.diagonal() += diag_;
  return h;
}

Eigen::VectorXcd GridOperator::apply(const Eigen::VectorXcd& v) const {
  const long n = dimension();
  if (v.size() != n) throw std::invalid_argument("GridOperator: vector length mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  const int L = grid_.points_per_dim();
  for (const auto& [dim, block] : blocks_) {
    long stride = 1;
    for (int d = 0; d < dim; ++d) stride *= L;
    for (long m = 0; m < n; ++m) {
      const int i = static_cast<int>((m / stride) % L);
      const long base = m - i * stride;
      std::complex<double> acc = 0.0;
      for (int j = 0; j < L; ++j) acc += block(i, j) * v[base + j * stride];
      out[m] += acc;
    }
  }
  if (has_diagonal()) out.array() += diag_.array() * v.array();
  return out;
}

GridOperator& GridOperator::operator+=(const GridOperator& other) {
  if (other.grid_.dims() != grid_.dims() ||
      other.grid_.points_per_dim() != grid_.points_per_dim())
    throw std::invalid_argument("GridOperator: grid mismatch in sum");
  for (const auto& b : other.blocks_) blocks_.push_back(b);
  if (other.has_diagonal()) {
    if (has_diagonal())
      diag_ += other.diag_;
    else
      diag_ = other.diag_;
  }
  return *this;
}

GridOperator build_kinetic_1d(const DVRGrid& grid, int dim) {
  const int L = grid.points_per_dim();
  const double dx = grid.spacing(dim);
  const double m = grid.mass(dim);
  const double pref = 1.0 / (2.0 * m * dx * dx);
  Eigen::MatrixXd t(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      if (i == j) {
        t(i, j) = pref * (M_PI * M_PI / 3.0);
      } else {
        const int k = i - j;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        t(i, j) = pref * sign * 2.0 / (static_cast<double>(k) * k);
      }
    }
  }
  return GridOperator::kinetic_block(grid, dim, std::move(t));
}

GridOperator build_potential(const DVRGrid& grid, const PotentialFn& v) {
  const long n = grid.total_points();
  Eigen::VectorXd diag(n);
  std::vector<double> x(grid.dims());
  for (long m = 0; m < n; ++m) {
    const auto idx = grid.unpack_index(m);
    for (int d = 0; d < grid.dims(); ++d) x[d] = grid.coordinate(d, idx[d]);
    const double val = v(x);
    if (!std::isfinite(val)) {
      std::ostringstream msg;
      msg << "build_potential: non-finite value at grid point (";
      for (int d = 0; d < grid.dims(); ++d) msg << (d ? ", " : "") << x[d];
      msg << ")";
      throw std::runtime_error(msg.str());
    }
    diag[m] = val;
  }
  return GridOperator::diagonal(grid, std::move(diag));
}

GridOperator assemble_hamiltonian(const DVRGrid& grid, const PotentialFn& v) {
  GridOperator h = build_kinetic_1d(grid, 0);
  for (int d = 1; d < grid.dims(); ++d) h += build_kinetic_1d(grid, d);
  h += build_potential(grid, v);
  return h;
}

GridOperator load_potential_file(const DVRGrid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_potential_file: cannot open " + path);
  const long n = grid.total_points();
  std::vector<double> values;
  values.reserve(n);
  double x;
  while (in >> x) values.push_back(x);
  if (static_cast<long>(values.size()) != n)
    throw std::runtime_error("load_potential_file: expected " + std::to_string(n) +
                             " values, got " + std::to_string(values.size()));
  // File order: last dimension fastest. Internal order: dimension 0 fastest.
  Eigen::VectorXd diag(n);
  const int L = grid.points_per_dim();
  const int d = grid.dims();
  for (long f = 0; f < n; ++f) {
    long rem = f;
    std::vector<int> idx(d);
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % L);
      rem /= L;
    }
    diag[grid.pack_index(idx)] = values[f];
  }
  for (long m = 0; m < n; ++m)
    if (!std::isfinite(diag[m]))
      throw std::runtime_error("load_potential_file: non-finite value at basis index " +
                               std::to_string(m));
  return GridOperator::diagonal(grid, std::move(diag));
}

}  // namespace qdvr
