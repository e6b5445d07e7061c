#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdvr/dvr.hpp"

namespace qdvr {

using cdouble = std::complex<double>;

// N-qubit Pauli string in symplectic form. Qubit 0 is the least significant
// bit of a basis index; the first character of the letter form acts on it.
// P = i^{#Y} * X^x * Z^z, so P|b> = i^{#Y} (-1)^{popcount(b&z)} |b^x>.
struct PauliString {
  uint64_t x = 0;
  uint64_t z = 0;
  int n = 0;

  static PauliString identity(int n) { return PauliString{0, 0, n}; }
  static PauliString from_letters(const std::string& letters);
  static PauliString single(int n, int qubit, char letter);

  char letter(int q) const;
  std::string letters() const;
  int weight() const;
  int y_count() const;
  bool is_identity() const { return x == 0 && z == 0; }

  // product this * other: phase in {1, i, -1, -i} times a PauliString
  std::pair<cdouble, PauliString> multiply(const PauliString& other) const;

  bool operator==(const PauliString& o) const { return n == o.n && x == o.x && z == o.z; }
  bool operator<(const PauliString& o) const;
};

// Linear combination of Pauli strings. Terms with |coeff| below the prune
// threshold are dropped on insertion.
class PauliSum {
 public:
  static constexpr double kPruneThreshold = 1e-12;

  explicit PauliSum(int num_qubits) : n_(num_qubits) {}

  int num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  const std::map<PauliString, cdouble>& terms() const { return terms_; }

  void add(const PauliString& p, cdouble coeff);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(double scale);

  bool is_hermitian(double tol = 1e-10) const;
  double max_abs_imag_coeff() const;

  Eigen::MatrixXcd dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  // One term per line: coeff_re coeff_im LETTERS
  std::string to_text() const;
  static PauliSum from_text(int num_qubits, const std::string& text);

 private:
  int n_;
  std::map<PauliString, cdouble> terms_;
};

// Bits of grid index m, least significant first, length num_qubits.
std::vector<int> encode_index(long m, int num_qubits);

// |x_m><x_n| expanded over the Pauli basis (2^n terms).
PauliSum encode_projector(long m, long n_idx, int num_qubits);

// Diagonal operator expanded over {I,Z} strings via a Walsh-Hadamard
// transform; at most 2^N terms.
PauliSum expand_diagonal(const Eigen::VectorXd& values);

// Grid operator to Pauli form: kinetic blocks entry-by-entry through
// projector expansion, the diagonal through expand_diagonal.
PauliSum encode_operator(const GridOperator& op);

}  // namespace qdvr
