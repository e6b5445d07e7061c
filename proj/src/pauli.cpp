#include "qdvr/pauli.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace qdvr {

namespace {

constexpr cdouble kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int letter_rank(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
  }
  throw std::invalid_argument("PauliString: letter must be one of I X Y Z");
}

}  // namespace

PauliString PauliString::from_letters(const std::string& letters) {
  if (letters.empty() || letters.size() > 64)
    throw std::invalid_argument("PauliString: need between 1 and 64 letters");
  PauliString p;
  p.n = static_cast<int>(letters.size());
  for (int q = 0; q < p.n; ++q) {
    switch (letter_rank(letters[q])) {
      case 0: break;
      case 1: p.x |= 1ULL << q; break;
      case 2: p.x |= 1ULL << q; p.z |= 1ULL << q; break;
      case 3: p.z |= 1ULL << q; break;
    }
  }
  return p;
}

PauliString PauliString::single(int n, int qubit, char letter) {
  std::string s(n, 'I');
  s.at(qubit) = letter;
  return from_letters(s);
}

char PauliString::letter(int q) const {
  const bool bx = (x >> q) & 1, bz = (z >> q) & 1;
  if (bx && bz) return 'Y';
  if (bx) return 'X';
  if (bz) return 'Z';
  return 'I';
}

std::string PauliString::letters() const {
  std::string s(n, 'I');
  for (int q = 0; q < n; ++q) s[q] = letter(q);
  return s;
}

int PauliString::weight() const { return std::popcount(x | z); }

int PauliString::y_count() const { return std::popcount(x & z); }

std::pair<cdouble, PauliString> PauliString::multiply(const PauliString& other) const {
  if (n != other.n) throw std::invalid_argument("PauliString: qubit count mismatch");
  PauliString out{x ^ other.x, z ^ other.z, n};
  // this = i^{a} X^{x1} Z^{z1}, other = i^{b} X^{x2} Z^{z2};
  // commuting Z^{z1} past X^{x2} gives (-1)^{|z1 & x2|}
  int ipow = y_count() + other.y_count() - out.y_count();
  ipow = ((ipow % 4) + 4) % 4;
  cdouble phase = kIPow[ipow];
  if (std::popcount(z & other.x) & 1) phase = -phase;
  return {phase, out};
}

bool PauliString::operator<(const PauliString& o) const {
  if (n != o.n) return n < o.n;
  for (int q = 0; q < n; ++q) {
    const int a = letter_rank(letter(q)), b = letter_rank(o.letter(q));
    if (a != b) return a < b;
  }
  return false;
}

void PauliSum::add(const PauliString& p, cdouble coeff) {
  if (p.n != n_) throw std::invalid_argument("PauliSum: qubit count mismatch");
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    if (std::abs(coeff) >= kPruneThreshold) terms_.emplace(p, coeff);
    return;
  }
  it->second += coeff;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) throw std::invalid_argument("PauliSum: qubit count mismatch");
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator*=(double scale) {
  for (auto& [p, c] : terms_) c *= scale;
  return *this;
}

bool PauliSum::is_hermitian(double tol) const { return max_abs_imag_coeff() <= tol; }

double PauliSum::max_abs_imag_coeff() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c.imag()));
  return m;
}

Eigen::MatrixXcd PauliSum::dense() const {
  const long dim = 1L << n_;
  if (dim > kDenseCap)
    throw std::runtime_error("PauliSum: dense materialization above cap");
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : terms_) {
    const cdouble base = c * kIPow[p.y_count() % 4];
    for (long b = 0; b < dim; ++b) {
      const double sign = (std::popcount(static_cast<uint64_t>(b) & p.z) & 1) ? -1.0 : 1.0;
      h(b ^ p.x, b) += base * sign;
    }
  }
  return h;
}

Eigen::VectorXcd PauliSum::apply(const Eigen::VectorXcd& v) const {
  const long dim = 1L << n_;
  if (v.size() != dim) throw std::invalid_argument("PauliSum: vector length mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (const auto& [p, c] : terms_) {
    const cdouble base = c * kIPow[p.y_count() % 4];
    for (long b = 0; b < dim; ++b) {
      const double sign = (std::popcount(static_cast<uint64_t>(b) & p.z) & 1) ? -1.0 : 1.0;
      out[b ^ p.x] += base * sign * v[b];
    }
  }
  return out;
}

std::string PauliSum::to_text() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [p, c] : terms_)
    out << c.real() << " " << c.imag() << " " << p.letters() << "\n";
  return out.str();
}

PauliSum PauliSum::from_text(int num_qubits, const std::string& text) {
  PauliSum sum(num_qubits);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re, im;
    std::string letters;
    if (!(ls >> re >> im >> letters))
      throw std::runtime_error("PauliSum: malformed term line: " + line);
    if (static_cast<int>(letters.size()) != num_qubits)
      throw std::runtime_error("PauliSum: term length mismatch: " + line);
    sum.add(PauliString::from_letters(letters), {re, im});
  }
  return sum;
}

std::vector<int> encode_index(long m, int num_qubits) {
  if (num_qubits < 1 || num_qubits > 62)
    throw std::invalid_argument("encode_index: unsupported qubit count");
  if (m < 0 || m >= (1L << num_qubits))
    throw std::out_of_range("encode_index: index out of range");
  std::vector<int> bits(num_qubits);
  for (int q = 0; q < num_qubits; ++q) bits[q] = static_cast<int>((m >> q) & 1);
  return bits;
}

PauliSum encode_projector(long m, long n_idx, int num_qubits) {
  const auto km = encode_index(m, num_qubits);
  const auto kn = encode_index(n_idx, num_qubits);
  PauliSum sum(num_qubits);
  const long combos = 1L << num_qubits;
  // per qubit: |0><0| = (I+Z)/2, |1><1| = (I-Z)/2,
  //            |0><1| = (X+iY)/2, |1><0| = (X-iY)/2
  for (long choice = 0; choice < combos; ++choice) {
    PauliString p = PauliString::identity(num_qubits);
    cdouble coeff = 1.0;
    for (int q = 0; q < num_qubits; ++q) {
      const bool second = (choice >> q) & 1;
      const uint64_t bit = 1ULL << q;
      if (km[q] == kn[q]) {
        if (second) {
          p.z |= bit;
          coeff *= (km[q] == 0) ? 0.5 : -0.5;
        } else {
          coeff *= 0.5;
        }
      } else {
        if (second) {
          p.x |= bit;
          p.z |= bit;
          coeff *= (km[q] == 0) ? cdouble{0, 0.5} : cdouble{0, -0.5};
        } else {
          p.x |= bit;
          coeff *= 0.5;
        }
      }
    }
    sum.add(p, coeff);
  }
  return sum;
}

PauliSum expand_diagonal(const Eigen::VectorXd& values) {
  const long dim = values.size();
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("expand_diagonal: length must be a power of two");
  int n = 0;
  while ((1L << n) < dim) ++n;
  // Walsh-Hadamard transform: w[s] = sum_m (-1)^{popcount(m&s)} v[m]
  std::vector<double> w(values.data(), values.data() + dim);
  for (long bit = 1; bit < dim; bit <<= 1) {
    for (long i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const double a = w[i], b = w[i | bit];
      w[i] = a + b;
      w[i | bit] = a - b;
    }
  }
  PauliSum sum(n);
  const double norm = 1.0 / static_cast<double>(dim);
  for (long s = 0; s < dim; ++s) {
    PauliString p{0, static_cast<uint64_t>(s), n};
    sum.add(p, w[s] * norm);
  }
  return sum;
}

PauliSum encode_operator(const GridOperator& op) {
  const DVRGrid& grid = op.grid();
  if (grid.total_points() > kDenseCap)
    throw std::runtime_error("encode_operator: basis dimension above dense cap");
  const int nq = grid.num_qubits();
  const int nq_dim = grid.qubits_per_dim();
  PauliSum sum(nq);
  for (const auto& [dim, block] : op.kinetic_blocks()) {
    const int L = grid.points_per_dim();
    const int offset = dim * nq_dim;
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) {
        if (block(i, j) == 0.0) continue;
        PauliSum proj = encode_projector(i, j, nq_dim);
        for (const auto& [p, c] : proj.terms()) {
          PauliString shifted{p.x << offset, p.z << offset, nq};
          sum.add(shifted, c * block(i, j));
        }
      }
    }
  }
  if (op.has_diagonal()) {
    PauliSum diag = expand_diagonal(op.diagonal_values());
    sum += diag;
  }
  return sum;
}

}  // namespace qdvr
