#include "qdvr/ansatz.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qdvr {

StateVector Ansatz::reference_state() const {
  return reference == Reference::Plus ? StateVector::plus_state(num_qubits)
                                      : StateVector::basis_state(num_qubits, 0);
}

RotationCircuit Ansatz::circuit() const {
  return RotationCircuit{num_qubits, generators, params};
}

std::string Ansatz::to_text() const {
  std::ostringstream out;
  out.precision(17);
  out << "qubits " << num_qubits << "\n";
  out << "layers " << layers << "\n";
  out << "reference " << (reference == Reference::Plus ? "plus" : "zero") << "\n";
  for (std::size_t k = 0; k < generators.size(); ++k)
    out << generators[k].letters() << " " << params[k] << "\n";
  return out.str();
}

Ansatz Ansatz::from_text(const std::string& text) {
  std::istringstream in(text);
  Ansatz a;
  std::string key, value;
  if (!(in >> key >> a.num_qubits) || key != "qubits")
    throw std::runtime_error("Ansatz: expected 'qubits <n>' header");
  if (!(in >> key >> a.layers) || key != "layers")
    throw std::runtime_error("Ansatz: expected 'layers <n>' header");
  if (!(in >> key >> value) || key != "reference")
    throw std::runtime_error("Ansatz: expected 'reference <tag>' header");
  if (value == "plus")
    a.reference = Reference::Plus;
  else if (value == "zero")
    a.reference = Reference::Zero;
  else
    throw std::runtime_error("Ansatz: unknown reference tag " + value);
  std::string letters;
  double theta;
  while (in >> letters >> theta) {
    a.generators.push_back(PauliString::from_letters(letters));
    a.params.push_back(theta);
  }
  for (const auto& g : a.generators)
    if (g.n != a.num_qubits) throw std::runtime_error("Ansatz: generator length mismatch");
  return a;
}

Ansatz build_hva(const PauliSum& h, int layers, const AnsatzInit& init) {
  if (layers < 1) throw std::invalid_argument("build_hva: layers must be >= 1");
  std::vector<PauliString> pool;
  for (const auto& [p, c] : h.terms()) {
    const int w = p.weight();
    if (w == 1 || w == 2) pool.push_back(p);
  }
  if (pool.empty())
    throw std::invalid_argument("build_hva: Hamiltonian has no weight-1 or weight-2 terms");
  std::sort(pool.begin(), pool.end(), [](const PauliString& a, const PauliString& b) {
    const int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    return a < b;
  });

  Ansatz a;
  a.num_qubits = h.num_qubits();
  a.layers = layers;
  a.reference = Ansatz::Reference::Plus;
  for (int l = 0; l < layers; ++l)
    for (const auto& p : pool) a.generators.push_back(p);
  a.params.assign(a.generators.size(), 0.0);
  if (init.kind == AnsatzInit::Kind::SmallRandom) {
    std::mt19937_64 rng(init.seed);
    std::uniform_real_distribution<double> dist(-init.amplitude, init.amplitude);
    for (auto& t : a.params) t = dist(rng);
  }
  return a;
}

StateVector prepare(const Ansatz& a) {
  if (a.generators.size() != a.params.size())
    throw std::invalid_argument("prepare: generator/parameter count mismatch");
  StateVector psi = a.reference_state();
  for (std::size_t k = 0; k < a.generators.size(); ++k)
    psi.apply_rotation(a.generators[k], a.params[k]);
  return psi;
}

StateVector derivative_state(const Ansatz& a, std::size_t k) {
  if (k >= a.generators.size())
    throw std::out_of_range("derivative_state: parameter index out of range");
  StateVector psi = a.reference_state();
  for (std::size_t j = 0; j <= k; ++j)
    psi.apply_rotation(a.generators[j], a.params[j]);
  psi.apply_pauli(a.generators[k]);
  psi.amplitudes() *= cdouble{0.0, 1.0};
  for (std::size_t j = k + 1; j < a.generators.size(); ++j)
    psi.apply_rotation(a.generators[j], a.params[j]);
  return psi;
}

std::vector<StateVector> derivative_states(const Ansatz& a) {
  const std::size_t np = a.generators.size();
  std::vector<StateVector> out;
  out.reserve(np);
  StateVector front = a.reference_state();
  for (std::size_t k = 0; k < np; ++k) {
    front.apply_rotation(a.generators[k], a.params[k]);
    StateVector d = front;
    d.apply_pauli(a.generators[k]);
    d.amplitudes() *= cdouble{0.0, 1.0};
    for (std::size_t j = k + 1; j < np; ++j)
      d.apply_rotation(a.generators[j], a.params[j]);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace qdvr
