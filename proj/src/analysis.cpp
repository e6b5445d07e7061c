#include "qdvr/analysis.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qdvr {

SpectrumResult hhg_spectrum(const std::vector<double>& times_au,
                            const std::vector<double>& dipole, double carrier_omega,
                            int zero_pad, bool hann_window, bool normalize) {
  const std::size_t n = times_au.size();
  if (n < 2 || dipole.size() != n)
    throw std::invalid_argument("hhg_spectrum: need matching series with >= 2 samples");
  if (zero_pad < 1) throw std::invalid_argument("hhg_spectrum: zero_pad must be >= 1");
  const double dt = times_au[1] - times_au[0];
  if (!(dt > 0.0)) throw std::invalid_argument("hhg_spectrum: non-increasing time grid");
  for (std::size_t k = 1; k < n; ++k)
    if (std::abs(times_au[k] - times_au[k - 1] - dt) > 1e-9 * dt)
      throw std::invalid_argument("hhg_spectrum: non-uniform time grid");

  std::vector<double> d(dipole);
  if (hann_window) {
    for (std::size_t k = 0; k < n; ++k)
      d[k] *= 0.5 * (1.0 - std::cos(2.0 * M_PI * k / (n - 1)));
  }

  const std::size_t npad = n * static_cast<std::size_t>(zero_pad);
  const std::size_t nbins = npad / 2 + 1;
  SpectrumResult out;
  out.omega.resize(nbins);
  out.harmonic_order.resize(nbins);
  out.intensity.resize(nbins);
  out.resolution = 2.0 * M_PI / (n * dt);
  const double dw = 2.0 * M_PI / (static_cast<double>(npad) * dt);
  for (std::size_t b = 0; b < nbins; ++b) {
    const double w = b * dw;
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += d[k] * std::polar(1.0, w * times_au[k]);
    out.omega[b] = w;
    out.harmonic_order[b] = carrier_omega > 0.0 ? w / carrier_omega : 0.0;
    out.intensity[b] = std::norm(acc * dt);
  }

  if (normalize && carrier_omega > 0.0) {
    double peak = 0.0;
    for (std::size_t b = 0; b < nbins; ++b)
      if (std::abs(out.harmonic_order[b] - 1.0) <= 0.5)
        peak = std::max(peak, out.intensity[b]);
    if (peak > 0.0)
      for (auto& v : out.intensity) v /= peak;
  }
  return out;
}

std::vector<std::size_t> find_peaks(const SpectrumResult& s, double rel_floor,
                                    double max_order) {
  std::vector<std::size_t> peaks;
  if (s.intensity.size() < 3) return peaks;
  double top = 0.0;
  for (std::size_t b = 0; b < s.intensity.size(); ++b) {
    if (max_order > 0.0 && s.harmonic_order[b] > max_order) continue;
    top = std::max(top, s.intensity[b]);
  }
  const double floor_value = rel_floor * top;
  for (std::size_t b = 1; b + 1 < s.intensity.size(); ++b) {
    if (max_order > 0.0 && s.harmonic_order[b] > max_order) continue;
    if (s.intensity[b] >= floor_value && s.intensity[b] > s.intensity[b - 1] &&
        s.intensity[b] >= s.intensity[b + 1])
      peaks.push_back(b);
  }
  return peaks;
}

ResourceEstimate estimate_circuits(long n_theta, long dims, long grid_points,
                                   EstimateMethod method) {
  if (n_theta < 1 || dims < 1 || grid_points < 2)
    throw std::invalid_argument("estimate_circuits: arguments must be positive");
  ResourceEstimate r;
  r.method = method;
  r.n_theta = n_theta;
  r.dims = dims;
  r.grid_points = grid_points;
  long ld = 1;
  for (long i = 0; i < dims; ++i) ld *= grid_points;

  r.m_circuits = n_theta * (n_theta + 1) / 2;
  switch (method) {
    case EstimateMethod::RealTimeVqa:
      r.f_kinetic_circuits = dims * grid_points * grid_points * n_theta;
      r.f_potential_circuits = ld * n_theta;
      r.total_per_step = r.m_circuits + r.f_kinetic_circuits + r.f_potential_circuits;
      break;
    case EstimateMethod::ImagTimeVqaSubspace:
    case EstimateMethod::GradientDescentSubspace: {
      r.energy_circuits_per_eval = dims * grid_points * grid_points + 1;
      r.gradient_evaluations = 2 * n_theta;
      const long f_cost = r.energy_circuits_per_eval * r.gradient_evaluations;
      r.total_per_step = method == EstimateMethod::ImagTimeVqaSubspace
                             ? r.m_circuits + f_cost
                             : f_cost;
      break;
    }
  }
  return r;
}

std::string ResourceEstimate::to_json() const {
  nlohmann::json j;
  switch (method) {
    case EstimateMethod::RealTimeVqa: j["method"] = "real-time-vqa"; break;
    case EstimateMethod::ImagTimeVqaSubspace: j["method"] = "imag-time-vqa-subspace"; break;
    case EstimateMethod::GradientDescentSubspace: j["method"] = "gradient-descent-subspace"; break;
  }
  j["n_theta"] = n_theta;
  j["dims"] = dims;
  j["grid_points"] = grid_points;
  j["m_circuits"] = m_circuits;
  j["f_kinetic_circuits"] = f_kinetic_circuits;
  j["f_potential_circuits"] = f_potential_circuits;
  j["energy_circuits_per_eval"] = energy_circuits_per_eval;
  j["gradient_evaluations"] = gradient_evaluations;
  j["total_per_step"] = total_per_step;
  return j.dump(2);
}

}  // namespace qdvr
