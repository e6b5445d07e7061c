#pragma once

#include <string>
#include <vector>

namespace qdvr {

struct SpectrumResult {
  std::vector<double> omega;           // atomic units, up to Nyquist
  std::vector<double> harmonic_order;  // omega / carrier (zeros when no carrier)
  std::vector<double> intensity;
  double resolution = 0.0;  // 2 pi / duration, unpadded
};

// Discrete Fourier intensity I(w) = |dt sum_k d_k exp(i w t_k)|^2 of a
// uniformly sampled dipole series. zero_pad >= 1 extends the series with
// zeros (finer bin placement only, no new information). The optional Hann
// window tapers the series; normalize rescales so the strongest bin within
// half an order of the fundamental becomes 1.
SpectrumResult hhg_spectrum(const std::vector<double>& times_au,
                            const std::vector<double>& dipole, double carrier_omega,
                            int zero_pad = 1, bool hann_window = false,
                            bool normalize = false);

// Indices of local maxima with intensity >= rel_floor * max intensity,
// restricted to harmonic order <= max_order when max_order > 0.
std::vector<std::size_t> find_peaks(const SpectrumResult& s, double rel_floor,
                                    double max_order = 0.0);

enum class EstimateMethod { RealTimeVqa, ImagTimeVqaSubspace, GradientDescentSubspace };

// Distinct-circuit counts per time step for a d-dimensional grid with L
// points per dimension and an ansatz with n_theta parameters:
//   M matrix          n_theta (n_theta + 1) / 2
//   f, kinetic part   d L^2 n_theta
//   f, potential part L^d n_theta      (general diagonal potential)
//   subspace energy   d L^2 + 1 per evaluation, 2 n_theta evaluations
//                     per gradient
struct ResourceEstimate {
  EstimateMethod method;
  long n_theta = 0;
  long dims = 0;
  long grid_points = 0;
  long m_circuits = 0;
  long f_kinetic_circuits = 0;
  long f_potential_circuits = 0;
  long energy_circuits_per_eval = 0;
  long gradient_evaluations = 0;
  long total_per_step = 0;

  std::string to_json() const;
};

ResourceEstimate estimate_circuits(long n_theta, long dims, long grid_points,
                                   EstimateMethod method);

}  // namespace qdvr
