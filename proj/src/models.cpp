#include "qdvr/models.hpp"

#include <cmath>
#include <stdexcept>

namespace qdvr {

double field_from_intensity(double w_cm2) {
  if (w_cm2 < 0.0) throw std::invalid_argument("field_from_intensity: negative intensity");
  return std::sqrt(w_cm2 / units::kAtomicIntensity);
}

Pulse Pulse::off() { return Pulse{}; }

Pulse Pulse::smooth_rect(double eps0, double s1, double s2, double tf) {
  if (!(0.0 < s1 && s1 < s2 && s2 < tf))
    throw std::invalid_argument("Pulse: need 0 < s1 < s2 < tf");
  Pulse p;
  p.shape_ = Shape::SmoothRect;
  p.eps0_ = eps0;
  p.s1_ = s1;
  p.s2_ = s2;
  p.tf_ = tf;
  return p;
}

Pulse Pulse::trapezoid_carrier(double eps0, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("Pulse: carrier frequency must be positive");
  Pulse p;
  p.shape_ = Shape::TrapezoidCarrier;
  p.eps0_ = eps0;
  p.omega_ = omega;
  p.period_ = 2.0 * M_PI / omega;
  return p;
}

double Pulse::operator()(double t) const {
  switch (shape_) {
    case Shape::Off:
      return 0.0;
    case Shape::SmoothRect: {
      if (t < 0.0 || t > tf_) return 0.0;
      if (t <= s1_) {
        const double s = std::sin(M_PI * t / (2.0 * s1_));
        return eps0_ * s * s;
      }
      if (t < s2_) return eps0_;
      const double s = std::sin(M_PI * (tf_ - t) / (2.0 * (tf_ - s2_)));
      return eps0_ * s * s;
    }
    case Shape::TrapezoidCarrier: {
      const double T = period_;
      if (t < 0.0 || t > 12.0 * T) return 0.0;
      double env;
      if (t <= 2.0 * T) {
        const double s = std::sin(M_PI * t / (4.0 * T));
        env = s * s;
      } else if (t <= 10.0 * T) {
        env = 1.0;
      } else {
        // phase written so the envelope leaves 1 at t = 10T and reaches 0 at 12T
        const double c = std::cos(M_PI * t / (4.0 * T) - 5.0 * M_PI / 2.0);
        env = c * c;
      }
      return eps0_ * env * std::cos(omega_ * t);
    }
  }
  return 0.0;
}

double Pulse::duration() const {
  switch (shape_) {
    case Shape::Off:
      return 0.0;
    case Shape::SmoothRect:
      return tf_;
    case Shape::TrapezoidCarrier:
      return 12.0 * period_;
  }
  return 0.0;
}

double double_well_potential(double x, const DoubleWellParams& p) {
  const double lin = p.asymmetry / (2.0 * p.x0) * (x - p.x0);
  const double quart = (p.barrier - 0.5 * p.asymmetry) / std::pow(p.x0, 4) *
                       (x - p.x0) * (x - p.x0) * (x + p.x0) * (x + p.x0);
  return lin + quart;
}

double helium_potential(double x, double y, const HeliumParams& p) {
  const double a2 = p.softening * p.softening;
  return -2.0 / std::sqrt(x * x + a2) - 2.0 / std::sqrt(y * y + a2) +
         1.0 / std::sqrt((x - y) * (x - y) + a2);
}

GridOperator position_sum_operator(const DVRGrid& grid) {
  const long n = grid.total_points();
  Eigen::VectorXd diag(n);
  for (long m = 0; m < n; ++m) {
    const auto idx = grid.unpack_index(m);
    double s = 0.0;
    for (int d = 0; d < grid.dims(); ++d) s += grid.coordinate(d, idx[d]);
    diag[m] = s;
  }
  return GridOperator::diagonal(grid, std::move(diag));
}

ModelSystem make_double_well(const DoubleWellParams& p) {
  DVRGrid grid(1, p.points, {units::angstrom_to_bohr(p.xmin_angstrom)},
               {units::angstrom_to_bohr(p.xmax_angstrom)}, {p.mass});
  GridOperator h0 =
      assemble_hamiltonian(grid, [&p](const std::vector<double>& x) {
        return double_well_potential(x[0], p);
      });
  GridOperator mu = position_sum_operator(grid);
  Pulse pulse = Pulse::smooth_rect(p.eps0, units::fs_to_au(p.s1_fs),
                                   units::fs_to_au(p.s2_fs), units::fs_to_au(p.tf_fs));
  // interaction -mu eps(t); reported dipole +<x>
  return ModelSystem{"double-well", grid, std::move(h0), std::move(mu),
                     -1.0, +1.0, pulse, 0.0};
}

ModelSystem make_helium(const HeliumParams& p) {
  DVRGrid grid(2, p.points,
               {units::angstrom_to_bohr(p.xmin_angstrom), units::angstrom_to_bohr(p.xmin_angstrom)},
               {units::angstrom_to_bohr(p.xmax_angstrom), units::angstrom_to_bohr(p.xmax_angstrom)},
               {1.0, 1.0});
  GridOperator h0 =
      assemble_hamiltonian(grid, [&p](const std::vector<double>& x) {
        return helium_potential(x[0], x[1], p);
      });
  GridOperator coupling = position_sum_operator(grid);
  const double omega = units::ev_to_hartree(p.frequency_ev);
  const double eps0 = field_from_intensity(p.intensity_w_cm2);
  Pulse pulse = Pulse::trapezoid_carrier(eps0, omega);
  // interaction +eps(t)(x+y); reported dipole -<x+y>
  return ModelSystem{"helium", grid, std::move(h0), std::move(coupling),
                     +1.0, -1.0, pulse, omega};
}

}  // namespace qdvr
