#pragma once

#include <string>

#include "qdvr/constants.hpp"
#include "qdvr/dvr.hpp"

namespace qdvr {

// Peak field amplitude (a.u.) for a given intensity in W/cm^2.
double field_from_intensity(double w_cm2);

// Time-dependent envelope field, times in atomic units.
class Pulse {
 public:
  enum class Shape {
    // sin^2 ramp up over [0, s1], flat top, sin^2 ramp down over [s2, tf]
    SmoothRect,
    // sin^2 / cos^2 ramped carrier: on over [0, 12T] with a 2T ramp at each end
    TrapezoidCarrier,
    Off,
  };

  static Pulse off();
  static Pulse smooth_rect(double eps0, double s1, double s2, double tf);
  static Pulse trapezoid_carrier(double eps0, double omega);

  double operator()(double t) const;
  double duration() const;
  Shape shape() const { return shape_; }
  double eps0() const { return eps0_; }
  double omega() const { return omega_; }

 private:
  Shape shape_ = Shape::Off;
  double eps0_ = 0.0;
  double s1_ = 0.0, s2_ = 0.0, tf_ = 0.0;
  double omega_ = 0.0, period_ = 0.0;
};

struct DoubleWellParams {
  double barrier = 0.00625;      // hartree
  double asymmetry = 0.000257;   // hartree
  double x0 = 1.0;               // bohr, well positions at +-x0
  double mass = units::kProtonMass;
  int points = 8;
  double xmin_angstrom = -0.8;
  double xmax_angstrom = 0.8;
  // resonant flat-top amplitude: eps0 ~ (E1-E0)/(<x>_1 - <x>_0) brings the
  // tilted wells into degeneracy so the pulse drives the transfer
  double eps0 = 0.000137;        // a.u.
  double s1_fs = 150.0;
  double s2_fs = 1250.0;
  double tf_fs = 1500.0;
};

// V(x) = (asym / 2 x0) (x - x0) + ((barrier - asym/2) / x0^4) (x-x0)^2 (x+x0)^2
double double_well_potential(double x, const DoubleWellParams& p);

struct HeliumParams {
  double softening = 0.7397;     // bohr
  int points = 8;
  double xmin_angstrom = -2.0;
  double xmax_angstrom = 2.0;
  double frequency_ev = 0.3542;
  double intensity_w_cm2 = 3.0e12;
};

// Soft-core two-electron potential on a line,
// -2/sqrt(x^2+a^2) - 2/sqrt(y^2+a^2) + 1/sqrt((x-y)^2+a^2).
double helium_potential(double x, double y, const HeliumParams& p);

// A model bundles the field-free Hamiltonian, the operator the field couples
// to, the sign conventions, and the pulse:
//   H(t) = H0 + interaction_sign * eps(t) * coupling
//   d(t) = dipole_sign * <coupling>
struct ModelSystem {
  std::string name;
  DVRGrid grid;
  GridOperator h0;
  GridOperator coupling;
  double interaction_sign = 1.0;
  double dipole_sign = 1.0;
  Pulse pulse;
  double carrier_omega = 0.0;  // a.u., zero when the pulse has no carrier
};

ModelSystem make_double_well(const DoubleWellParams& p = {});
ModelSystem make_helium(const HeliumParams& p = {});

// Position-sum operator x_0 + x_1 + ... as a diagonal.
GridOperator position_sum_operator(const DVRGrid& grid);

}  // namespace qdvr
