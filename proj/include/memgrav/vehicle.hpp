#pragma once

#include "memgrav/types.hpp"

namespace memgrav {

/// Mechanical constants of a differential-drive constant-speed vehicle.
struct VehicleParams {
  double mass{0.160};   // [kg]
  double Rv{0.05};      // vehicle radius [m]
  double Lc{0.01};      // axle to center-of-mass distance [m]
  double dB{0.0};       // signed lateral imbalance [m]
  double speed{0.25};   // commanded speed [m/s]
  double g{9.8};        // gravitational acceleration [m/s^2]

  void validate() const;

  static VehicleParams heavy();  // 160 g, Rv = 5 cm preset
  static VehicleParams light();  // 45 g, Rv = 2 cm preset
};

/// C = Lc^2 / (Lc^2 + Rv^2/2), the lever-arm turning efficiency.
double mechanical_constant(const VehicleParams& p);

/// Imbalance coupling eps = Lc dB / (Rv^2/2 + Lc^2 + dB^2). The orbit
/// eccentricity envelope goes as exp(-eps * phi / 2).
double epsilon(const VehicleParams& p);

/// Turning strength k = C g sin(gamma) cos(gamma) for tilt gamma.
double k_of_gamma(const VehicleParams& p, double gamma);

/// Same, with the tilt supplied as a terrain gradient magnitude
/// (gamma = arctan |grad z|).
double k_of_gradient(const VehicleParams& p, double grad_norm);

/// Axi-symmetric acceleration components for a = k sin(theta):
/// a^r = -a sin(theta), a^phi = (a / r) cos(theta).
struct PolarAccel {
  double a_r{0.0};
  double a_phi{0.0};
};
PolarAccel accel_axisymmetric(const PolarState& state, double k_at_r);

/// General-terrain acceleration, perpendicular to the velocity:
///   xdd =  C g yd (dx yd - dy xd) / v^2
///   ydd = -C g xd (dx yd - dy xd) / v^2
/// with descent direction d = -grad z. An optional imbalance eps adds the
/// bias term k eps cos(theta) along the same perpendicular.
Vec2 accel_general(const PhysState& state, const Vec2& descent,
                   const VehicleParams& p, double eps = 0.0);

/// Signed bias magnitude a_bias = g sin(gamma) cos(theta) eps.
double bias_accel(const VehicleParams& p, double gamma, double theta);

}  // namespace memgrav
