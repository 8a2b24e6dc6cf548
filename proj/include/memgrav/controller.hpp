#pragma once

#include <Eigen/Dense>

namespace memgrav {

/// Tilt-feedback speed law v = v0 (1 + A (gamma - gamma0) / gamma0),
/// clamped to [v_min, v_max].
struct TiltFeedback {
  double A{0.0};            // coupling gain
  double gamma0{0.2618};    // reference tilt [rad] (15 deg)
  double v0{0.15};          // base speed [m/s]
  double v_min{0.05};       // speed clamps [m/s]
  double v_max{0.40};
  double lag_tau{0.0};      // sensor first-order lag time constant [s], 0 = off

  void validate() const;
};

/// gamma = arccos(a_z / |a|) from a 3-axis accelerometer reading.
double tilt_from_accel(const Eigen::Vector3d& accel);

/// Synthetic accelerometer reading for a vehicle resting on a slope of
/// gradient magnitude |grad z|: (g sin gamma, 0, g cos gamma).
Eigen::Vector3d synthetic_accel(double grad_norm, double g);

double commanded_speed(const TiltFeedback& fb, double gamma);

}  // namespace memgrav
