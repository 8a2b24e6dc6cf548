#include "memgrav/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memgrav {

void TiltFeedback::validate() const {
  if (!(A >= 0.0)) throw std::invalid_argument("controller: A must be >= 0");
  if (!(gamma0 > 0.0))
    throw std::invalid_argument("controller: gamma0 must be > 0");
  if (!(0.0 < v_min && v_min <= v0 && v0 <= v_max))
    throw std::invalid_argument("controller: need 0 < v_min <= v0 <= v_max");
  if (!(lag_tau >= 0.0))
    throw std::invalid_argument("controller: lag_tau must be >= 0");
}

double tilt_from_accel(const Eigen::Vector3d& accel) {
  const double n = accel.norm();
  if (n <= 0.0)
    throw std::domain_error("tilt_from_accel: zero acceleration vector");
  return std::acos(std::clamp(accel.z() / n, -1.0, 1.0));
}

Eigen::Vector3d synthetic_accel(double grad_norm, double g) {
  const double gamma = std::atan(grad_norm);
  return {g * std::sin(gamma), 0.0, g * std::cos(gamma)};
}

double commanded_speed(const TiltFeedback& fb, double gamma) {
  const double v = fb.v0 * (1.0 + fb.A * (gamma - fb.gamma0) / fb.gamma0);
  return std::clamp(v, fb.v_min, fb.v_max);
}

}  // namespace memgrav
