#pragma once

#include <Eigen/Dense>

namespace memgrav {

using Vec2 = Eigen::Vector2d;

/// Planar pose + velocity of one vehicle at one instant.
struct PhysState {
  Vec2 position{Vec2::Zero()};
  Vec2 velocity{Vec2::Zero()};

  double speed() const { return velocity.norm(); }
  double radius() const { return position.norm(); }
};

/// State in polar coordinates, used by the axi-symmetric integrators.
struct PolarState {
  double r{0.0};
  double phi{0.0};
  double rdot{0.0};
  double phidot{0.0};

  double speed() const {
    return std::sqrt(rdot * rdot + r * r * phidot * phidot);
  }
  /// Heading angle between the velocity and the outward radial direction.
  double heading() const { return std::atan2(r * phidot, rdot); }

  PhysState to_cartesian() const {
    const double c = std::cos(phi), s = std::sin(phi);
    PhysState st;
    st.position = Vec2(r * c, r * s);
    st.velocity = Vec2(rdot * c - r * phidot * s, rdot * s + r * phidot * c);
    return st;
  }

  static PolarState from_cartesian(const PhysState& st) {
    PolarState ps;
    ps.r = st.position.norm();
    ps.phi = std::atan2(st.position.y(), st.position.x());
    const Vec2 rhat = st.position / ps.r;
    ps.rdot = st.velocity.dot(rhat);
    ps.phidot = (rhat.x() * st.velocity.y() - rhat.y() * st.velocity.x()) / ps.r;
    return ps;
  }

  /// Launch at radius r0, azimuth phi0, heading theta from the outward
  /// radial direction (theta = pi/2 is tangential, counterclockwise).
  static PolarState launch(double r0, double theta, double v, double phi0 = 0.0) {
    PolarState ps;
    ps.r = r0;
    ps.phi = phi0;
    ps.rdot = v * std::cos(theta);
    ps.phidot = v * std::sin(theta) / r0;
    return ps;
  }
};

}  // namespace memgrav
