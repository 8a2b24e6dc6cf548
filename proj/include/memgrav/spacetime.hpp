#pragma once

#include <functional>
#include <vector>

#include "memgrav/kprofile.hpp"
#include "memgrav/types.hpp"

namespace memgrav {

struct OrbitConstants {
  double E{1.0};
  double L{0.0};
  double ell{0.0};  // L / E [m]
};

struct OrbitShape {
  double r_min{0.0};
  double r_max{0.0};
  double semi_major{0.0};
  double eccentricity{0.0};
  double latus_rectum{0.0};
  double precession{0.0};       // signed, mean over apsis pairs [rad]
  double precession_sd{0.0};    // sample standard deviation [rad]
  bool precession_defined{false};
};

/// Fiducial axi-symmetric metric ds^2 = -alpha^2 dt^2 + Phi^2 (dr^2 + r^2 dphi^2)
/// built from a k(r) profile and the vehicle speed:
///   alpha^2 = E^2 (1 - v^2 W),  Phi^2 = E^2 W (1 - v^2 W),  W = exp(-K/v^2).
class MetricField {
 public:
  MetricField() = default;
  MetricField(KProfile profile, double v, double E = 1.0);

  double W(double r) const;
  double alpha2(double r) const;
  double phi2(double r) const;
  double dalpha2(double r) const;
  double dphi2(double r) const;

  const KProfile& profile() const { return profile_; }
  double v() const { return v_; }
  double gauge_E() const { return E_; }

 private:
  KProfile profile_;
  double v_{0.0}, E_{1.0};
};

MetricField build_metric_axisym(KProfile profile, double v, double E = 1.0);

/// General (x, y) metric from a terrain height field, K -> C g z.
class GeneralMetric {
 public:
  GeneralMetric(std::function<double(const Vec2&)> z, double C, double g,
                double v, double E = 1.0);
  double W(const Vec2& p) const;
  double alpha2(const Vec2& p) const;
  double phi2(const Vec2& p) const;
  double v() const { return v_; }

 private:
  std::function<double(const Vec2&)> z_;
  double C_, g_, v_, E_;
};

GeneralMetric build_metric_general(std::function<double(const Vec2&)> z,
                                   double C, double g, double v,
                                   double E = 1.0);

struct GeodesicAccel {
  double rdd{0.0};    // r-double-dot
  double phidd{0.0};  // phi-double-dot
};

/// Coordinate-time geodesic right-hand side of the axi-symmetric metric.
GeodesicAccel geodesic_rhs_axisym(const MetricField& metric,
                                  const PolarState& state);

/// Conserved quantities from an instantaneous state:
/// ell = Phi^2 r^2 phidot / alpha^2 = W r^2 phidot.
OrbitConstants conserved(const MetricField& metric, const PolarState& state);

/// V(r) = (ell^2 / r^2 e^{K/v^2} + 1 - v^2 e^{-K/v^2}) / 2; turning points
/// solve V = 1/2.
double effective_potential(const MetricField& metric, double ell, double r);

struct CircularOrbit {
  double r_c{0.0};
  double k_c{0.0};
  bool unique{true};
};

/// Smallest root of k(r) = v^2 / r on the profile domain.
CircularOrbit circular_radius(const KProfile& profile, double v);

/// ell_max = v r_c exp(-K(r_c)/v^2), attained by the circular orbit.
double ell_max(const KProfile& profile, double v);

/// Radial turning points r_- <= r_+ solving ell e^{K/v^2} / v = r.
std::pair<double, double> turning_points(const MetricField& metric, double ell);

/// 2 pi / omega - 2 pi with omega^2 = 1 + r_c k'_c / k_c (near-circular
/// orbits). Throws when omega^2 <= 0 (unstable circular orbit).
double precession_perturbative(const KProfile& profile, double v);
double precession_perturbative_at(const KProfile& profile, double r_c);

/// Apsidal advance over one radial cycle minus 2 pi, from quadrature of the
/// orbit equation between the turning points.
double precession_exact(const MetricField& metric, double ell);

/// Speed and turning-strength profiles that make the mapped metric equal to
/// Schwarzschild in isotropic coordinates.
class SchwarzschildDesign {
 public:
  /// Integrates the matching ODE for v(r) from v(r_lo) = v_lo.
  SchwarzschildDesign(double M, double r_lo, double r_hi, double v_lo,
                      int grid_n = 8192);

  double v(double r) const;
  double dv(double r) const;
  double k(double r) const;
  double M() const { return M_; }
  double r_lo() const { return r_lo_; }
  double r_hi() const { return r_hi_; }

  /// Isotropic-coordinate Schwarzschild metric functions.
  static double alpha2_iso(double M, double r);
  static double phi2_iso(double M, double r);

  void write_csv(const std::string& path, int samples = 256) const;

 private:
  double M_, r_lo_, r_hi_;
  std::shared_ptr<MonotoneCubic> v_spline_;
};

/// Polar equation of motion for a vehicle with radius-dependent speed v(r):
/// the constant-speed EOM with the extra v'/v advection term.
GeodesicAccel radial_speed_rhs(const SchwarzschildDesign& design,
                               const PolarState& state);

/// One fixed-step RK4 step of the axi-symmetric geodesic EOM.
PolarState advance_geodesic(const MetricField& metric, const PolarState& state,
                            double dt);

/// One fixed-step RK4 step of the radius-dependent-speed EOM.
PolarState advance_design(const SchwarzschildDesign& design,
                          const PolarState& state, double dt);

}  // namespace memgrav
