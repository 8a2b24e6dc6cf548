#pragma once

#include <optional>
#include <string>
#include <vector>

#include "memgrav/simulation.hpp"
#include "memgrav/spacetime.hpp"

namespace memgrav {

/// Least-squares fit of the precessing-orbit model
///   r(phi) = r_c + e^{-phi/tau} (A1 cos(phi + phi1) + A2 cos(omega phi + phi2))
/// over unwrapped azimuth. The A1 term absorbs 2pi-periodic track defects;
/// the A2 term carries the precession, Delta phi = 2 pi / omega - 2 pi.
struct PrecessionFit {
  double r_c{0.0};
  double A1{0.0}, phi1{0.0};
  double A2{0.0}, phi2{0.0};
  double omega{1.0};
  double tau{0.0};       // decay constant in azimuth [rad]
  double residual{0.0};  // summed squared residual [m^2]

  double precession() const;  // 2 pi / omega - 2 pi
  double model(double phi) const;
};

/// Multi-start simplex fit (starts spanning omega in [0.7, 1.3]); throws
/// std::runtime_error when every start fails to converge.
PrecessionFit fit_precession(const std::vector<double>& phi,
                             const std::vector<double>& r, int starts = 8);

/// (phi, r) series of one vehicle with unwrapped azimuth.
void polar_series(const TrajectoryRecord& record, int vehicle,
                  std::vector<double>& phi, std::vector<double>& r);

/// Orbit-shape statistics from the record's apsis events:
/// a-hat = (r_max + r_min) / 2, e = (r_max - r_min) / (r_max + r_min),
/// latus rectum l = a-hat (1 - e^2), and apsis-to-apsis precession.
OrbitShape orbit_shape(const TrajectoryRecord& record, int vehicle = 0);

/// Time of the first collision event, if any.
std::optional<double> capture_time(const TrajectoryRecord& record);

/// Envelope decay constant tau (azimuth) of |r - r_c| at the apsides, from
/// the log-amplitude slope. Positive tau = decaying eccentricity.
double fit_envelope_decay(const TrajectoryRecord& record, double r_c,
                          int vehicle = 0);

/// Minimum distance between the controlled vehicle and the passive vehicle
/// (relative-frame trajectory vs the origin). When the run ended at their
/// collision, the truncated relative trajectory is extrapolated by a centered
/// conic fit and the conic's closest approach is used as well.
double margin(const TrajectoryRecord& record, int controlled, int passive);

/// One row of the scenario summary table.
struct SummaryRow {
  std::string scenario;
  double r0{0.0}, theta0{0.0}, D{0.0}, ell{0.0};
  double prec_measured{0.0}, prec_perturbative{0.0}, prec_exact{0.0};
  double e{0.0}, a_hat{0.0};
  std::optional<double> capture;
  std::optional<double> b;
};

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

}  // namespace memgrav
