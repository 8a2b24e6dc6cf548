#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "memgrav/analysis.hpp"
#include "memgrav/profiles.hpp"

using namespace memgrav;

namespace {

std::vector<double> model_series(const PrecessionFit& p,
                                 const std::vector<double>& phi) {
  std::vector<double> r(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) r[i] = p.model(phi[i]);
  return r;
}

TrajectoryRecord eccentric_record(double dB, double t_end) {
  const StandinProfile sp = standin_profile("d139");
  VehicleParams vp = VehicleParams::heavy();
  vp.speed = sp.v;
  vp.dB = dB;
  Scenario sc;
  sc.terrain = std::make_shared<AxisymKTerrain>(sp.profile,
                                                mechanical_constant(vp), vp.g);
  VehicleSpec v;
  v.params = vp;
  v.start = PolarState::launch(0.45, M_PI / 2, sp.v, 0.0);
  sc.vehicles = {v};
  sc.t_end = t_end;
  return run(sc);
}

}  // namespace

TEST_CASE("precession fit recovers noiseless model parameters") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    PrecessionFit truth;
    truth.r_c = 0.4 + 0.4 * U(rng);
    truth.A1 = 0.02 * U(rng);
    truth.phi1 = 2.0 * M_PI * U(rng) - M_PI;
    truth.A2 = 0.03 + 0.07 * U(rng);
    truth.phi2 = 2.0 * M_PI * U(rng) - M_PI;
    truth.omega = U(rng) < 0.5 ? 0.80 + 0.17 * U(rng) : 1.03 + 0.17 * U(rng);
    truth.tau = 1.0 / (0.002 + 0.028 * U(rng));

    std::vector<double> phi;
    for (int i = 0; i <= 2500; ++i) phi.push_back(10.0 * M_PI * i / 2500.0);
    const PrecessionFit fit = fit_precession(phi, model_series(truth, phi));

    CHECK(fit.r_c == doctest::Approx(truth.r_c).epsilon(1e-6));
    CHECK(fit.omega == doctest::Approx(truth.omega).epsilon(1e-6));
    CHECK(fit.A2 == doctest::Approx(truth.A2).epsilon(1e-4));
    CHECK(fit.tau == doctest::Approx(truth.tau).epsilon(1e-3));
  }
}

TEST_CASE("a 2 pi-periodic defect term barely shifts the fitted precession") {
  PrecessionFit clean;
  clean.r_c = 0.6;
  clean.A2 = 0.08;
  clean.omega = 1.12;
  clean.tau = 1.0 / 0.01;
  std::vector<double> phi;
  for (int i = 0; i <= 3000; ++i) phi.push_back(12.0 * M_PI * i / 3000.0);

  const PrecessionFit f0 = fit_precession(phi, model_series(clean, phi));
  PrecessionFit beat = clean;
  beat.A1 = 0.03;
  beat.phi1 = 0.9;
  const PrecessionFit f1 = fit_precession(phi, model_series(beat, phi));
  CHECK(std::abs(f1.omega - f0.omega) / f0.omega < 0.01);
}

TEST_CASE("orbit shape statistics from apsis events") {
  TrajectoryRecord rec;
  rec.vehicles.resize(1);
  const double dprec = -0.1;  // per radial cycle
  double phi = 0.0;
  for (int i = 0; i < 8; ++i) {
    const bool apo = i % 2 == 0;
    rec.events.push_back({static_cast<double>(i), apo ? EventKind::apoapsis
                                                      : EventKind::periapsis,
                          0, -1, apo ? 0.8 : 0.4, phi});
    phi += M_PI + 0.5 * dprec;
  }
  const OrbitShape os = orbit_shape(rec);
  CHECK(os.precession_defined);
  CHECK(os.semi_major == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(os.eccentricity == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(os.latus_rectum == doctest::Approx(0.5333).epsilon(1e-3));
  CHECK(os.precession == doctest::Approx(dprec).epsilon(1e-12));
  CHECK(os.precession_sd == doctest::Approx(0.0));
}

TEST_CASE("shape agrees between apsis statistics and the model fit") {
  const TrajectoryRecord rec = eccentric_record(0.0, 120.0);
  const OrbitShape os = orbit_shape(rec);
  REQUIRE(os.precession_defined);

  std::vector<double> phi, r;
  polar_series(rec, 0, phi, r);
  const PrecessionFit fit = fit_precession(phi, r);
  CHECK(std::abs(fit.precession() - os.precession) /
            std::abs(os.precession) <
        0.05);
}

TEST_CASE("a perfect trajectory fits a flat envelope and no defect term") {
  const TrajectoryRecord rec = eccentric_record(0.0, 120.0);
  std::vector<double> phi, r;
  polar_series(rec, 0, phi, r);
  const PrecessionFit fit = fit_precession(phi, r);
  CHECK(std::abs(fit.tau) > 1e3);
  CHECK(std::abs(fit.A1) < 1e-2 * std::abs(fit.A2));
}

TEST_CASE("envelope decay constant matches the imbalance prediction") {
  const TrajectoryRecord rec = eccentric_record(0.006, 150.0);
  const double tau = fit_envelope_decay(rec, 0.60);
  VehicleParams vp = VehicleParams::heavy();
  vp.dB = 0.006;
  const double expected = 2.0 / epsilon(vp);
  CHECK(std::abs(tau - expected) / expected < 0.05);
}

TEST_CASE("capture time is empty without a collision") {
  const TrajectoryRecord rec = eccentric_record(0.0, 10.0);
  CHECK(!capture_time(rec).has_value());
}

TEST_CASE("margin needs enough samples") {
  TrajectoryRecord rec;
  rec.vehicles.resize(2);
  for (int i = 0; i < 3; ++i) {
    rec.vehicles[0].push_back({0.1 * i, 1.0, 0.0, 0, 0, 0, 0, 0});
    rec.vehicles[1].push_back({0.1 * i, 0.0, 0.0, 0, 0, 0, 0, 0});
  }
  CHECK_THROWS(margin(rec, 0, 1));
}
