#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "memgrav/controller.hpp"
#include "memgrav/kprofile.hpp"
#include "memgrav/membrane.hpp"
#include "memgrav/types.hpp"
#include "memgrav/vehicle.hpp"

namespace memgrav {

/// Height field seen by the vehicles: per-vehicle height and gradient.
class Terrain {
 public:
  virtual ~Terrain() = default;
  virtual std::vector<FieldSample> sample(const std::vector<Load>& loads) const = 0;
  /// Radial bounds a vehicle must stay within, when the terrain has any.
  virtual double inner_radius() const { return 0.0; }
  virtual double outer_radius() const { return 0.0; }  // 0 = unbounded
};

class FlatTerrain : public Terrain {
 public:
  std::vector<FieldSample> sample(const std::vector<Load>& loads) const override;
};

/// Static axi-symmetric terrain defined by its turning-strength profile:
/// grad z = (k(r) / (C g)) r-hat, so the planar EOM reduces exactly to the
/// a = k sin(theta) law for a vehicle with mechanical constant C.
class AxisymKTerrain : public Terrain {
 public:
  AxisymKTerrain(KProfile profile, double C, double g);
  std::vector<FieldSample> sample(const std::vector<Load>& loads) const override;
  double inner_radius() const override;
  double outer_radius() const override;
  const KProfile& profile() const { return profile_; }

 private:
  KProfile profile_;
  double Cg_;
};

/// Quasi-static elastic membrane deformed by the vehicles themselves
/// (analytic image-charge solution re-evaluated every step).
class MembraneTerrain : public Terrain {
 public:
  explicit MembraneTerrain(MembraneModel model);
  std::vector<FieldSample> sample(const std::vector<Load>& loads) const override;
  double inner_radius() const override { return model_.R0; }
  double outer_radius() const override { return model_.R; }
  const MembraneModel& model() const { return model_; }

 private:
  MembraneModel model_;
};

struct ControllerBinding {
  bool enabled{false};
  TiltFeedback feedback;
};

struct VehicleSpec {
  VehicleParams params;
  PolarState start;  // launch state (r0, theta0, v, phi0)
  ControllerBinding controller;
};

struct Scenario {
  std::shared_ptr<Terrain> terrain;
  MembraneModel membrane;  // heterogeneity fields read even for k-terrains
  std::vector<VehicleSpec> vehicles;
  double dt{1e-3};
  double t_end{30.0};
  std::uint64_t seed{0};
  int record_stride{1};

  void validate() const;
};

enum class EventKind {
  apoapsis,
  periapsis,
  collision,
  merge,
  cap_crash,
  boundary_escape,
};

std::string to_string(EventKind kind);

struct Event {
  double t{0.0};
  EventKind kind{EventKind::apoapsis};
  int vehicle{0};
  int other{-1};   // second vehicle for collision/merge
  double r{0.0};   // refined radius (apsides) or separation (collisions)
  double phi{0.0}; // azimuth at the event
};

struct Sample {
  double t, x, y, vx, vy, z, gamma, speed;
};

struct TrajectoryRecord {
  std::vector<std::vector<Sample>> vehicles;  // one series per vehicle
  std::vector<Event> events;
  bool terminated_early{false};
  double t_final{0.0};
  /// max over steps of |dz_i/dt| / (|v_i| |grad z_i|): quasi-static validity
  /// diagnostic (0 when the terrain is static).
  double quasistatic_ratio_max{0.0};

  void write_csv(const std::string& path) const;
  void write_events_json(const std::string& path) const;
};

TrajectoryRecord run(const Scenario& scenario);

/// Events of one kind for one vehicle, in time order.
std::vector<Event> events_of(const TrajectoryRecord& record, EventKind kind,
                             int vehicle);

/// First collision time, if any.
std::optional<double> first_collision(const TrajectoryRecord& record);

}  // namespace memgrav
