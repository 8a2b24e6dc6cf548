#include "memgrav/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace memgrav {

std::vector<FieldSample> FlatTerrain::sample(
    const std::vector<Load>& loads) const {
  return std::vector<FieldSample>(loads.size());
}

AxisymKTerrain::AxisymKTerrain(KProfile profile, double C, double g)
    : profile_(std::move(profile)), Cg_(C * g) {
  if (!(Cg_ > 0.0))
    throw std::invalid_argument("terrain: C g must be positive");
}

std::vector<FieldSample> AxisymKTerrain::sample(
    const std::vector<Load>& loads) const {
  std::vector<FieldSample> out(loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i) {
    const double r = loads[i].position.norm();
    const double slope = profile_.k(r) / Cg_;  // |grad z|
    out[i].gradient = slope * loads[i].position / r;
    // z gauge-fixed to 0 at the inner domain edge.
    out[i].height = profile_.K(r) / Cg_;
  }
  return out;
}

double AxisymKTerrain::inner_radius() const { return profile_.r_min(); }
double AxisymKTerrain::outer_radius() const { return profile_.r_max(); }

MembraneTerrain::MembraneTerrain(MembraneModel model) : model_(model) {
  model_.validate();
  if (model_.R0 > 0.0)
    throw std::invalid_argument(
        "terrain: the image-charge solution requires a cap-free membrane");
}

std::vector<FieldSample> MembraneTerrain::sample(
    const std::vector<Load>& loads) const {
  LoadSet set{loads};
  const std::vector<double> z = vehicle_heights(model_, set);
  std::vector<FieldSample> out(loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i) {
    out[i].height = z[i];
    out[i].gradient = height_gradient(model_, set, i);
  }
  return out;
}

void Scenario::validate() const {
  if (!terrain) throw std::invalid_argument("scenario: no terrain");
  if (!(dt > 0.0)) throw std::invalid_argument("scenario: dt must be > 0");
  if (!(t_end > 0.0))
    throw std::invalid_argument("scenario: t_end must be > 0");
  if (record_stride < 1)
    throw std::invalid_argument("scenario: record_stride must be >= 1");
  if (vehicles.empty())
    throw std::invalid_argument("scenario: no vehicles");
  for (const auto& v : vehicles) {
    v.params.validate();
    if (v.controller.enabled) v.controller.feedback.validate();
    const double inner = terrain->inner_radius();
    const double outer = terrain->outer_radius();
    if (inner > 0.0 && v.start.r <= inner + v.params.Rv)
      throw std::invalid_argument("scenario: vehicle starts on the cap");
    if (outer > 0.0 && v.start.r >= outer - v.params.Rv)
      throw std::invalid_argument("scenario: vehicle starts on the rim");
  }
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::apoapsis: return "apoapsis";
    case EventKind::periapsis: return "periapsis";
    case EventKind::collision: return "collision";
    case EventKind::merge: return "merge";
    case EventKind::cap_crash: return "cap_crash";
    case EventKind::boundary_escape: return "boundary_escape";
  }
  return "unknown";
}

namespace {

struct Body {
  VehicleParams params;
  PhysState state;
  double eps{0.0};
  double v_cmd{0.0};
  double gamma_sensed{0.0};
  int group{0};
  bool merged{false};
  // heterogeneity bookkeeping
  double arc_len{0.0};
  std::uint64_t arc_index{0};
  double het_factor{1.0};
  // event bookkeeping
  double phi_cont{0.0};  // unwrapped azimuth
  double prev_r{0.0}, prev_rdot{0.0}, prev_phi{0.0};
  int rdot_sign{0};  // armed sign of rdot (0 until |rdot| clears threshold)
};

constexpr double kRdotArm = 1e-8;  // [m/s] below this, radius counts as flat

std::vector<Load> make_loads(const std::vector<Body>& bodies) {
  std::vector<Load> loads(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    loads[i].position = bodies[i].state.position;
    loads[i].mass = bodies[i].params.mass;
    loads[i].radius = bodies[i].params.Rv;
  }
  return loads;
}

std::vector<Vec2> accelerations(const Terrain& terrain,
                                const std::vector<Body>& bodies,
                                const std::vector<PhysState>& states) {
  std::vector<Load> loads(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    loads[i].position = states[i].position;
    loads[i].mass = bodies[i].params.mass;
    loads[i].radius = bodies[i].params.Rv;
  }
  const std::vector<FieldSample> field = terrain.sample(loads);
  std::vector<Vec2> acc(bodies.size());
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const Vec2 descent = -bodies[i].het_factor * field[i].gradient;
    acc[i] = accel_general(states[i], descent, bodies[i].params,
                           bodies[i].eps);
  }
  // Merged pairs move rigidly: members share the mass-weighted acceleration.
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].group != static_cast<int>(i)) continue;
    double mass = 0.0;
    Vec2 sum = Vec2::Zero();
    int count = 0;
    for (std::size_t j = 0; j < bodies.size(); ++j)
      if (bodies[j].group == bodies[i].group) {
        mass += bodies[j].params.mass;
        sum += bodies[j].params.mass * acc[j];
        ++count;
      }
    if (count > 1)
      for (std::size_t j = 0; j < bodies.size(); ++j)
        if (bodies[j].group == bodies[i].group) acc[j] = sum / mass;
  }
  return acc;
}

void rk4_advance(const Terrain& terrain, std::vector<Body>& bodies,
                 double dt) {
  const std::size_t n = bodies.size();
  std::vector<PhysState> s0(n);
  for (std::size_t i = 0; i < n; ++i) s0[i] = bodies[i].state;

  auto shifted = [&](const std::vector<Vec2>& dp, const std::vector<Vec2>& dv,
                     double h) {
    std::vector<PhysState> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i].position = s0[i].position + h * dp[i];
      s[i].velocity = s0[i].velocity + h * dv[i];
    }
    return s;
  };

  std::vector<Vec2> v1(n), v2(n), v3(n), v4(n);
  for (std::size_t i = 0; i < n; ++i) v1[i] = s0[i].velocity;
  const std::vector<Vec2> a1 = accelerations(terrain, bodies, s0);

  std::vector<PhysState> s = shifted(v1, a1, 0.5 * dt);
  for (std::size_t i = 0; i < n; ++i) v2[i] = s[i].velocity;
  const std::vector<Vec2> a2 = accelerations(terrain, bodies, s);

  s = shifted(v2, a2, 0.5 * dt);
  for (std::size_t i = 0; i < n; ++i) v3[i] = s[i].velocity;
  const std::vector<Vec2> a3 = accelerations(terrain, bodies, s);

  s = shifted(v3, a3, dt);
  for (std::size_t i = 0; i < n; ++i) v4[i] = s[i].velocity;
  const std::vector<Vec2> a4 = accelerations(terrain, bodies, s);

  for (std::size_t i = 0; i < n; ++i) {
    bodies[i].state.position =
        s0[i].position + dt / 6.0 * (v1[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
    bodies[i].state.velocity =
        s0[i].velocity + dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
  }
}

double unwrap_step(double prev, double raw) {
  double d = raw - std::fmod(prev, 2.0 * M_PI);
  while (d > M_PI) d -= 2.0 * M_PI;
  while (d < -M_PI) d += 2.0 * M_PI;
  return prev + d;
}

}  // namespace

TrajectoryRecord run(const Scenario& scenario) {
  scenario.validate();
  const Terrain& terrain = *scenario.terrain;
  MembraneModel het_model = scenario.membrane;
  het_model.heterogeneity_seed ^= scenario.seed;
  const bool heterogeneous = het_model.heterogeneity_amp > 0.0;
  const auto* membrane_terrain =
      dynamic_cast<const MembraneTerrain*>(scenario.terrain.get());

  const std::size_t n = scenario.vehicles.size();
  std::vector<Body> bodies(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VehicleSpec& spec = scenario.vehicles[i];
    bodies[i].params = spec.params;
    bodies[i].state = spec.start.to_cartesian();
    bodies[i].eps = epsilon(spec.params);
    bodies[i].v_cmd = spec.params.speed;
    bodies[i].group = static_cast<int>(i);
    bodies[i].phi_cont = spec.start.phi;
    bodies[i].prev_r = spec.start.r;
    bodies[i].prev_rdot = spec.start.rdot;
    bodies[i].prev_phi = spec.start.phi;
    if (heterogeneous)
      bodies[i].het_factor = heterogeneity_factor(
          het_model, (static_cast<std::uint64_t>(i) << 40));
  }

  TrajectoryRecord rec;
  rec.vehicles.resize(n);

  const double dt = scenario.dt;
  const long n_steps = std::lround(scenario.t_end / dt);
  const double inner = terrain.inner_radius();
  const double outer = terrain.outer_radius();

  std::vector<double> prev_z(n, 0.0);
  bool have_prev_z = false;

  for (long step = 0; step <= n_steps; ++step) {
    const double t = step * dt;

    const std::vector<FieldSample> samples = terrain.sample(make_loads(bodies));

    // Controller sensing + commanded speed for the upcoming step.
    for (std::size_t i = 0; i < n; ++i) {
      const ControllerBinding& ctl = scenario.vehicles[i].controller;
      if (ctl.enabled && !bodies[i].merged) {
        const double gamma_meas =
            tilt_from_accel(synthetic_accel(samples[i].gradient.norm(),
                                            bodies[i].params.g));
        if (ctl.feedback.lag_tau > 0.0 && step > 0) {
          bodies[i].gamma_sensed +=
              dt / ctl.feedback.lag_tau * (gamma_meas - bodies[i].gamma_sensed);
        } else {
          bodies[i].gamma_sensed = gamma_meas;
        }
        bodies[i].v_cmd = commanded_speed(ctl.feedback, bodies[i].gamma_sensed);
      }
    }

    // Record.
    if (step % scenario.record_stride == 0) {
      for (std::size_t i = 0; i < n; ++i) {
        Sample s;
        s.t = t;
        s.x = bodies[i].state.position.x();
        s.y = bodies[i].state.position.y();
        s.vx = bodies[i].state.velocity.x();
        s.vy = bodies[i].state.velocity.y();
        s.z = samples[i].height;
        s.gamma = std::atan(samples[i].gradient.norm());
        s.speed = bodies[i].state.speed();
        rec.vehicles[i].push_back(s);
      }
    }
    rec.t_final = t;

    // Quasi-static validity diagnostic: height change at fixed position from
    // the other vehicles' motion, against the advective scale |v||grad z|.
    if (membrane_terrain && n > 1 && have_prev_z) {
      for (std::size_t i = 0; i < n; ++i) {
        const double dzdt = (samples[i].height - prev_z[i]) / dt;
        const double advect =
            bodies[i].state.speed() * samples[i].gradient.norm();
        const double self = bodies[i].state.velocity.dot(samples[i].gradient);
        const double partial = dzdt - self;  // subtract own advection
        if (advect > 1e-12)
          rec.quasistatic_ratio_max =
              std::max(rec.quasistatic_ratio_max, std::abs(partial) / advect);
      }
    }
    for (std::size_t i = 0; i < n; ++i) prev_z[i] = samples[i].height;
    have_prev_z = true;

    // Terminal boundary events.
    bool terminal = false;
    for (std::size_t i = 0; i < n && !terminal; ++i) {
      const double r = bodies[i].state.radius();
      const double phi = std::atan2(bodies[i].state.position.y(),
                                    bodies[i].state.position.x());
      if (inner > 0.0 && r <= inner + bodies[i].params.Rv) {
        rec.events.push_back(
            {t, EventKind::cap_crash, static_cast<int>(i), -1, r, phi});
        terminal = true;
      } else if (outer > 0.0 && r >= outer - bodies[i].params.Rv) {
        rec.events.push_back(
            {t, EventKind::boundary_escape, static_cast<int>(i), -1, r, phi});
        terminal = true;
      }
    }
    if (terminal) {
      rec.terminated_early = true;
      break;
    }

    // Collisions -> merge.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (bodies[i].group == bodies[j].group) continue;
        const Vec2 rel = bodies[i].state.position - bodies[j].state.position;
        const double touch = bodies[i].params.Rv + bodies[j].params.Rv;
        if (rel.norm() > touch) continue;
        const Vec2 mid =
            0.5 * (bodies[i].state.position + bodies[j].state.position);
        rec.events.push_back({t, EventKind::collision, static_cast<int>(i),
                              static_cast<int>(j), rel.norm(),
                              std::atan2(mid.y(), mid.x())});
        rec.events.push_back({t, EventKind::merge, static_cast<int>(i),
                              static_cast<int>(j), rel.norm(),
                              std::atan2(mid.y(), mid.x())});
        const int g = std::min(bodies[i].group, bodies[j].group);
        const int old = std::max(bodies[i].group, bodies[j].group);
        double mass = 0.0, v_mean = 0.0;
        Vec2 momentum = Vec2::Zero();
        for (auto& b : bodies)
          if (b.group == g || b.group == old) {
            mass += b.params.mass;
            v_mean += b.params.mass * b.v_cmd;
            momentum += b.params.mass * b.state.velocity;
          }
        const Vec2 dir = momentum.normalized();
        const double v_merged = v_mean / mass;
        for (auto& b : bodies)
          if (b.group == g || b.group == old) {
            b.group = g;
            b.merged = true;  // feedback control ends at the merge
            b.v_cmd = v_merged;
            b.state.velocity = v_merged * dir;
          }
      }

    // Apsides from armed sign changes of rdot.
    for (std::size_t i = 0; i < n; ++i) {
      Body& b = bodies[i];
      const double r = b.state.radius();
      const double phi_raw = std::atan2(b.state.position.y(),
                                        b.state.position.x());
      b.phi_cont = step == 0 ? b.phi_cont : unwrap_step(b.phi_cont, phi_raw);
      const double rdot =
          b.state.velocity.dot(b.state.position) / std::max(r, 1e-300);
      if (step > 0) {
        const int sign = rdot > kRdotArm ? 1 : (rdot < -kRdotArm ? -1 : 0);
        if (b.rdot_sign != 0 && sign != 0 && sign != b.rdot_sign) {
          // rdot crossed zero inside the last step: refine by linear root.
          const double s =
              b.prev_rdot / (b.prev_rdot - rdot);  // fraction of dt
          const double t_star = (t - dt) + s * dt;
          const double r_star = b.prev_r + s * dt * b.prev_rdot +
                                0.5 * s * s * dt * (rdot - b.prev_rdot);
          const double phi_star =
              b.prev_phi + s * (b.phi_cont - b.prev_phi);
          rec.events.push_back({t_star,
                                b.rdot_sign > 0 ? EventKind::apoapsis
                                                : EventKind::periapsis,
                                static_cast<int>(i), -1, r_star, phi_star});
        }
        if (sign != 0) b.rdot_sign = sign;
      } else {
        b.rdot_sign = rdot > kRdotArm ? 1 : (rdot < -kRdotArm ? -1 : 0);
      }
      b.prev_r = r;
      b.prev_rdot = rdot;
      b.prev_phi = b.phi_cont;
    }

    if (step == n_steps) break;

    // Heterogeneity: redraw the k multiplier every Rv of arc length.
    if (heterogeneous)
      for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::uint64_t>(
            bodies[i].arc_len / bodies[i].params.Rv);
        if (idx != bodies[i].arc_index || step == 0) {
          bodies[i].arc_index = idx;
          bodies[i].het_factor = heterogeneity_factor(
              het_model, (static_cast<std::uint64_t>(i) << 40) | idx);
        }
      }

    std::vector<Vec2> pos_before(n);
    for (std::size_t i = 0; i < n; ++i)
      pos_before[i] = bodies[i].state.position;

    rk4_advance(terrain, bodies, dt);

    for (std::size_t i = 0; i < n; ++i) {
      bodies[i].arc_len += (bodies[i].state.position - pos_before[i]).norm();
      // Constant-speed constraint: renormalize to the commanded speed.
      const double sp = bodies[i].state.speed();
      if (!(sp > 0.0) || !std::isfinite(sp) ||
          !bodies[i].state.position.allFinite())
        throw std::runtime_error("run: integration diverged at t = " +
                                 std::to_string(t));
      bodies[i].state.velocity *= bodies[i].v_cmd / sp;
    }
  }

  return rec;
}

void TrajectoryRecord::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "vehicle,t,x,y,vx,vy,z,gamma,speed\n";
  out.precision(12);
  for (std::size_t i = 0; i < vehicles.size(); ++i)
    for (const Sample& s : vehicles[i])
      out << i << ',' << s.t << ',' << s.x << ',' << s.y << ',' << s.vx << ','
          << s.vy << ',' << s.z << ',' << s.gamma << ',' << s.speed << '\n';
}

void TrajectoryRecord::write_events_json(const std::string& path) const {
  nlohmann::json j;
  j["terminated_early"] = terminated_early;
  j["t_final"] = t_final;
  j["quasistatic_ratio_max"] = quasistatic_ratio_max;
  j["events"] = nlohmann::json::array();
  for (const Event& e : events) {
    nlohmann::json je;
    je["t"] = e.t;
    je["kind"] = to_string(e.kind);
    je["vehicle"] = e.vehicle;
    if (e.other >= 0) je["other"] = e.other;
    je["r"] = e.r;
    je["phi"] = e.phi;
    j["events"].push_back(je);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << '\n';
}

std::vector<Event> events_of(const TrajectoryRecord& record, EventKind kind,
                             int vehicle) {
  std::vector<Event> out;
  for (const Event& e : record.events)
    if (e.kind == kind && e.vehicle == vehicle) out.push_back(e);
  return out;
}

std::optional<double> first_collision(const TrajectoryRecord& record) {
  for (const Event& e : record.events)
    if (e.kind == EventKind::collision) return e.t;
  return std::nullopt;
}

}  // namespace memgrav
