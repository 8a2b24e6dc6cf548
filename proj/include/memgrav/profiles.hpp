#pragma once

#include <string>
#include <vector>

#include "memgrav/kprofile.hpp"

namespace memgrav {

/// Built-in synthetic k(r) profiles: power laws k = k_c (r/r_c)^p on
/// [0.1, 1.1] m calibrated so that a vehicle at speed v orbits circularly
/// at r_c (k_c = v^2 / r_c). "d139"/"d96"/"d53" are retrograde-precession
/// heavy-vehicle profiles; "light" gives prograde precession.
struct StandinProfile {
  std::string name;
  double v{0.0};    // design speed [m/s]
  double r_c{0.0};  // circular radius at design speed [m]
  double p{0.0};    // power-law exponent
  KProfile profile;
};

StandinProfile standin_profile(const std::string& name);
std::vector<std::string> standin_names();

}  // namespace memgrav
