#include "memgrav/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace memgrav {

namespace {

constexpr double kRMin = 0.1;
constexpr double kRMax = 1.1;

StandinProfile make_power_law(const std::string& name, double v, double r_c,
                              double p) {
  StandinProfile sp;
  sp.name = name;
  sp.v = v;
  sp.r_c = r_c;
  sp.p = p;
  const double k_c = v * v / r_c;
  auto k = [k_c, r_c, p](double r) { return k_c * std::pow(r / r_c, p); };
  auto dk = [k_c, r_c, p](double r) {
    return k_c * p / r_c * std::pow(r / r_c, p - 1.0);
  };
  // K = int_0^r k ds converges for p > -1.
  auto K = [k_c, r_c, p](double r) {
    return k_c * r_c / (p + 1.0) * std::pow(r / r_c, p + 1.0);
  };
  sp.profile = KProfile::from_function(k, dk, kRMin, kRMax, K);
  return sp;
}

}  // namespace

StandinProfile standin_profile(const std::string& name) {
  if (name == "d139") return make_power_law(name, 0.309, 0.60, 0.44);
  if (name == "d96") return make_power_law(name, 0.286, 0.65, 0.55);
  if (name == "d53") return make_power_law(name, 0.295, 0.72, 0.65);
  if (name == "light") return make_power_law(name, 0.200, 0.69, -33.0 / 180.0);
  throw std::invalid_argument("unknown profile: " + name);
}

std::vector<std::string> standin_names() {
  return {"d139", "d96", "d53", "light"};
}

}  // namespace memgrav
