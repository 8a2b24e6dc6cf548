#include "memgrav/spacetime.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "memgrav/numerics.hpp"

namespace memgrav {

namespace {
constexpr double kPi = std::numbers::pi;
}

MetricField::MetricField(KProfile profile, double v, double E)
    : profile_(std::move(profile)), v_(v), E_(E) {
  if (!(v_ > 0.0)) throw std::invalid_argument("metric: v must be positive");
  if (!(E_ > 0.0)) throw std::invalid_argument("metric: E must be positive");
  // Domain guard: alpha^2 > 0 everywhere, i.e. v^2 e^{-K/v^2} < 1.
  const int samples = 1024;
  for (int i = 0; i <= samples; ++i) {
    const double r = profile_.r_min() +
                     (profile_.r_max() - profile_.r_min()) * i / samples;
    if (v_ * v_ * W(r) >= 1.0)
      throw std::invalid_argument(
          "metric: v^2 exp(-K/v^2) >= 1 (superluminal gauge) at r = " +
          std::to_string(r));
  }
}

MetricField build_metric_axisym(KProfile profile, double v, double E) {
  return MetricField(std::move(profile), v, E);
}

double MetricField::W(double r) const {
  return std::exp(-profile_.K(r) / (v_ * v_));
}

double MetricField::alpha2(double r) const {
  return E_ * E_ * (1.0 - v_ * v_ * W(r));
}

double MetricField::phi2(double r) const {
  const double w = W(r);
  return E_ * E_ * w * (1.0 - v_ * v_ * w);
}

double MetricField::dalpha2(double r) const {
  return E_ * E_ * profile_.k(r) * W(r);
}

double MetricField::dphi2(double r) const {
  const double w = W(r);
  return -E_ * E_ * profile_.k(r) / (v_ * v_) * w * (1.0 - 2.0 * v_ * v_ * w);
}

GeneralMetric::GeneralMetric(std::function<double(const Vec2&)> z, double C,
                             double g, double v, double E)
    : z_(std::move(z)), C_(C), g_(g), v_(v), E_(E) {
  if (!(v_ > 0.0)) throw std::invalid_argument("metric: v must be positive");
}

GeneralMetric build_metric_general(std::function<double(const Vec2&)> z,
                                   double C, double g, double v, double E) {
  return GeneralMetric(std::move(z), C, g, v, E);
}

double GeneralMetric::W(const Vec2& p) const {
  return std::exp(-C_ * g_ * z_(p) / (v_ * v_));
}

double GeneralMetric::alpha2(const Vec2& p) const {
  const double w = W(p);
  if (v_ * v_ * w >= 1.0)
    throw std::domain_error("metric: v^2 exp(-Cgz/v^2) >= 1");
  return E_ * E_ * (1.0 - v_ * v_ * w);
}

double GeneralMetric::phi2(const Vec2& p) const {
  const double w = W(p);
  if (v_ * v_ * w >= 1.0)
    throw std::domain_error("metric: v^2 exp(-Cgz/v^2) >= 1");
  return E_ * E_ * w * (1.0 - v_ * v_ * w);
}

GeodesicAccel geodesic_rhs_axisym(const MetricField& metric,
                                  const PolarState& state) {
  if (state.r <= 0.0)
    throw std::domain_error("geodesic_rhs_axisym: r must be positive");
  const double r = state.r;
  const double a2 = metric.alpha2(r), p2 = metric.phi2(r);
  const double da2 = metric.dalpha2(r), dp2 = metric.dphi2(r);
  const double bracket = da2 / a2 - dp2 / p2;
  const double v2 = metric.v() * metric.v();
  GeodesicAccel out;
  out.phidd = -2.0 * state.rdot * state.phidot / r +
              bracket * state.rdot * state.phidot;
  out.rdd = r * state.phidot * state.phidot +
            bracket * state.rdot * state.rdot +
            (dp2 * v2 - da2) / (2.0 * p2);
  return out;
}

OrbitConstants conserved(const MetricField& metric, const PolarState& state) {
  OrbitConstants c;
  c.E = metric.gauge_E();
  c.ell = metric.W(state.r) * state.r * state.r * state.phidot;
  c.L = c.ell * c.E;
  return c;
}

double effective_potential(const MetricField& metric, double ell, double r) {
  if (r <= 0.0)
    throw std::domain_error("effective_potential: r must be positive");
  const double w = metric.W(r);
  const double v2 = metric.v() * metric.v();
  return 0.5 * (ell * ell / (r * r * w) + 1.0 - v2 * w);
}

CircularOrbit circular_radius(const KProfile& profile, double v) {
  const double lo = profile.r_min(), hi = profile.r_max();
  const auto f = [&](double r) { return profile.k(r) * r - v * v; };
  const int scan = 2048;
  std::vector<double> roots;
  double prev_r = lo, prev_f = f(lo);
  for (int i = 1; i <= scan; ++i) {
    const double r = lo + (hi - lo) * i / scan;
    const double fr = f(r);
    if (prev_f == 0.0)
      roots.push_back(prev_r);
    else if (prev_f * fr < 0.0)
      roots.push_back(find_root(f, prev_r, r, 1e-12));
    prev_r = r;
    prev_f = fr;
  }
  if (roots.empty())
    throw std::domain_error("circular_radius: k(r) = v^2/r has no root");
  CircularOrbit c;
  c.r_c = roots.front();
  c.k_c = v * v / c.r_c;
  c.unique = roots.size() == 1;
  return c;
}

double ell_max(const KProfile& profile, double v) {
  const CircularOrbit c = circular_radius(profile, v);
  return v * c.r_c * std::exp(-profile.K(c.r_c) / (v * v));
}

std::pair<double, double> turning_points(const MetricField& metric,
                                         double ell) {
  const KProfile& prof = metric.profile();
  const double v = metric.v();
  const CircularOrbit c = circular_radius(prof, v);
  const double lmax = ell_max(prof, v);
  if (ell > lmax * (1.0 + 1e-12))
    throw std::domain_error("turning_points: ell exceeds ell_max, no bound orbit");
  if (ell >= lmax * (1.0 - 1e-12)) return {c.r_c, c.r_c};
  // r solves ell / (v W(r)) = r; inside the well the lhs is below r.
  const auto g = [&](double r) { return ell / (v * metric.W(r)) - r; };
  if (g(prof.r_min()) < 0.0 || g(prof.r_max()) < 0.0)
    throw std::domain_error("turning_points: turning radius outside profile domain");
  const double r_lo = find_root(g, prof.r_min(), c.r_c, 1e-13);
  const double r_hi = find_root(g, c.r_c, prof.r_max(), 1e-13);
  return {r_lo, r_hi};
}

double precession_perturbative(const KProfile& profile, double v) {
  return precession_perturbative_at(profile, circular_radius(profile, v).r_c);
}

double precession_perturbative_at(const KProfile& profile, double r_c) {
  const double omega2 = 1.0 + r_c * profile.dk(r_c) / profile.k(r_c);
  if (!(omega2 > 0.0))
    throw std::domain_error("precession_perturbative: unstable circular orbit");
  return 2.0 * kPi / std::sqrt(omega2) - 2.0 * kPi;
}

double precession_exact(const MetricField& metric, double ell) {
  const auto [r_lo, r_hi] = turning_points(metric, ell);
  if (r_hi - r_lo < 1e-12)
    return precession_perturbative(metric.profile(), metric.v());
  const double v = metric.v();
  const double c = 0.5 * (r_hi + r_lo), d = 0.5 * (r_hi - r_lo);
  // r = c - d cos(psi) removes the inverse-sqrt endpoint singularities of
  // the orbit quadrature dphi = dr / (r sqrt(v^2 r^2 W^2 / ell^2 - 1)).
  const auto integrand = [&](double psi) {
    const double r = c - d * std::cos(psi);
    const double q = v * r * metric.W(r) / ell;
    const double F = std::max(q * q - 1.0, 0.0);
    if (F == 0.0) return 0.0;  // only at roundoff-level endpoint grazing
    return d * std::sin(psi) / (r * std::sqrt(F));
  };
  double total = 2.0 * integrate_gauss(integrand, 0.0, kPi, 64);
  for (int n = 128; n <= 1024; n *= 2) {
    const double refined = 2.0 * integrate_gauss(integrand, 0.0, kPi, n);
    const bool converged = std::abs(refined - total) < 1e-10;
    total = refined;
    if (converged) break;
  }
  return total - 2.0 * kPi;
}

double SchwarzschildDesign::alpha2_iso(double mass, double r) {
  const double f = 1.0 - 0.5 * mass / r, h = 1.0 + 0.5 * mass / r;
  return f * f / (h * h);
}

double SchwarzschildDesign::phi2_iso(double mass, double r) {
  const double h = 1.0 + 0.5 * mass / r;
  return h * h * h * h;
}

namespace {

// k(r, v) from the radial matching condition ((Phi^2)' v^2 - (alpha^2)') /
// (2 Phi^2) = -k with the isotropic Schwarzschild metric inserted.
double design_k(double mass, double r, double v) {
  const double f = 1.0 - 0.5 * mass / r, h = 1.0 + 0.5 * mass / r;
  const double h2 = h * h;
  return mass * f / (r * r * h2 * h2 * h2 * h) + mass * v * v / (r * r * h);
}

double design_dv(double mass, double r, double v) {
  const double f = 1.0 - 0.5 * mass / r, h = 1.0 + 0.5 * mass / r;
  const double S = 2.0 * mass * (1.0 + f) / (r * r * h * f);
  return v * (S - design_k(mass, r, v) / (v * v));
}

}  // namespace

SchwarzschildDesign::SchwarzschildDesign(double M, double r_lo, double r_hi,
                                         double v_lo, int grid_n)
    : M_(M), r_lo_(r_lo), r_hi_(r_hi) {
  if (!(r_lo > 0.5 * M))
    throw std::domain_error("schwarzschild_design: need r > M/2");
  if (!(r_hi > r_lo)) throw std::invalid_argument("schwarzschild_design: range");
  const int n = grid_n;
  std::vector<double> r(n + 1), vv(n + 1), dv(n + 1);
  const double h = (r_hi - r_lo) / n;
  double v = v_lo;
  for (int i = 0; i <= n; ++i) {
    const double ri = r_lo + i * h;
    r[i] = ri;
    vv[i] = v;
    dv[i] = design_dv(M, ri, v);
    if (!(v > 0.0) ||
        alpha2_iso(M, ri) <= phi2_iso(M, ri) * v * v)
      throw std::domain_error(
          "schwarzschild_design: infeasible profile at r = " +
          std::to_string(ri));
    if (i < n) {
      const double k1 = design_dv(M, ri, v);
      const double k2 = design_dv(M, ri + 0.5 * h, v + 0.5 * h * k1);
      const double k3 = design_dv(M, ri + 0.5 * h, v + 0.5 * h * k2);
      const double k4 = design_dv(M, ri + h, v + h * k3);
      v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  v_spline_ = std::make_shared<MonotoneCubic>(std::move(r), std::move(vv),
                                              std::move(dv));
}

double SchwarzschildDesign::v(double r) const {
  if (r < r_lo_ - 1e-9 || r > r_hi_ + 1e-9)
    throw std::domain_error("schwarzschild_design: r outside designed range");
  return v_spline_->value(r);
}

double SchwarzschildDesign::dv(double r) const {
  return design_dv(M_, r, v(r));
}

double SchwarzschildDesign::k(double r) const {
  return design_k(M_, r, v(r));
}

void SchwarzschildDesign::write_csv(const std::string& path,
                                    int samples) const {
  std::ofstream out(path);
  out << "r_m,v_mps,k_mps2\n";
  out.precision(12);
  for (int i = 0; i <= samples; ++i) {
    const double r = r_lo_ + (r_hi_ - r_lo_) * i / samples;
    out << r << ',' << v(r) << ',' << k(r) << '\n';
  }
}

GeodesicAccel radial_speed_rhs(const SchwarzschildDesign& design,
                               const PolarState& state) {
  const double r = state.r;
  const double v = design.v(r);
  const double S = design.dv(r) / v + design.k(r) / (v * v);
  GeodesicAccel out;
  out.phidd = -2.0 * state.rdot * state.phidot / r +
              S * state.rdot * state.phidot;
  out.rdd = r * state.phidot * state.phidot + S * state.rdot * state.rdot -
            design.k(r);
  return out;
}

namespace {

template <typename Rhs>
PolarState rk4_polar(const Rhs& rhs, const PolarState& y, double dt) {
  auto add = [](const PolarState& s, double h, const std::array<double, 4>& d) {
    return PolarState{s.r + h * d[0], s.phi + h * d[1], s.rdot + h * d[2],
                      s.phidot + h * d[3]};
  };
  auto deriv = [&](const PolarState& s) {
    const GeodesicAccel a = rhs(s);
    return std::array<double, 4>{s.rdot, s.phidot, a.rdd, a.phidd};
  };
  const auto k1 = deriv(y);
  const auto k2 = deriv(add(y, 0.5 * dt, k1));
  const auto k3 = deriv(add(y, 0.5 * dt, k2));
  const auto k4 = deriv(add(y, dt, k3));
  PolarState out = y;
  out.r += dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
  out.phi += dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
  out.rdot += dt / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
  out.phidot += dt / 6.0 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3]);
  return out;
}

}  // namespace

PolarState advance_geodesic(const MetricField& metric, const PolarState& state,
                            double dt) {
  return rk4_polar(
      [&](const PolarState& s) { return geodesic_rhs_axisym(metric, s); },
      state, dt);
}

PolarState advance_design(const SchwarzschildDesign& design,
                          const PolarState& state, double dt) {
  return rk4_polar(
      [&](const PolarState& s) { return radial_speed_rhs(design, s); }, state,
      dt);
}

}  // namespace memgrav
