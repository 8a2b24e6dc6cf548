#include "memgrav/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "memgrav/numerics.hpp"

namespace memgrav {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PrecessionFit::precession() const { return 2.0 * kPi / omega - 2.0 * kPi; }

double PrecessionFit::model(double phi) const {
  const double env = tau > 0.0 ? std::exp(-phi / tau) : 1.0;
  return r_c + env * (A1 * std::cos(phi + phi1) + A2 * std::cos(omega * phi + phi2));
}

namespace {

/// Given (omega, q), the model is linear in (r_c, B1..B4) with
/// r = r_c + e^{-q phi}(B1 cos phi + B2 sin phi + B3 cos w phi + B4 sin w phi);
/// solve that subproblem exactly and return the squared residual.
struct LinearSolve {
  Eigen::Matrix<double, 5, 1> coef;
  double residual;
};

LinearSolve solve_linear(const std::vector<double>& phi,
                         const std::vector<double>& r, double omega, double q) {
  const Eigen::Index n = static_cast<Eigen::Index>(phi.size());
  Eigen::MatrixXd A(n, 5);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = phi[i];
    const double env = std::exp(-q * p);
    A(i, 0) = 1.0;
    A(i, 1) = env * std::cos(p);
    A(i, 2) = env * std::sin(p);
    A(i, 3) = env * std::cos(omega * p);
    A(i, 4) = env * std::sin(omega * p);
    b(i) = r[i];
  }
  LinearSolve out;
  out.coef = A.colPivHouseholderQr().solve(b);
  out.residual = (A * out.coef - b).squaredNorm();
  return out;
}

}  // namespace

PrecessionFit fit_precession(const std::vector<double>& phi_in,
                             const std::vector<double>& r_in, int starts) {
  if (phi_in.size() != r_in.size() || phi_in.size() < 16)
    throw std::invalid_argument("fit_precession: need matched series");
  const double span = phi_in.back() - phi_in.front();
  if (span < 4.0 * kPi)
    throw std::invalid_argument("fit_precession: need >= 2 radial cycles");

  // Stride the series down to a manageable fit size.
  std::vector<double> phi, r;
  const std::size_t stride = std::max<std::size_t>(1, phi_in.size() / 4000);
  for (std::size_t i = 0; i < phi_in.size(); i += stride) {
    phi.push_back(phi_in[i]);
    r.push_back(r_in[i]);
  }

  const auto objective = [&](const std::vector<double>& x) {
    const double omega = x[0], q = x[1];
    if (omega < 0.3 || omega > 3.0) return 1e30 * (1.0 + std::abs(omega));
    if (q < 0.0) return 1e30 * (1.0 - q);
    return solve_linear(phi, r, omega, q).residual;
  };

  bool any_converged = false;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  for (int s = 0; s < starts; ++s) {
    const double omega0 =
        starts == 1 ? 1.0 : 0.7 + 0.6 * s / (starts - 1.0);
    for (const double q0 : {0.0, 0.02}) {
      const SimplexResult res =
          nelder_mead(objective, {omega0, q0}, {0.03, 0.01}, 1e-15, 4000);
      if (res.converged) any_converged = true;
      if (res.fval < best) {
        best = res.fval;
        best_x = res.x;
      }
    }
  }
  // a residual that is negligible against the data variance is a success
  // even when the simplex spread test never fired (exact-fit limit)
  double mean = 0.0, ss = 0.0;
  for (const double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  for (const double v : r) ss += (v - mean) * (v - mean);
  if (best_x.empty() || (!any_converged && best > 1e-12 * ss))
    throw std::runtime_error(
        "fit_precession: no start converged (best residual " +
        std::to_string(best) + ")");

  const double omega = best_x[0], q = std::max(best_x[1], 0.0);
  const LinearSolve lin = solve_linear(phi, r, omega, q);
  PrecessionFit fit;
  fit.omega = omega;
  fit.tau = q > 1e-9 ? 1.0 / q : 1e12;
  fit.r_c = lin.coef(0);
  fit.A1 = std::hypot(lin.coef(1), lin.coef(2));
  fit.phi1 = std::atan2(-lin.coef(2), lin.coef(1));
  fit.A2 = std::hypot(lin.coef(3), lin.coef(4));
  fit.phi2 = std::atan2(-lin.coef(4), lin.coef(3));
  fit.residual = lin.residual;
  return fit;
}

void polar_series(const TrajectoryRecord& record, int vehicle,
                  std::vector<double>& phi, std::vector<double>& r) {
  const auto& series = record.vehicles.at(vehicle);
  phi.clear();
  r.clear();
  phi.reserve(series.size());
  r.reserve(series.size());
  double prev = std::atan2(series.front().y, series.front().x);
  double cont = prev;
  for (const Sample& s : series) {
    const double raw = std::atan2(s.y, s.x);
    double d = raw - prev;
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    cont += d;
    prev = raw;
    phi.push_back(cont);
    r.push_back(std::hypot(s.x, s.y));
  }
}

namespace {

void precession_deltas(const std::vector<Event>& apsides,
                       std::vector<double>& deltas) {
  for (std::size_t i = 1; i < apsides.size(); ++i) {
    const double d = apsides[i].phi - apsides[i - 1].phi;
    deltas.push_back(d >= 0.0 ? d - 2.0 * kPi : d + 2.0 * kPi);
  }
}

}  // namespace

OrbitShape orbit_shape(const TrajectoryRecord& record, int vehicle) {
  const std::vector<Event> apo = events_of(record, EventKind::apoapsis, vehicle);
  const std::vector<Event> peri =
      events_of(record, EventKind::periapsis, vehicle);
  OrbitShape shape;
  if (apo.empty() && peri.empty()) {
    double sum = 0.0;
    for (const Sample& s : record.vehicles.at(vehicle))
      sum += std::hypot(s.x, s.y);
    const double r = sum / record.vehicles.at(vehicle).size();
    shape.r_min = shape.r_max = shape.semi_major = shape.latus_rectum = r;
    shape.eccentricity = 0.0;
    shape.precession_defined = false;
    return shape;
  }
  auto mean_r = [](const std::vector<Event>& ev) {
    double s = 0.0;
    for (const Event& e : ev) s += e.r;
    return s / ev.size();
  };
  double r_max = 0.0, r_min = 0.0;
  if (!apo.empty())
    r_max = mean_r(apo);
  if (!peri.empty())
    r_min = mean_r(peri);
  if (apo.empty() || peri.empty()) {
    // Only one apsis kind seen: bound the other side by the sampled extremes.
    double lo = 1e300, hi = 0.0;
    for (const Sample& s : record.vehicles.at(vehicle)) {
      const double r = std::hypot(s.x, s.y);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (apo.empty()) r_max = hi;
    if (peri.empty()) r_min = lo;
  }
  shape.r_min = r_min;
  shape.r_max = r_max;
  shape.semi_major = 0.5 * (r_max + r_min);
  shape.eccentricity = (r_max - r_min) / (r_max + r_min);
  shape.latus_rectum =
      shape.semi_major * (1.0 - shape.eccentricity * shape.eccentricity);

  std::vector<double> deltas;
  precession_deltas(apo, deltas);
  precession_deltas(peri, deltas);
  if (deltas.empty()) {
    shape.precession_defined = false;
    return shape;
  }
  double mean = 0.0;
  for (double d : deltas) mean += d;
  mean /= deltas.size();
  double var = 0.0;
  for (double d : deltas) var += (d - mean) * (d - mean);
  shape.precession = mean;
  shape.precession_sd =
      deltas.size() > 1 ? std::sqrt(var / (deltas.size() - 1)) : 0.0;
  shape.precession_defined = true;
  return shape;
}

std::optional<double> capture_time(const TrajectoryRecord& record) {
  return first_collision(record);
}

double fit_envelope_decay(const TrajectoryRecord& record, double r_c,
                          int vehicle) {
  std::vector<Event> apsides = events_of(record, EventKind::apoapsis, vehicle);
  const std::vector<Event> peri =
      events_of(record, EventKind::periapsis, vehicle);
  apsides.insert(apsides.end(), peri.begin(), peri.end());
  std::sort(apsides.begin(), apsides.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });
  std::vector<double> phi, log_amp;
  for (const Event& e : apsides) {
    const double amp = std::abs(e.r - r_c);
    if (amp > 1e-12) {
      phi.push_back(e.phi);
      log_amp.push_back(std::log(amp));
    }
  }
  if (phi.size() < 2)
    throw std::invalid_argument("fit_envelope_decay: need >= 2 apsides");
  return -1.0 / linear_fit_slope(phi, log_amp);
}

double margin(const TrajectoryRecord& record, int controlled, int passive) {
  const auto& a = record.vehicles.at(controlled);
  const auto& b = record.vehicles.at(passive);
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 5) throw std::invalid_argument("margin: insufficient data");

  double b_min = std::numeric_limits<double>::infinity();
  std::vector<Vec2> rel(n);
  for (std::size_t i = 0; i < n; ++i) {
    rel[i] = Vec2(a[i].x - b[i].x, a[i].y - b[i].y);
    b_min = std::min(b_min, rel[i].norm());
  }

  bool pair_collided = false;
  for (const Event& e : record.events)
    if (e.kind == EventKind::collision &&
        ((e.vehicle == controlled && e.other == passive) ||
         (e.vehicle == passive && e.other == controlled)))
      pair_collided = true;
  if (pair_collided) {
    // Extrapolate the truncated relative trajectory by a centered conic
    // a x^2 + b xy + c y^2 = 1; its closest approach is 1/sqrt(lambda_max).
    Eigen::MatrixXd M(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
      M(i, 0) = rel[i].x() * rel[i].x();
      M(i, 1) = rel[i].x() * rel[i].y();
      M(i, 2) = rel[i].y() * rel[i].y();
    }
    const Eigen::Vector3d c =
        M.colPivHouseholderQr().solve(Eigen::VectorXd::Ones(n));
    Eigen::Matrix2d Q;
    Q << c(0), 0.5 * c(1), 0.5 * c(1), c(2);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Q);
    const double lmax = es.eigenvalues().maxCoeff();
    if (lmax > 0.0) b_min = std::min(b_min, 1.0 / std::sqrt(lmax));
  }
  return b_min;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "scenario,r0_m,theta0_rad,D_m,ell_m,prec_measured_rad,"
         "prec_perturbative_rad,prec_exact_rad,e,a_hat_m,capture_s,b_m\n";
  out.precision(10);
  for (const SummaryRow& row : rows) {
    out << row.scenario << ',' << row.r0 << ',' << row.theta0 << ',' << row.D
        << ',' << row.ell << ',' << row.prec_measured << ','
        << row.prec_perturbative << ',' << row.prec_exact << ',' << row.e
        << ',' << row.a_hat << ',';
    if (row.capture) out << *row.capture;
    out << ',';
    if (row.b) out << *row.b;
    out << '\n';
  }
}

}  // namespace memgrav
