#include "memgrav/membrane.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

namespace memgrav {

namespace {
constexpr double kPi = std::numbers::pi;
// Below this radius a load is treated with the G(r, 0) center form.
constexpr double kCenterEps = 1e-6;
}  // namespace

void MembraneModel::validate() const {
  if (!(R > 0.0)) throw std::invalid_argument("membrane: R must be positive");
  if (!(R0 >= 0.0 && R0 < R))
    throw std::invalid_argument("membrane: need 0 <= R0 < R");
  if (!(D >= 0.0)) throw std::invalid_argument("membrane: D must be >= 0");
  if (!(lambda > 0.0))
    throw std::invalid_argument("membrane: lambda must be positive");
  if (!(sigma > 0.0))
    throw std::invalid_argument("membrane: sigma must be positive");
  if (!(heterogeneity_amp >= 0.0 && heterogeneity_amp < 1.0))
    throw std::invalid_argument("membrane: heterogeneity amplitude in [0,1)");
}

void LoadSet::validate(const MembraneModel& model) const {
  for (const Load& l : loads) {
    if (!(l.mass > 0.0)) throw std::invalid_argument("load: mass must be > 0");
    if (!(l.radius > 0.0))
      throw std::invalid_argument("load: radius must be > 0");
    if (!(l.position.norm() < model.R))
      throw std::invalid_argument("load: position outside the disk");
  }
}

double free_profile(const MembraneModel& model, double r) {
  if (r < model.R0 || r > model.R)
    throw std::domain_error("free_profile: r outside [R0, R]");
  const double q = 1.0 / (4.0 * model.lambda);
  if (model.R0 <= 0.0)  // cap-free bowl: regular at the origin
    return q * (r * r - model.R * model.R);
  const double c1 = (model.D - q * (model.R * model.R - model.R0 * model.R0)) /
                    std::log(model.R / model.R0);
  const double c2 = -q * model.R * model.R - c1 * std::log(model.R);
  return q * r * r + c1 * std::log(r) + c2;
}

double free_profile_slope(const MembraneModel& model, double r) {
  if (r < model.R0 || r > model.R)
    throw std::domain_error("free_profile_slope: r outside [R0, R]");
  const double q = 1.0 / (4.0 * model.lambda);
  if (model.R0 <= 0.0) return 2.0 * q * r;
  const double c1 = (model.D - q * (model.R * model.R - model.R0 * model.R0)) /
                    std::log(model.R / model.R0);
  return 2.0 * q * r + c1 / r;
}

namespace {

// Pair term of the rim-averaged solution: the Green-function contribution of
// load j evaluated at position p, without the 1/(2 pi) factor.
double green_term(const Vec2& p, const Vec2& rj, double R) {
  const double dj = rj.norm();
  if (dj < kCenterEps) return std::log(p.norm() / R);  // G(r, 0) limit
  const Vec2 image = (R * R / (dj * dj)) * rj;
  return std::log((p - rj).norm() / (p - image).norm()) - std::log(dj / R);
}

Vec2 green_term_grad(const Vec2& p, const Vec2& rj, double R) {
  const double dj = rj.norm();
  if (dj < kCenterEps) return p / p.squaredNorm();
  const Vec2 image = (R * R / (dj * dj)) * rj;
  const Vec2 a = p - rj, b = p - image;
  return a / a.squaredNorm() - b / b.squaredNorm();
}

// Free-space solution of one uniform disk load (C^1 across the disk edge);
// subtracted before the FD solve so the grid only carries a smooth field.
double disk_potential(const MembraneModel& model, const Load& l,
                      const Vec2& p) {
  const double d = (p - l.position).norm();
  const double scale = l.mass / (2.0 * kPi * model.sigma * model.lambda);
  if (d >= l.radius) return scale * std::log(d / l.radius);
  return scale * (d * d - l.radius * l.radius) /
         (2.0 * l.radius * l.radius);
}

}  // namespace

std::vector<double> vehicle_heights(const MembraneModel& model,
                                    const LoadSet& loads) {
  if (model.R0 > 0.0)
    throw std::domain_error("vehicle_heights: closed form assumes no cap");
  loads.validate(model);
  const double R2 = model.R * model.R;
  std::vector<double> z(loads.loads.size());
  for (std::size_t i = 0; i < loads.loads.size(); ++i) {
    const Load& li = loads.loads[i];
    const double ri2 = li.position.squaredNorm();
    double acc = 0.5 * kPi * (ri2 - R2);
    acc += li.mass / model.sigma *
           std::log(li.radius * model.R / (R2 - ri2));
    for (std::size_t j = 0; j < loads.loads.size(); ++j) {
      if (j == i) continue;
      acc += loads.loads[j].mass / model.sigma *
             green_term(li.position, loads.loads[j].position, model.R);
    }
    z[i] = acc / (2.0 * kPi * model.lambda);
  }
  return z;
}

Vec2 height_gradient(const MembraneModel& model, const LoadSet& loads,
                     std::size_t i) {
  if (model.R0 > 0.0)
    throw std::domain_error("height_gradient: closed form assumes no cap");
  loads.validate(model);
  const Load& li = loads.loads.at(i);
  const double R2 = model.R * model.R;
  const double ri2 = li.position.squaredNorm();
  // Disk self-weight term.
  Vec2 grad = kPi * li.position;
  // Self-load term: the vehicle's weight reflected by the rim enters through
  // log(Rv R / (R^2 - |r_i|^2)); its own log Rv offset is position-free, so
  // the gradient is independent of Rv.
  grad += li.mass / model.sigma * (2.0 / (R2 - ri2)) * li.position;
  for (std::size_t j = 0; j < loads.loads.size(); ++j) {
    if (j == i) continue;
    grad += loads.loads[j].mass / model.sigma *
            green_term_grad(li.position, loads.loads[j].position, model.R);
  }
  return grad / (2.0 * kPi * model.lambda);
}

double field_height(const MembraneModel& model, const LoadSet& loads,
                    const Vec2& p) {
  if (model.R0 > 0.0)
    throw std::domain_error("field_height: closed form assumes no cap");
  const double R2 = model.R * model.R;
  double acc = 0.5 * kPi * (p.squaredNorm() - R2);
  for (const Load& l : loads.loads)
    acc += l.mass / model.sigma * green_term(p, l.position, model.R);
  return acc / (2.0 * kPi * model.lambda);
}

double heterogeneity_factor(const MembraneModel& model,
                            std::uint64_t arc_index) {
  if (model.heterogeneity_amp == 0.0) return 1.0;
  std::seed_seq seq{model.heterogeneity_seed, arc_index + 1};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(1.0 - model.heterogeneity_amp,
                                           1.0 + model.heterogeneity_amp);
  return u(rng);
}

FdField::FdField(const MembraneModel& model, int grid_n,
                 std::vector<double> remainder, LoadSet loads)
    : model_(model),
      n_(grid_n),
      h_(2.0 * model.R / grid_n),
      w_(std::move(remainder)),
      loads_(std::move(loads)) {}

double FdField::value(const Vec2& p) const {
  const double gx = (p.x() + model_.R) / h_;
  const double gy = (p.y() + model_.R) / h_;
  const int ix = std::clamp(static_cast<int>(std::floor(gx)), 0, n_ - 1);
  const int iy = std::clamp(static_cast<int>(std::floor(gy)), 0, n_ - 1);
  const double fx = gx - ix, fy = gy - iy;
  const auto at = [&](int i, int j) { return w_[j * (n_ + 1) + i]; };
  double z = (1 - fx) * (1 - fy) * at(ix, iy) + fx * (1 - fy) * at(ix + 1, iy) +
             (1 - fx) * fy * at(ix, iy + 1) + fx * fy * at(ix + 1, iy + 1);
  for (const Load& l : loads_.loads) z += disk_potential(model_, l, p);
  return z;
}

double FdField::rim_average(const Vec2& center, double radius,
                            int samples) const {
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double a = 2.0 * kPi * (s + 0.5) / samples;
    sum += value(center + radius * Vec2(std::cos(a), std::sin(a)));
  }
  return sum / samples;
}

void FdField::write_csv(const std::string& path) const {
  std::ofstream out(path);
  out << "x,y,z\n";
  for (int j = 0; j <= n_; ++j)
    for (int i = 0; i <= n_; ++i) {
      const Vec2 p(-model_.R + i * h_, -model_.R + j * h_);
      double z = w_[j * (n_ + 1) + i];
      for (const Load& l : loads_.loads) z += disk_potential(model_, l, p);
      out << p.x() << ',' << p.y() << ',' << z << '\n';
    }
}

FdField solve_fd(const MembraneModel& model, const LoadSet& loads,
                 int grid_n) {
  if (grid_n < 64) throw std::invalid_argument("solve_fd: grid_n >= 64");
  model.validate();
  loads.validate(model);

  const int n = grid_n;
  const double h = 2.0 * model.R / n;
  const int nodes = (n + 1) * (n + 1);

  // Unknowns: nodes strictly inside the disk and outside the cap.
  std::vector<int> index(nodes, -1);
  std::vector<double> fixed(nodes, 0.0);
  int unknowns = 0;
  const auto pos = [&](int i, int j) {
    return Vec2(-model.R + i * h, -model.R + j * h);
  };
  // The unknown is the remainder w = Z - sum_j psi_j with psi_j each load's
  // free-space disk solution; w is smooth, so the 5-point stencil converges
  // at full second order and the loads never touch the grid resolution.
  const auto psi_sum = [&](const Vec2& p) {
    double s = 0.0;
    for (const Load& l : loads.loads) s += disk_potential(model, l, p);
    return s;
  };

  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const Vec2 p = pos(i, j);
      const double r = p.norm();
      const int id = j * (n + 1) + i;
      if (r >= model.R) {
        fixed[id] = -psi_sum(p);  // Z clamped to zero on and past the rim
      } else if (model.R0 > 0.0 && r <= model.R0) {
        fixed[id] = -model.D - psi_sum(p);
      } else if (i == 0 || j == 0 || i == n || j == n) {
        fixed[id] = -psi_sum(p);
      } else {
        index[id] = unknowns++;
      }
    }
  }

  const auto source = [&](const Vec2&) { return 1.0 / model.lambda; };

  // Fraction of the arm from p toward q at which the circle of radius `rad`
  // is crossed (Shortley-Weller cut cell), in (0, 1].
  const auto cut = [](const Vec2& p, const Vec2& q, double rad) {
    const Vec2 d = q - p;
    const double a = d.squaredNorm(), b = 2.0 * p.dot(d),
                 c = p.squaredNorm() - rad * rad;
    const double disc = std::sqrt(std::max(b * b - 4.0 * a * c, 0.0));
    const double t1 = (-b + disc) / (2.0 * a), t2 = (-b - disc) / (2.0 * a);
    double t = 1.0;
    if (t1 > 1e-12 && t1 <= 1.0) t = t1;
    if (t2 > 1e-12 && t2 <= 1.0) t = std::min(t, t2);
    return t;
  };

  using Trip = Eigen::Triplet<double>;
  std::vector<Trip> trips;
  trips.reserve(5 * unknowns);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  for (int j = 1; j < n; ++j) {
    for (int i = 1; i < n; ++i) {
      const int id = j * (n + 1) + i;
      const int row = index[id];
      if (row < 0) continue;
      const Vec2 p = pos(i, j);
      rhs[row] = -source(p);
      // Shortley-Weller arms: where a neighbor lies beyond the rim (or inside
      // the cap) the arm is shortened to the circle and the boundary value is
      // applied there; second order at the curved boundary.
      double theta[4], bval[4];
      bool interior[4];
      for (int d = 0; d < 4; ++d) {
        const Vec2 q = pos(i + di[d], j + dj[d]);
        theta[d] = 1.0;
        bval[d] = 0.0;
        interior[d] = index[(j + dj[d]) * (n + 1) + (i + di[d])] >= 0;
        if (!interior[d]) {
          if (q.norm() >= model.R) {
            theta[d] = cut(p, q, model.R);
            bval[d] = -psi_sum(p + theta[d] * (q - p));
          } else if (model.R0 > 0.0 && q.norm() <= model.R0) {
            theta[d] = cut(p, q, model.R0);
            bval[d] = -model.D - psi_sum(p + theta[d] * (q - p));
          } else {
            bval[d] = fixed[(j + dj[d]) * (n + 1) + (i + di[d])];
          }
        }
      }
      double diag = 0.0;
      for (int axis = 0; axis < 2; ++axis) {
        const int dp = axis == 0 ? 0 : 2, dm = axis == 0 ? 1 : 3;
        const double tp = theta[dp], tm = theta[dm];
        const double cp = 2.0 / (h * h * tp * (tp + tm));
        const double cm = 2.0 / (h * h * tm * (tp + tm));
        diag += cp + cm;
        if (interior[dp])
          trips.emplace_back(row, index[(j + dj[dp]) * (n + 1) + (i + di[dp])], -cp);
        else
          rhs[row] += cp * bval[dp];
        if (interior[dm])
          trips.emplace_back(row, index[(j + dj[dm]) * (n + 1) + (i + di[dm])], -cm);
        else
          rhs[row] += cm * bval[dm];
      }
      trips.emplace_back(row, row, diag);
    }
  }

  Eigen::SparseMatrix<double> A(unknowns, unknowns);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>>
      solver;
  solver.setTolerance(1e-12);
  solver.setMaxIterations(20000);
  solver.compute(A);
  const Eigen::VectorXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("solve_fd: linear solve failed, residual " +
                             std::to_string(solver.error()));

  std::vector<double> w(nodes);
  for (int id = 0; id < nodes; ++id)
    w[id] = index[id] >= 0 ? x[index[id]] : fixed[id];
  return FdField(model, n, std::move(w), loads);
}

}  // namespace memgrav
