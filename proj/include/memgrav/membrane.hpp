#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memgrav/types.hpp"

namespace memgrav {

/// Elastic disk membrane obeying the quasi-static Poisson law
/// lap(Z) = (1/lambda) * (1 + P~), zero height on the rim, with an optional
/// central cap held at depth -D.
struct MembraneModel {
  double R{1.2};                 // disk radius [m]
  double R0{0.0};                // central cap radius [m], 0 when absent
  double D{0.0};                 // central depression depth [m]
  double lambda{6.5};            // membrane constant [m]
  double sigma{0.137};           // areal density [kg/m^2]
  double heterogeneity_amp{0.0}; // fluctuation amplitude, in [0, 1)
  std::uint64_t heterogeneity_seed{0};

  void validate() const;  // throws std::invalid_argument on bad fields
};

/// One vehicle-like load: a uniform disk of the given mass and radius.
struct Load {
  Vec2 position{Vec2::Zero()};
  double mass{0.0};
  double radius{0.05};
};

struct LoadSet {
  std::vector<Load> loads;

  void validate(const MembraneModel& model) const;
};

struct FieldSample {
  double height{0.0};
  Vec2 gradient{Vec2::Zero()};
};

/// Height of the load-free membrane with a central cap, from the radial
/// Poisson solution r^2/(4 lambda) + C1 log r + C2 pinned by Z(R) = 0 and
/// Z(R0) = -D. Requires R0 <= r <= R.
double free_profile(const MembraneModel& model, double r);

/// Radial derivative dZ/dr of free_profile.
double free_profile_slope(const MembraneModel& model, double r);

/// Rim-averaged height z_i of every load, from the disk Green function with
/// image charges. Requires a cap-free membrane (R0 = 0).
std::vector<double> vehicle_heights(const MembraneModel& model,
                                    const LoadSet& loads);

/// Gradient of z_i with respect to the position of load i (closed form).
/// terrain descent direction is d_i = -grad.
Vec2 height_gradient(const MembraneModel& model, const LoadSet& loads,
                     std::size_t i);

/// Full field Z at an unloaded point (point-source loads), cap-free.
double field_height(const MembraneModel& model, const LoadSet& loads,
                    const Vec2& p);

/// Per-segment membrane heterogeneity multiplier in
/// [1 - A, 1 + A]; deterministic in (seed, arc_index).
double heterogeneity_factor(const MembraneModel& model, std::uint64_t arc_index);

/// Finite-difference Poisson solution on a Cartesian grid covering the disk.
/// Used as the independent oracle for the analytic image-charge path.
class FdField {
 public:
  /// `remainder` holds the grid solve after each load's free-space disk
  /// solution was subtracted; value() adds those disk terms back exactly.
  FdField(const MembraneModel& model, int grid_n,
          std::vector<double> remainder, LoadSet loads);

  double value(const Vec2& p) const;  // bilinear remainder + exact disk terms
  double rim_average(const Vec2& center, double radius, int samples = 256) const;
  int grid_n() const { return n_; }
  void write_csv(const std::string& path) const;  // rows of x, y, Z

 private:
  MembraneModel model_;
  int n_;
  double h_;
  std::vector<double> w_;  // (n+1)^2 nodes, row-major over y then x
  LoadSet loads_;
};

/// Solves lap(Z) = (1/lambda)(1 + sigma_v/sigma) with the 5-point stencil,
/// Z = 0 outside the disk and Z = -D inside the cap (when present).
/// Throws std::runtime_error with the residual if the solve fails.
FdField solve_fd(const MembraneModel& model, const LoadSet& loads, int grid_n);

}  // namespace memgrav
