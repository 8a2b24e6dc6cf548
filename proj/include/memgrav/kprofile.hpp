#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace memgrav {

/// Radial turning-strength profile k(r) [m/s^2] with its derivative and
/// antiderivative K(r) = int_0^r k ds. Profiles are defined on a finite
/// domain; evaluation outside it is a domain error (no extrapolation).
class KProfile {
 public:
  KProfile() = default;

  /// Closed-form profile. When K is omitted it is built by quadrature,
  /// with K(r_min) = 0 as the gauge (an additive shift in K only rescales
  /// the gauge constant of the mapping).
  static KProfile from_function(std::function<double(double)> k,
                                std::function<double(double)> dk,
                                double r_min, double r_max,
                                std::function<double(double)> K = nullptr);

  /// Monotone cubic (Fritsch-Carlson) interpolant of tabulated (r, k) data;
  /// k' comes from the interpolant, K from its exact piecewise integral.
  static KProfile from_table(std::vector<double> r, std::vector<double> k);

  /// Two-column CSV (r_m, k_mps2), header optional.
  static KProfile from_csv(const std::string& path);
  void write_csv(const std::string& path, int samples = 0) const;

  double k(double r) const;
  double dk(double r) const;
  double K(double r) const;

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  bool valid() const { return static_cast<bool>(k_); }

 private:
  void check_domain(double r) const;

  std::function<double(double)> k_, dk_, K_;
  double r_min_{0.0}, r_max_{0.0};
  std::vector<double> table_r_, table_k_;  // kept when tabulated
};

/// Piecewise-cubic Hermite interpolant with Fritsch-Carlson limited slopes.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  /// Hermite variant with caller-supplied slopes (no monotonicity limiting).
  MonotoneCubic(std::vector<double> x, std::vector<double> y,
                std::vector<double> slopes);
  double value(double x) const;
  double deriv(double x) const;
  double integral(double x) const;  // from x.front()
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::size_t interval(double x) const;
  std::vector<double> x_, y_, m_, cumint_;
};

}  // namespace memgrav
