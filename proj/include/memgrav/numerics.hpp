#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace memgrav {

/// Classic fixed-step RK4 for a state type supporting axpy-style arithmetic
/// through the supplied derivative functor (State must support s + h*ds).
template <typename State, typename Rhs>
State rk4_step(const Rhs& rhs, const State& y, double t, double h) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
  const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
  const State k4 = rhs(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Brent-style bracketed root find (bisection with secant acceleration).
double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_iter = 200);

/// Adaptive Simpson quadrature on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-12, int max_depth = 50);

/// Fixed-order Gauss-Legendre quadrature on [a, b] (n in {16, 32, 64}).
double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b, int n = 64);

/// Slope of the least-squares line through (x, y) pairs.
double linear_fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y);

struct SimplexResult {
  std::vector<double> x;
  double fval{0.0};
  int iterations{0};
  bool converged{false};
};

/// Derivative-free Nelder-Mead simplex minimization, with one automatic
/// restart from the incumbent to escape degenerate simplices.
SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, std::vector<double> step, double ftol = 1e-14,
    int max_iter = 20000);

}  // namespace memgrav
