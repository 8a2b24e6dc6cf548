#include "memgrav/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace memgrav {

double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::domain_error("find_root: endpoints do not bracket a root");
  // Brent's method.
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r_;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r_ = fb / fc;
        p = s * (2.0 * xm * q * (q - r_) - (b - a) * (r_ - 1.0));
        q = (q - 1.0) * (r_ - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa;
      d = b - a; e = d;
    }
  }
  return b;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double fm, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, flm);
  const double right = simpson(f, m, fm, b, fb, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_rec(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_rec(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

// 32-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr std::array<double, 16> kGL32x = {
    0.0483076656877383162, 0.1444719615827964934, 0.2392873622521370745,
    0.3318686022821276497, 0.4213512761306353454, 0.5068999089322293900,
    0.5877157572407623290, 0.6630442669302152010, 0.7321821187402896804,
    0.7944837959679424069, 0.8493676137325699701, 0.8963211557660521240,
    0.9349060759377396892, 0.9647622555875064308, 0.9856115115452683354,
    0.9972638618494815635};
constexpr std::array<double, 16> kGL32w = {
    0.0965400885147278006, 0.0956387200792748594, 0.0938443990808045654,
    0.0911738786957638847, 0.0876520930044038111, 0.0833119242269467552,
    0.0781938957870703065, 0.0723457941088485062, 0.0658222227763618468,
    0.0586840934785355471, 0.0509980592623761762, 0.0428358980222266807,
    0.0342738629130214331, 0.0253920653092620595, 0.0162743947309056706,
    0.0070186100094700966};

double gauss32(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 16; ++i)
    sum += kGL32w[i] * (f(c - h * kGL32x[i]) + f(c + h * kGL32x[i]));
  return h * sum;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(f, a, fa, b, fb, fm);
  return adaptive_rec(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b, int n) {
  if (n <= 32) return gauss32(f, a, b);
  // Composite panels of 32 points.
  const int panels = (n + 31) / 32;
  double sum = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    sum += gauss32(f, a + p * h, a + (p + 1) * h);
  return sum;
}

namespace {

SimplexResult nelder_mead_once(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& step,
    double ftol, int max_iter) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexResult res;
  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    const double spread = std::abs(fv[worst] - fv[best]);
    if (spread <= ftol * (std::abs(fv[best]) + ftol)) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;
    }
    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + coef * (pts[worst][j] - centroid[j]);
      return p;
    };
    const std::vector<double> refl = blend(-1.0);
    const double frefl = f(refl);
    if (frefl < fv[best]) {
      const std::vector<double> exp_ = blend(-2.0);
      const double fexp = f(exp_);
      if (fexp < frefl) { pts[worst] = exp_; fv[worst] = fexp; }
      else { pts[worst] = refl; fv[worst] = frefl; }
    } else if (frefl < fv[second]) {
      pts[worst] = refl;
      fv[worst] = frefl;
    } else {
      const std::vector<double> con = blend(frefl < fv[worst] ? -0.5 : 0.5);
      const double fcon = f(con);
      if (fcon < std::min(frefl, fv[worst])) {
        pts[worst] = con;
        fv[worst] = fcon;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  res.x = pts[best];
  res.fval = fv[best];
  return res;
}

}  // namespace

SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, std::vector<double> step, double ftol,
    int max_iter) {
  SimplexResult res = nelder_mead_once(f, x0, step, ftol, max_iter);
  // Restart from the incumbent with shrunken steps; cheap insurance against
  // premature simplex collapse.
  std::vector<double> step2(step.size());
  for (std::size_t i = 0; i < step.size(); ++i) step2[i] = 0.1 * step[i];
  SimplexResult res2 = nelder_mead_once(f, res.x, step2, ftol, max_iter);
  res2.iterations += res.iterations;
  if (res2.fval <= res.fval) return res2;
  return res;
}

double linear_fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace memgrav
