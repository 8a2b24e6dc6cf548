#include "memgrav/kprofile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "memgrav/numerics.hpp"

namespace memgrav {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument("MonotoneCubic: need >= 2 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("MonotoneCubic: abscissae must increase");

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  m_.assign(n, 0.0);
  m_[0] = delta[0];
  m_[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      m_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // Fritsch-Carlson limiter on the endpoint slopes.
  for (std::size_t e : {std::size_t{0}, n - 1}) {
    const double d = e == 0 ? delta[0] : delta[n - 2];
    if (m_[e] * d <= 0.0)
      m_[e] = 0.0;
    else if (std::abs(m_[e]) > 3.0 * std::abs(d))
      m_[e] = 3.0 * d;
  }

  cumint_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    cumint_[i + 1] = cumint_[i] + 0.5 * h[i] * (y_[i] + y_[i + 1]) +
                     h[i] * h[i] * (m_[i] - m_[i + 1]) / 12.0;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y,
                             std::vector<double> slopes)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n || m_.size() != n)
    throw std::invalid_argument("MonotoneCubic: size mismatch");
  cumint_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    cumint_[i + 1] = cumint_[i] + 0.5 * h * (y_[i] + y_[i + 1]) +
                     h * h * (m_[i] - m_[i + 1]) / 12.0;
  }
}

std::size_t MonotoneCubic::interval(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = it == x_.begin() ? 0 : (it - x_.begin() - 1);
  return std::min(i, x_.size() - 2);
}

double MonotoneCubic::value(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y_[i] * (2 * t3 - 3 * t2 + 1) + h * m_[i] * (t3 - 2 * t2 + t) +
         y_[i + 1] * (-2 * t3 + 3 * t2) + h * m_[i + 1] * (t3 - t2);
}

double MonotoneCubic::deriv(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  const double t2 = t * t;
  return (y_[i] * (6 * t2 - 6 * t) + h * m_[i] * (3 * t2 - 4 * t + 1) +
          y_[i + 1] * (-6 * t2 + 6 * t) + h * m_[i + 1] * (3 * t2 - 2 * t)) /
         h;
}

double MonotoneCubic::integral(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
  const double seg =
      y_[i] * (0.5 * t4 - t3 + t) + h * m_[i] * (0.25 * t4 - 2.0 / 3.0 * t3 + 0.5 * t2) +
      y_[i + 1] * (-0.5 * t4 + t3) + h * m_[i + 1] * (0.25 * t4 - t3 / 3.0);
  return cumint_[i] + h * seg;
}

void KProfile::check_domain(double r) const {
  constexpr double slack = 1e-9;
  if (r < r_min_ - slack || r > r_max_ + slack)
    throw std::domain_error("KProfile: r outside the tabulated domain");
}

double KProfile::k(double r) const {
  check_domain(r);
  return k_(r);
}

double KProfile::dk(double r) const {
  check_domain(r);
  return dk_(r);
}

double KProfile::K(double r) const {
  check_domain(r);
  return K_(r);
}

KProfile KProfile::from_function(std::function<double(double)> k,
                                 std::function<double(double)> dk,
                                 double r_min, double r_max,
                                 std::function<double(double)> K) {
  KProfile p;
  p.r_min_ = r_min;
  p.r_max_ = r_max;
  p.k_ = std::move(k);
  p.dk_ = std::move(dk);
  if (K) {
    p.K_ = std::move(K);
  } else {
    // Cumulative Hermite table using K' = k: dense enough that the
    // interpolation error is far below integrator tolerances.
    const int n = 4096;
    std::vector<double> r(n + 1), kv(n + 1), Kv(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
      r[i] = r_min + (r_max - r_min) * i / n;
      kv[i] = p.k_(r[i]);
      if (i > 0)
        Kv[i] = Kv[i - 1] + integrate_adaptive(p.k_, r[i - 1], r[i], 1e-14);
    }
    // Hermite with exact slopes K' = k.
    auto spline = std::make_shared<MonotoneCubic>(std::move(r), std::move(Kv),
                                                  std::move(kv));
    p.K_ = [spline](double rr) { return spline->value(rr); };
  }
  return p;
}

KProfile KProfile::from_table(std::vector<double> r, std::vector<double> k) {
  KProfile p;
  p.table_r_ = r;
  p.table_k_ = k;
  auto spline = std::make_shared<MonotoneCubic>(std::move(r), std::move(k));
  p.r_min_ = spline->x_min();
  p.r_max_ = spline->x_max();
  p.k_ = [spline](double rr) { return spline->value(rr); };
  p.dk_ = [spline](double rr) { return spline->deriv(rr); };
  p.K_ = [spline](double rr) { return spline->integral(rr); };
  return p;
}

KProfile KProfile::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("KProfile: cannot open " + path);
  std::vector<double> r, k;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b;
    if (row >> a >> b) {
      r.push_back(a);
      k.push_back(b);
    }
  }
  if (r.size() < 2)
    throw std::runtime_error("KProfile: no usable rows in " + path);
  return from_table(std::move(r), std::move(k));
}

void KProfile::write_csv(const std::string& path, int samples) const {
  std::ofstream out(path);
  out << "r_m,k_mps2\n";
  out.precision(12);
  if (!table_r_.empty() && samples == 0) {
    for (std::size_t i = 0; i < table_r_.size(); ++i)
      out << table_r_[i] << ',' << table_k_[i] << '\n';
    return;
  }
  const int n = samples > 0 ? samples : 256;
  for (int i = 0; i <= n; ++i) {
    const double r = r_min_ + (r_max_ - r_min_) * i / n;
    out << r << ',' << k_(r) << '\n';
  }
}

}  // namespace memgrav
