#include "vpw/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>

namespace vpw {

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0) || !(abs_tol >= 0)) throw std::invalid_argument("rel_tol must be positive and abs_tol nonnegative");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment rule(const ScalarFn& f, double a, double b) {
  static const auto& x = GK::abscissa();
  static const auto& wk = GK::weights();
  static const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double k = fc * wk[0];
  double g = fc * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    double f1 = f(c - h * x[i]), f2 = f(c + h * x[i]);
    k += wk[i] * (f1 + f2);
    if (i % 2 == 0) g += wg[i / 2] * (f1 + f2);
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, const std::vector<double>& cuts,
                 const QuadratureSettings& qs) {
  qs.validate();
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, cuts, qs);
  std::vector<double> pts{a};
  for (double c : cuts)
    if (c > a && c < b) pts.push_back(c);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::priority_queue<Segment> heap;
  double total = 0, err = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto s = rule(f, pts[i], pts[i + 1]);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  int used = static_cast<int>(heap.size());
  while (err > std::max(qs.abs_tol, qs.rel_tol * std::abs(total)) && !heap.empty()) {
    if (used >= qs.max_subdivisions) {
      if (err <= 1e3 * std::max(qs.abs_tol, qs.rel_tol * std::abs(total))) break;
      throw NumericalError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
    }
    Segment s = heap.top();
    heap.pop();
    double m = 0.5 * (s.a + s.b);
    if (!(m > s.a && m < s.b)) {
      // interval at machine resolution; keep its value, stop refining it
      err -= s.error;
      continue;
    }
    auto l = rule(f, s.a, m), r = rule(f, m, s.b);
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++used;
  }
  if (!std::isfinite(total)) throw NumericalError("quadrature produced a non-finite value");
  return total;
}

double integrate(const ScalarFn& f, double a, double b, const QuadratureSettings& qs) {
  return integrate(f, a, b, {}, qs);
}

double integrate_sqrt_singular(const ScalarFn& f, double c, double a, double b,
                               const QuadratureSettings& qs) {
  if (c < 0) throw std::domain_error("integrate_sqrt_singular: c must be >= 0");
  if (a > b) return -integrate_sqrt_singular(f, c, b, a, qs);
  const double slack = 1e-14 * std::max(1.0, c);
  double sign;
  if (a >= 0 && a * a >= c - slack)
    sign = 1.0;
  else if (b <= 0 && b * b >= c - slack)
    sign = -1.0;
  else
    throw std::domain_error("interval crosses singular band");
  // an end at sqrt(c) up to rounding is the singular point itself, not ~1e-8 past it
  auto w_of = [&](double u) {
    double d = u * u - c;
    if (std::abs(d) <= 4e-16 * std::max(u * u, c)) d = 0;
    return (u >= 0 ? 1.0 : -1.0) * std::sqrt(std::max(d, 0.0));
  };
  double wa = w_of(a), wb = w_of(b);
  auto g = [&](double w) { return f(sign * std::sqrt(w * w + c)); };
  return integrate(g, wa, wb, qs);
}

double bisect(const ScalarFn& f, double a, double b, double xtol) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0)) throw NumericalError("bisect: no sign change on bracket");
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (a + b);
    if (!(m > std::min(a, b) && m < std::max(a, b)) || std::abs(b - a) <= xtol) break;
    double fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

double golden_min(const ScalarFn& f, double a, double b, double xtol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (std::abs(b - a) > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
    if (!(c > a && d < b)) break;
  }
  double m = 0.5 * (a + b);
  double best = m, fb = f(m);
  for (double x : {a, b})
    if (f(x) < fb) {
      fb = f(x);
      best = x;
    }
  return best;
}

double pow15_diff(double x, double y, double d) {
  x = std::max(x, 0.0);
  y = std::max(y, 0.0);
  double sx = std::sqrt(x), sy = std::sqrt(y);
  double den = x * sx + y * sy;
  if (den == 0) return 0.0;
  return d * (x * x + x * y + y * y) / den;
}

}  // namespace vpw
