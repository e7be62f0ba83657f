#include "folded.hpp"

#include <algorithm>
#include <cmath>

namespace vpw::detail {

namespace {
// an edge whose square sits within rounding of c is taken to be exactly at
// the turning point; otherwise sqrt(x2 - c) turns the last bit of the edge
// into an O(1e-8) error
double snap(double x2, double c) { return std::abs(x2 - c) <= 4e-16 * std::max(x2, c) ? c : x2; }
}  // namespace

Folded::Folded(const Marginal& g, double alpha) : g_(g), alpha_(alpha) {
  empty_ = g.empty();
  if (empty_) return;
  umax_ = std::max(std::abs(g.support_lo() - alpha), std::abs(g.support_hi() - alpha));
  for (double b : g.breakpoints()) cuts_.push_back(std::abs(b - alpha));
  std::sort(cuts_.begin(), cuts_.end());
  cuts_.erase(std::unique(cuts_.begin(), cuts_.end()), cuts_.end());
  if (g.kind() == Marginal::Kind::piecewise) {
    piecewise_ = true;
    for (const auto& p : g.pieces()) {
      double lo = p.lo - alpha, hi = p.hi - alpha;
      if (hi > 0) pieces_.push_back({std::max(lo, 0.0), hi, p.height});
      if (lo < 0) pieces_.push_back({std::max(-hi, 0.0), -lo, p.height});
    }
  } else if (g.kind() == Marginal::Kind::maxwellian && g.center() == alpha) {
    gauss_ = true;
    gauss_a_ = g.kappa() / (2 * g.temperature());
    gauss_mass_ = g.maxwell_mass();
  }
}

template <class F>
double Folded::quad_u(F&& integrand, double lo, double hi, double c, const QuadratureSettings& qs) const {
  if (!(hi > lo)) return 0.0;
  const double sc = std::sqrt(std::max(c, 0.0));
  if (c > 0 && lo >= sc * (1 - 1e-15)) {
    // u = sqrt(w^2 + c), du = (w/u) dw
    auto wof = [c](double u) { return std::sqrt(std::max(snap(u * u, c) - c, 0.0)); };
    std::vector<double> wc;
    for (double x : cuts_)
      if (x > lo && x < hi) wc.push_back(wof(x));
    auto gw = [&](double w) {
      double u = std::sqrt(w * w + c);
      return integrand(u, w) * (w / u);
    };
    return integrate(gw, wof(lo), wof(hi), wc, qs);
  }
  auto gu = [&](double u) { return integrand(u, std::sqrt(std::max(u * u - c, 0.0))); };
  return integrate(gu, lo, hi, cuts_, qs);
}

double Folded::k_plus(double c, const QuadratureSettings& qs, Method m) const {
  if (empty_) return 0.0;
  if (closed_piecewise(m)) {
    double s = 0;
    for (const auto& p : pieces_)
      s += p.h * (p.b * p.b - p.a * p.a) / (std::sqrt(p.b * p.b + c) + std::sqrt(p.a * p.a + c));
    return s;
  }
  return quad_u([&](double u, double) { return u == 0 ? (c == 0 ? f(u) : 0.0) : f(u) * u / std::sqrt(u * u + c); },
                0.0, umax_, 0.0, qs);
}

double Folded::k_minus(double c, const QuadratureSettings& qs, Method m) const {
  if (empty_) return 0.0;
  if (closed_piecewise(m)) {
    double s = 0;
    for (const auto& p : pieces_) {
      double b2 = snap(p.b * p.b, c);
      if (b2 <= c) continue;
      double lo2 = std::max(snap(p.a * p.a, c), c);
      s += p.h * (b2 - lo2) / (std::sqrt(b2 - c) + std::sqrt(lo2 - c));
    }
    return s;
  }
  if (closed_gauss(m)) return gauss_mass_ * std::exp(-gauss_a_ * c);
  double sc = std::sqrt(c);
  if (sc >= umax_) return 0.0;
  if (c == 0) return quad_u([&](double u, double) { return f(u); }, 0.0, umax_, 0.0, qs);
  return quad_u([&](double u, double w) { return f(u) * u / w; }, sc, umax_, c, qs);
}

double Folded::k_trapped(double c, double cap, const QuadratureSettings& qs, Method m) const {
  if (empty_) return 0.0;
  if (closed_piecewise(m)) {
    double s = 0;
    for (const auto& p : pieces_) {
      double b = std::min(p.b, cap);
      if (b <= p.a) continue;
      double b2 = snap(b * b, c);
      if (b2 <= c) continue;
      double lo2 = std::max(snap(p.a * p.a, c), c);
      s += 2 * p.h * (b2 - lo2) / (std::sqrt(b2 - c) + std::sqrt(lo2 - c));
    }
    return s;
  }
  double sc = std::sqrt(c), top = std::min(cap, umax_);
  if (sc >= top) return 0.0;
  if (c == 0) return 2 * quad_u([&](double u, double) { return f(u); }, 0.0, top, 0.0, qs);
  return 2 * quad_u([&](double u, double w) { return f(u) * u / w; }, sc, top, c, qs);
}

double Folded::a_plus(double c, const QuadratureSettings& qs, Method m) const {
  if (empty_ || c == 0) return 0.0;
  if (closed_piecewise(m)) {
    auto P = [c](double x) { return pow15_diff(x * x + c, x * x, c); };
    double s = 0;
    for (const auto& p : pieces_) s += p.h * (P(p.b) - P(p.a)) / 3.0;
    return s;
  }
  return quad_u([&](double u, double) { return f(u) * u * c / (std::sqrt(u * u + c) + u); }, 0.0, umax_, 0.0,
                qs);
}

double Folded::a_minus(double c, const QuadratureSettings& qs, Method m) const {
  if (empty_ || c == 0) return 0.0;
  if (closed_piecewise(m)) {
    auto E = [c](double x) {
      double x2 = x * x;
      return x2 <= c ? x2 * x : pow15_diff(x2, x2 - c, c);
    };
    double s = 0;
    for (const auto& p : pieces_) s += p.h * (E(p.b) - E(p.a)) / 3.0;
    return s;
  }
  if (closed_gauss(m)) return -gauss_mass_ / (2 * gauss_a_) * std::expm1(-gauss_a_ * c);
  double sc = std::sqrt(c);
  double inner = quad_u([&](double u, double) { return f(u) * u * u; }, 0.0, std::min(sc, umax_), 0.0, qs);
  if (sc >= umax_) return inner;
  return inner + quad_u([&](double u, double w) { return f(u) * u * c / (u + w); }, sc, umax_, c, qs);
}

double Folded::a_shift(double c, double cap, const QuadratureSettings& qs, Method m) const {
  if (empty_) return 0.0;
  if (closed_piecewise(m)) {
    auto S = [c](double x) {
      double t = x * x - c;
      return t > 0 ? t * std::sqrt(t) : 0.0;
    };
    double s = 0;
    for (const auto& p : pieces_) {
      double b = std::min(p.b, cap);
      if (b <= p.a) continue;
      s += p.h * (S(b) - S(p.a)) / 3.0;
    }
    return s;
  }
  if (closed_gauss(m) && !std::isfinite(cap)) return gauss_mass_ / (2 * gauss_a_) * std::exp(-gauss_a_ * c);
  double sc = std::sqrt(c), top = std::min(cap, umax_);
  if (sc >= top) return 0.0;
  return quad_u([&](double u, double w) { return f(u) * u * w; }, sc, top, c, qs);
}

double Folded::a_shock(double c1, double c0, const QuadratureSettings& qs, Method m) const {
  if (empty_ || c1 == c0) return 0.0;
  const double d = c0 - c1;
  if (closed_piecewise(m)) {
    auto T = [c1, c0, d](double x) {
      double x2 = x * x;
      if (x2 <= c1) return 0.0;
      if (x2 <= c0) return (x2 - c1) * std::sqrt(x2 - c1);
      return pow15_diff(x2 - c1, x2 - c0, d);
    };
    double s = 0;
    for (const auto& p : pieces_) s += p.h * (T(p.b) - T(p.a)) / 3.0;
    return s;
  }
  if (closed_gauss(m))
    return gauss_mass_ / (2 * gauss_a_) * std::exp(-gauss_a_ * c1) * (-std::expm1(-gauss_a_ * d));
  double s1 = std::sqrt(c1), s0 = std::sqrt(c0);
  double part = 0;
  if (s1 < umax_)
    part += quad_u([&](double u, double w) { return f(u) * u * w; }, s1, std::min(s0, umax_), c1, qs);
  if (s0 < umax_)
    part += quad_u(
        [&](double u, double w0) {
          double w1 = std::sqrt(u * u - c1);
          return f(u) * u * d / (w1 + w0);
        },
        s0, umax_, c0, qs);
  return part;
}

}  // namespace vpw::detail
