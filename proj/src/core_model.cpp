#include "vpw/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vpw/numerics.hpp"

namespace vpw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}
}  // namespace

void PlasmaParams::validate() const {
  if (!finite_all({e_plus, e_minus, q_plus, q_minus, alpha}))
    throw std::invalid_argument("plasma parameters must be finite");
  if (!(e_plus > 0) || !(e_minus > 0)) throw std::invalid_argument("e_plus and e_minus must be positive");
  if (!(q_plus > 0) || !(q_minus > 0)) throw std::invalid_argument("q_plus and q_minus must be positive");
  if (n < 1) throw std::invalid_argument("velocity dimension n must be >= 1");
  if (boltzmann && (!(boltzmann->rho > 0) || !(boltzmann->kappa > 0)))
    throw std::invalid_argument("Boltzmann constants rho and kappa must be positive");
}

Marginal Marginal::piecewise(std::vector<Piece> pieces) {
  Marginal g;
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  for (const auto& p : pieces) {
    if (!finite_all({p.lo, p.hi, p.height})) throw std::invalid_argument("piece entries must be finite");
    if (p.height < 0) throw std::invalid_argument("piece heights must be nonnegative");
    if (p.hi < p.lo) throw std::invalid_argument("piece with hi < lo");
    if (p.hi == p.lo || p.height == 0) continue;
    if (!g.pieces_.empty() && p.lo < g.pieces_.back().hi)
      throw std::invalid_argument("pieces overlap");
    g.pieces_.push_back(p);
  }
  return g;
}

Marginal Marginal::box(double lo, double hi, double height) { return piecewise({{lo, hi, height}}); }

Marginal Marginal::maxwellian(double mass, double center, double kappa, double q) {
  if (!finite_all({mass, center, kappa, q})) throw std::invalid_argument("maxwellian parameters must be finite");
  if (mass < 0) throw std::invalid_argument("maxwellian mass must be nonnegative");
  if (!(kappa > 0) || !(q > 0)) throw std::invalid_argument("maxwellian kappa and q must be positive");
  Marginal g;
  g.kind_ = Kind::maxwellian;
  g.mw_mass_ = mass;
  g.mw_center_ = center;
  g.mw_kappa_ = kappa;
  g.mw_q_ = q;
  return g;
}

Marginal Marginal::tabulated(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() != values.size()) throw std::invalid_argument("knots and values differ in length");
  if (knots.size() < 2) throw std::invalid_argument("tabulated marginal needs at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i]) || !std::isfinite(values[i])) throw std::invalid_argument("tabulated entries must be finite");
    if (values[i] < 0) throw std::invalid_argument("tabulated values must be nonnegative");
    if (i > 0 && !(knots[i] > knots[i - 1])) throw std::invalid_argument("knots must be strictly increasing");
  }
  Marginal g;
  g.kind_ = Kind::tabulated;
  g.knots_ = std::move(knots);
  g.values_ = std::move(values);
  return g;
}

double Marginal::sigma() const { return std::sqrt(mw_q_ / mw_kappa_); }

double Marginal::operator()(double xi) const {
  switch (kind_) {
    case Kind::piecewise: {
      // value at a jump is the mean of the one-sided limits
      auto it = std::lower_bound(pieces_.begin(), pieces_.end(), xi,
                                 [](const Piece& p, double x) { return p.hi < x; });
      double v = 0;
      for (; it != pieces_.end() && it->lo <= xi; ++it) {
        if (xi > it->lo && xi < it->hi)
          v += it->height;
        else
          v += 0.5 * it->height;
      }
      return v;
    }
    case Kind::maxwellian: {
      double d = xi - mw_center_;
      if (std::abs(d) > kTruncationSigmas * sigma()) return 0.0;
      return mw_mass_ * std::sqrt(mw_kappa_ / (2 * std::numbers::pi * mw_q_)) *
             std::exp(-mw_kappa_ * d * d / (2 * mw_q_));
    }
    case Kind::tabulated: {
      if (xi < knots_.front() || xi > knots_.back()) return 0.0;
      if (xi == knots_.front()) return 0.5 * values_.front();
      if (xi == knots_.back()) return 0.5 * values_.back();
      auto it = std::upper_bound(knots_.begin(), knots_.end(), xi);
      std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
      double t = (xi - knots_[i]) / (knots_[i + 1] - knots_[i]);
      return values_[i] + t * (values_[i + 1] - values_[i]);
    }
  }
  return 0.0;
}

bool Marginal::empty() const {
  switch (kind_) {
    case Kind::piecewise: return pieces_.empty();
    case Kind::maxwellian: return mw_mass_ == 0;
    case Kind::tabulated: return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0; });
  }
  return true;
}

double Marginal::support_lo() const {
  switch (kind_) {
    case Kind::piecewise: return pieces_.empty() ? 0.0 : pieces_.front().lo;
    case Kind::maxwellian: return mw_center_ - kTruncationSigmas * sigma();
    case Kind::tabulated: return knots_.front();
  }
  return 0.0;
}

double Marginal::support_hi() const {
  switch (kind_) {
    case Kind::piecewise: return pieces_.empty() ? 0.0 : pieces_.back().hi;
    case Kind::maxwellian: return mw_center_ + kTruncationSigmas * sigma();
    case Kind::tabulated: return knots_.back();
  }
  return 0.0;
}

double Marginal::mass() const {
  switch (kind_) {
    case Kind::piecewise: {
      double m = 0;
      for (const auto& p : pieces_) m += (p.hi - p.lo) * p.height;
      return m;
    }
    case Kind::maxwellian: return mw_mass_;
    case Kind::tabulated: {
      double m = 0;
      for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
        m += 0.5 * (knots_[i + 1] - knots_[i]) * (values_[i] + values_[i + 1]);
      return m;
    }
  }
  return 0.0;
}

double Marginal::first_moment() const {
  switch (kind_) {
    case Kind::piecewise: {
      double m = 0;
      for (const auto& p : pieces_) m += 0.5 * p.height * (p.hi - p.lo) * (p.hi + p.lo);
      return m;
    }
    case Kind::maxwellian: return mw_mass_ * mw_center_;
    case Kind::tabulated: {
      double m = 0;
      for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        double x0 = knots_[i], x1 = knots_[i + 1];
        m += (x1 - x0) / 6.0 * (values_[i] * (2 * x0 + x1) + values_[i + 1] * (x0 + 2 * x1));
      }
      return m;
    }
  }
  return 0.0;
}

std::vector<double> Marginal::breakpoints() const {
  std::vector<double> b;
  if (kind_ == Kind::piecewise) {
    for (const auto& p : pieces_) {
      b.push_back(p.lo);
      b.push_back(p.hi);
    }
  } else if (kind_ == Kind::tabulated) {
    b = knots_;
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double Marginal::sup() const {
  switch (kind_) {
    case Kind::piecewise: {
      double s = 0;
      for (const auto& p : pieces_) s = std::max(s, p.height);
      return s;
    }
    case Kind::maxwellian: return mw_mass_ * std::sqrt(mw_kappa_ / (2 * std::numbers::pi * mw_q_));
    case Kind::tabulated: return *std::max_element(values_.begin(), values_.end());
  }
  return 0.0;
}

Marginal Marginal::scaled(double c) const {
  if (!(c >= 0) || !std::isfinite(c)) throw std::invalid_argument("scale factor must be finite and nonnegative");
  Marginal g = *this;
  for (auto& p : g.pieces_) p.height *= c;
  for (auto& v : g.values_) v *= c;
  g.mw_mass_ *= c;
  if (kind_ == Kind::piecewise && c == 0) g.pieces_.clear();
  return g;
}

TrappedMarginal::TrappedMarginal(Marginal g, double alpha) : g_(std::move(g)), alpha_(alpha) {
  if (g_.kind() == Marginal::Kind::maxwellian && !g_.empty())
    throw std::invalid_argument("a trapped marginal cannot be a maxwellian (unbounded support)");
  if (!g_.empty() && g_.support_lo() < alpha_)
    throw std::invalid_argument("trapped marginal must vanish for xi_1 <= alpha");
}

double marginal_mass(const Marginal& g) { return g.mass(); }

double default_symmetry_tol(const Marginal& g) {
  return g.kind() == Marginal::Kind::tabulated ? 1e-9 : 1e-12;
}

namespace {

// distances |b - alpha| of breakpoints, with 0, sorted, near-duplicates merged
std::vector<double> mirror_distances(const Marginal& g, double alpha) {
  std::vector<double> d{0.0};
  for (double b : g.breakpoints()) d.push_back(std::abs(b - alpha));
  std::sort(d.begin(), d.end());
  std::vector<double> out;
  for (double x : d)
    if (out.empty() || x - out.back() > 1e-12 * std::max(1.0, x)) out.push_back(x);
  return out;
}

bool near_any(const std::vector<double>& sorted, double x, double rel) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double tol = rel * std::max(1.0, std::abs(x));
  if (it != sorted.end() && *it - x <= tol) return true;
  if (it != sorted.begin() && x - *(it - 1) <= tol) return true;
  return false;
}

double mirror_gap(const Marginal& g, double alpha, double s) { return std::abs(g(alpha + s) - g(alpha - s)); }

double reach(const Marginal& g, double alpha) {
  if (g.empty()) return 0.0;
  return std::max(std::abs(g.support_lo() - alpha), std::abs(g.support_hi() - alpha));
}

}  // namespace

bool check_symmetry(const Marginal& g, double alpha, double delta, double tol) {
  if (!(delta > 0)) throw std::invalid_argument("check_symmetry: delta must be positive");
  if (tol < 0) tol = default_symmetry_tol(g);
  // midpoints between consecutive mirror distances catch any box misalignment;
  // exact breakpoints are skipped so rounding of mirrored edges cannot matter
  auto d = mirror_distances(g, alpha);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] >= delta) break;
    double hi = (i + 1 < d.size()) ? std::min(d[i + 1], delta) : delta;
    if (!std::isfinite(hi)) hi = d[i] + 1.0;
    if (mirror_gap(g, alpha, 0.5 * (d[i] + hi)) > tol) return false;
  }
  const double span = std::isfinite(delta) ? delta : reach(g, alpha);
  const int n = 2000;
  for (int k = 1; k <= n; ++k) {
    double s = span * k / (n + 1.0);
    if (near_any(d, s, 1e-9)) continue;
    if (mirror_gap(g, alpha, s) > tol) return false;
  }
  return true;
}

double symmetric_extent(const Marginal& g, double alpha, double tol) {
  if (tol < 0) tol = default_symmetry_tol(g);
  if (g.empty()) return kInf;
  auto d = mirror_distances(g, alpha);
  if (g.kind() == Marginal::Kind::piecewise) {
    // g(alpha+s) - g(alpha-s) is constant between consecutive mirror distances
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (mirror_gap(g, alpha, 0.5 * (d[i] + d[i + 1])) > tol) return d[i];
    return kInf;
  }
  // fallback: dense scan then bisection on the violation predicate
  const double smax = reach(g, alpha);
  std::vector<double> s{0.0};
  const int n = 8000;
  for (int k = 1; k <= n; ++k) s.push_back(smax * k / n);
  for (double x : d) s.push_back(x);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (mirror_gap(g, alpha, s[i]) > tol) {
      double lo = s[i - 1], hi = s[i];
      for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        double m = 0.5 * (lo + hi);
        (mirror_gap(g, alpha, m) > tol ? hi : lo) = m;
      }
      return lo;
    }
  }
  return kInf;
}

double beta_star(const Marginal& g_minus, const PlasmaParams& params, double tol) {
  double d = symmetric_extent(g_minus, params.alpha, tol);
  if (!std::isfinite(d)) return kInf;
  return d * d / (2 * params.q_minus);
}

Marginal energy_shift(const Marginal& g, double alpha, double c) {
  if (g.empty()) return Marginal{};
  if (g.kind() == Marginal::Kind::piecewise) {
    std::vector<Piece> out;
    auto vmap = [c](double u) { return std::sqrt(std::max(u * u - c, 0.0)); };
    for (const auto& p : g.pieces()) {
      double a = p.lo - alpha, b = p.hi - alpha;
      if (b > 0) {  // u > 0 part
        double ua = std::max(a, 0.0);
        double lo = vmap(ua), hi = vmap(b);
        if (hi > lo) out.push_back({alpha + lo, alpha + hi, p.height});
      }
      if (a < 0) {  // u < 0 part, |u| in [max(-b,0), -a]
        double ua = std::max(-b, 0.0);
        double lo = vmap(ua), hi = vmap(-a);
        if (hi > lo) out.push_back({alpha - hi, alpha - lo, p.height});
      }
    }
    std::sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
    // floating roundoff can make images of adjacent pieces touch out of order
    for (std::size_t i = 1; i < out.size(); ++i)
      if (out[i].lo < out[i - 1].hi) out[i].lo = out[i - 1].hi;
    return Marginal::piecewise(std::move(out));
  }
  if (g.kind() == Marginal::Kind::maxwellian && g.center() == alpha && c >= 0)
    return Marginal::maxwellian(g.maxwell_mass() * std::exp(-g.kappa() * c / (2 * g.temperature())),
                                g.center(), g.kappa(), g.temperature());
  const double vmax = std::sqrt(std::max(reach(g, alpha) * reach(g, alpha) - c, 0.0));
  if (vmax == 0) return Marginal{};
  const int n = 4001;
  std::vector<double> k(n), v(n);
  for (int i = 0; i < n; ++i) {
    double x = -vmax + 2 * vmax * i / (n - 1);
    k[i] = alpha + x;
    double arg = x * x + c;
    v[i] = arg > 0 ? g(alpha + (x >= 0 ? 1 : -1) * std::sqrt(arg)) : 0.0;
  }
  return Marginal::tabulated(std::move(k), std::move(v));
}

namespace {
std::vector<double> comparison_samples(const Marginal& a, const Marginal& b) {
  std::vector<double> raw = a.breakpoints();
  for (double x : b.breakpoints()) raw.push_back(x);
  std::sort(raw.begin(), raw.end());
  std::vector<double> bp;
  for (double x : raw)
    if (bp.empty() || x - bp.back() > 1e-12 * std::max(1.0, std::abs(x))) bp.push_back(x);
  double lo = std::min(a.empty() ? 0.0 : a.support_lo(), b.empty() ? 0.0 : b.support_lo());
  double hi = std::max(a.empty() ? 0.0 : a.support_hi(), b.empty() ? 0.0 : b.support_hi());
  std::vector<double> s;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) s.push_back(0.5 * (bp[i] + bp[i + 1]));
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    if (!near_any(bp, x, 1e-9)) s.push_back(x);
  }
  return s;
}
}  // namespace

double max_abs_difference(const Marginal& a, const Marginal& b) {
  double m = 0;
  for (double x : comparison_samples(a, b)) m = std::max(m, std::abs(a(x) - b(x)));
  return m;
}

double l1_distance(const Marginal& a, const Marginal& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> cuts = a.breakpoints();
  for (double x : b.breakpoints()) cuts.push_back(x);
  double lo = std::min(a.empty() ? b.support_lo() : a.support_lo(), b.empty() ? a.support_lo() : b.support_lo());
  double hi = std::max(a.empty() ? b.support_hi() : a.support_hi(), b.empty() ? a.support_hi() : b.support_hi());
  QuadratureSettings qs;
  qs.rel_tol = 1e-9;
  qs.abs_tol = 1e-14;
  return integrate([&](double x) { return std::abs(a(x) - b(x)); }, lo, hi, cuts, qs);
}

}  // namespace vpw
