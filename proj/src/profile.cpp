#include "vpw/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "vpw/io.hpp"
#include "vpw/kernels.hpp"

namespace vpw {

void ProfileSettings::validate() const {
  if (points_per_branch < 5) throw std::invalid_argument("points_per_branch must be >= 5");
  if (table_refinement < 1) throw std::invalid_argument("table_refinement must be >= 1");
  if (!(eps_tail > 0 && eps_tail < 0.5)) throw std::invalid_argument("eps_tail must lie in (0, 0.5)");
}

// ---------------------------------------------------------------- Hermite

HermiteCurve::HermiteCurve(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
  if (x_.size() != y_.size() || x_.size() != dy_.size()) throw std::invalid_argument("HermiteCurve: size mismatch");
  if (x_.size() < 2) throw std::invalid_argument("HermiteCurve: need two knots");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("HermiteCurve: knots must increase");
  // Fritsch-Carlson: keep the interpolant monotone on monotone cells
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    double d = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    if (d == 0) continue;
    double a = dy_[i] / d, b = dy_[i + 1] / d;
    if (a < 0 || b < 0) continue;
    double r = a * a + b * b;
    if (r > 9) {
      double t = 3 / std::sqrt(r);
      dy_[i] = t * a * d;
      dy_[i + 1] = t * b * d;
    }
  }
}

std::size_t HermiteCurve::cell(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return x_.size() - 2;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double HermiteCurve::operator()(double x) const {
  std::size_t i = cell(x);
  double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * dy_[i] + (-2 * t3 + 3 * t2) * y_[i + 1] +
         (t3 - t2) * h * dy_[i + 1];
}

double HermiteCurve::derivative(double x) const {
  std::size_t i = cell(x);
  double h = x_[i + 1] - x_[i], t = (x - x_[i]) / h;
  double t2 = t * t;
  return ((6 * t2 - 6 * t) * y_[i] + (-6 * t2 + 6 * t) * y_[i + 1]) / h + (3 * t2 - 4 * t + 1) * dy_[i] +
         (3 * t2 - 2 * t) * dy_[i + 1];
}

// ---------------------------------------------------------------- X(Phi)

namespace {

// below this |Phi - end| the potential is rebuilt from its slope
constexpr double kNearEnd = 1e-6;

enum class EndType { plain, simple, quadratic };

struct EndInfo {
  EndType type = EndType::plain;
  double v = 0;  // V at the end, subtracted near zeros
};

double zero_tol(const SagdeevPotential& pot, const ConditionSettings& cs) {
  double s = 0;
  const double a = pot.amplitude();
  for (int i = 1; i < 64; ++i) s = std::max(s, pot.value(a * i / 64));
  return cs.equilibrium_rel * std::max(1.0, s);
}

EndInfo classify_end(const SagdeevPotential& pot, double phi, double tol, const ConditionSettings& cs) {
  EndInfo e;
  double v = pot.value(phi);
  if (std::abs(v) > tol) return e;
  e.v = v;
  e.type = std::abs(pot.slope(phi)) > cs.slope_tol ? EndType::simple : EndType::quadratic;
  return e;
}

// one half of the path: a parameter p running in path order, Phi(p), |dPhi/dp|
struct Half {
  std::vector<double> p;
  std::function<double(double)> phi, jac, inv;
  std::function<double(double)> off;  // Phi(q) - e before rounding; empty for the plain map
  double e = 0;
  double vshift = 0;
};

Half make_half(EndType type, double e, double other, double stop_dist, int n, bool e_is_start, double vshift) {
  Half h;
  h.vshift = vshift;
  h.e = e;
  const double sig = other > e ? 1.0 : -1.0;
  const double span = std::abs(other - e);
  std::vector<double> p(n + 1);
  switch (type) {
    case EndType::plain: {
      h.phi = [](double q) { return q; };
      h.jac = [](double) { return 1.0; };
      h.inv = [](double x) { return x; };
      for (int i = 0; i <= n; ++i) p[i] = e + (other - e) * i / n;
      break;
    }
    case EndType::simple: {
      h.phi = [e, sig](double q) { return e + sig * q * q; };
      h.off = [sig](double q) { return sig * q * q; };
      h.jac = [](double q) { return 2 * q; };
      h.inv = [e](double x) { return std::sqrt(std::abs(x - e)); };
      const double s1 = std::sqrt(span);
      for (int i = 0; i <= n; ++i) p[i] = s1 * i / n;
      p[n] = s1;
      break;
    }
    case EndType::quadratic: {
      h.phi = [e, sig, span](double q) { return e + sig * span * std::exp(-q); };
      h.off = [sig, span](double q) { return sig * span * std::exp(-q); };
      h.jac = [span](double q) { return span * std::exp(-q); };
      h.inv = [e, span](double x) { return std::log(span / std::abs(x - e)); };
      const double T = std::log(span / stop_dist);
      for (int i = 0; i <= n; ++i) p[i] = T * i / n;
      break;
    }
  }
  // p[0] corresponds to Phi = e except for the quadratic map, where p = 0 is
  // the far (midpoint) side; put nodes in path order
  bool p0_at_e = type != EndType::quadratic;
  if (p0_at_e != e_is_start) std::reverse(p.begin(), p.end());
  h.p = std::move(p);
  return h;
}

// Nodes at each density kink, graded geometrically toward it so the cubic
// inversion does not lose order in the cells next to a square-root kink.
void insert_kinks(Half& h, const std::vector<double>& kinks) {
  if (h.p.size() < 2) return;
  const bool incr = h.p.back() > h.p.front();
  const double plo = std::min(h.p.front(), h.p.back()), phi_p = std::max(h.p.front(), h.p.back());
  const double f0 = h.phi(h.p.front()), f1 = h.phi(h.p.back());
  const double flo = std::min(f0, f1), fhi = std::max(f0, f1);
  const double w = std::abs(h.p[1] - h.p[0]);
  std::vector<double> q = h.p;
  for (double k : kinks) {
    if (!(k >= flo && k <= fhi)) continue;
    double c = h.inv(k);
    if (!std::isfinite(c)) continue;
    q.push_back(c);
    for (int m = 1; m <= 24; ++m) {
      q.push_back(c + w * std::ldexp(1.0, -m));
      q.push_back(c - w * std::ldexp(1.0, -m));
    }
  }
  std::vector<double> kept;
  for (double x : q)
    if (x >= plo && x <= phi_p) kept.push_back(x);
  std::sort(kept.begin(), kept.end());
  std::vector<double> out;
  for (double x : kept)
    if (out.empty() || x - out.back() > 1e-13 * std::max(1.0, std::abs(x))) out.push_back(x);
  // keep the exact end parameters
  out.front() = plo;
  out.back() = phi_p;
  if (!incr) std::reverse(out.begin(), out.end());
  h.p = std::move(out);
}

XTable x_of_phi_impl(const SagdeevPotential& pot, double from, double to, const ProfileSettings& s, bool parallel) {
  s.validate();
  const double a = pot.amplitude();
  if (!(from >= 0 && from <= a && to >= 0 && to <= a)) throw std::domain_error("x_of_phi: endpoints outside [0, amplitude]");
  XTable t;
  if (from == to) {
    t.phi = {from};
    t.x = {0.0};
    t.dphi = {0.0};
    return t;
  }
  const auto& cs = s.conditions;
  const double tol = zero_tol(pot, cs);
  EndInfo ef = classify_end(pot, from, tol, cs), et = classify_end(pot, to, tol, cs);
  if (ef.type == EndType::quadratic) throw NumericalError("x_of_phi: cannot start at a divergent endpoint");
  const double stop = s.eps_tail * a;
  const double m = 0.5 * (from + to);
  if (et.type == EndType::quadratic && !(std::abs(m - to) > stop))
    throw std::invalid_argument("x_of_phi: interval shorter than the tail cutoff");
  const int n = std::max(4, s.table_refinement * (s.points_per_branch - 1) / 2);
  Half h1 = make_half(ef.type, from, m, stop, n, true, ef.v);
  Half h2 = make_half(et.type, to, m, stop, n, false, et.v);
  auto kinks = pot.phi_breakpoints();
  insert_kinks(h1, kinks);
  insert_kinks(h2, kinks);
  t.stopped_early = et.type == EndType::quadratic;

  const double dir = to > from ? 1.0 : -1.0;
  auto vs = [&pot, a](double phi, double shift) { return pot.value(std::clamp(phi, 0.0, a)) - shift; };
  auto run = [&](const Half& h, bool skip_first) {
    ScalarFn f = [&](double q) {
      double phi = h.phi(q);
      double v = vs(phi, h.vshift);
      if (h.off && std::abs(h.off(q)) < kNearEnd * std::max(1.0, a)) {
        // V carries ~1e-16 absolute noise, fatal once V itself is that small:
        // rebuild V(e + off) - V(e) from the slope in t = sqrt|off|, where a
        // square-root kink at e is smooth
        const double o = h.off(q), sg = o < 0 ? -1.0 : 1.0;
        v = pot.value(h.e) - h.vshift +
            boost::math::quadrature::gauss<double, 7>::integrate([&](double t) { return 2 * sg * t * pot.slope(std::clamp(h.e + sg * t * t, 0.0, a)); },
                             0.0, std::sqrt(std::abs(o)));
      }
      if (!(v > 0)) throw NumericalError("potential not positive (V = " + std::to_string(v) + " at Phi = " +
                                         std::to_string(phi) + ")");
      return h.jac(q) / std::sqrt(2 * v);
    };
    auto cells = parallel ? cell_integrals(f, h.p) : cell_integrals_serial(f, h.p);
    double x0 = t.x.empty() ? 0.0 : t.x.back();
    for (std::size_t i = 0; i < h.p.size(); ++i) {
      if (i > 0) x0 += std::abs(cells[i - 1]);
      if (i == 0 && skip_first) continue;
      double phi = h.phi(h.p[i]);
      t.phi.push_back(phi);
      t.x.push_back(x0);
      t.dphi.push_back(dir * std::sqrt(2 * std::max(vs(phi, h.vshift), 0.0)));
    }
  };
  run(h1, false);
  run(h2, true);
  // exact endpoint values (the maps reproduce them up to rounding)
  t.phi.front() = from;
  if (!t.stopped_early) {
    t.phi.back() = to;
    t.dphi.back() = dir * std::sqrt(2 * std::max(vs(to, et.v), 0.0));
  }
  return t;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  v.back() = b;
  return v;
}

void require_kind(const SagdeevPotential& pot, WaveKind k) {
  if (pot.kind() != k) throw std::invalid_argument("potential is a " + to_string(pot.kind()) + ", expected " + to_string(k));
}

void maybe_check(const SagdeevPotential& pot, const ProfileSettings& s) {
  if (!s.check_conditions) return;
  auto r = check_exists(pot, s.conditions);
  if (!r.exists()) throw ConditionFailure(std::move(r));
}

void fill_columns(WaveProfile& w) {
  const auto& pot = *w.pot;
  const double a = pot.amplitude();
  std::vector<double> phic(w.Phi.size());
  for (std::size_t i = 0; i < phic.size(); ++i) phic[i] = std::clamp(w.Phi[i], 0.0, a);
  w.V = map_values([&](double x) { return pot.value(x); }, phic);
  w.rho_plus = map_values([&](double x) { return pot.rho_plus(x); }, phic);
  w.rho_minus = map_values([&](double x) { return pot.rho_minus(x); }, phic);
}

// table (increasing x) mirrored: x -> origin - x with slope negated, prepended
struct Knots {
  std::vector<double> x, y, dy;
  void push(double a, double b, double c) {
    if (!x.empty() && !(a > x.back())) return;  // shared node
    x.push_back(a);
    y.push_back(b);
    dy.push_back(c);
  }
};

void sample_grid(WaveProfile& w, const std::vector<double>& X) {
  w.X = X;
  w.Phi.resize(X.size());
  w.dPhi.resize(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    w.Phi[i] = w.curve(X[i]);
    w.dPhi[i] = w.curve.derivative(X[i]);
  }
}

}  // namespace

XTable x_of_phi(const SagdeevPotential& pot, double from_phi, double to_phi, const ProfileSettings& s) {
  return x_of_phi_impl(pot, from_phi, to_phi, s, true);
}

XTable x_of_phi_serial(const SagdeevPotential& pot, double from_phi, double to_phi, const ProfileSettings& s) {
  return x_of_phi_impl(pot, from_phi, to_phi, s, false);
}

double WaveProfile::phi_at(double x) const {
  if (kind == WaveKind::train && period > 0) {
    x = std::fmod(x, period);
    if (x < 0) x += period;
  }
  return curve(x);
}

double WaveProfile::dphi_at(double x) const {
  if (kind == WaveKind::train && period > 0) {
    x = std::fmod(x, period);
    if (x < 0) x += period;
  }
  return curve.derivative(x);
}

const SagdeevPotential& WaveProfile::potential() const {
  if (!pot) throw std::logic_error("profile carries no potential");
  return *pot;
}

WaveProfile build_solitary(const SagdeevPotential& pot, const ProfileSettings& s) {
  require_kind(pot, WaveKind::solitary);
  s.validate();
  maybe_check(pot, s);
  const double beta = pot.amplitude();
  auto t = x_of_phi(pot, beta, 0.0, s);
  const double L = t.x.back();
  Knots k;
  for (std::size_t i = t.x.size(); i-- > 0;) k.push(-t.x[i], t.phi[i], -t.dphi[i]);
  for (std::size_t i = 0; i < t.x.size(); ++i) k.push(t.x[i], t.phi[i], t.dphi[i]);
  WaveProfile w;
  w.kind = WaveKind::solitary;
  w.amplitude = beta;
  w.length_left = w.length_right = L;
  w.eps_tail = s.eps_tail;
  w.curve = HermiteCurve(k.x, k.y, k.dy);
  w.pot = pot;
  auto right = linspace(0.0, L, s.points_per_branch);
  std::vector<double> X;
  for (std::size_t i = right.size(); i-- > 1;) X.push_back(-right[i]);
  X.insert(X.end(), right.begin(), right.end());
  sample_grid(w, X);
  // evenness holds exactly on the grid
  const std::size_t n = X.size(), c = n / 2;
  for (std::size_t i = 0; i < c; ++i) {
    w.Phi[i] = w.Phi[n - 1 - i];
    w.dPhi[i] = -w.dPhi[n - 1 - i];
  }
  w.Phi[c] = beta;
  w.dPhi[c] = 0.0;
  fill_columns(w);
  return w;
}

WaveProfile build_shock(const SagdeevPotential& pot, const ProfileSettings& s) {
  require_kind(pot, WaveKind::shock);
  s.validate();
  maybe_check(pot, s);
  const double pl = pot.amplitude();
  auto tr = x_of_phi(pot, 0.5 * pl, 0.0, s);
  auto tl = x_of_phi(pot, 0.5 * pl, pl, s);
  Knots k;
  for (std::size_t i = tl.x.size(); i-- > 0;) k.push(-tl.x[i], tl.phi[i], -tl.dphi[i]);
  for (std::size_t i = 0; i < tr.x.size(); ++i) k.push(tr.x[i], tr.phi[i], tr.dphi[i]);
  WaveProfile w;
  w.kind = WaveKind::shock;
  w.amplitude = pl;
  w.length_left = tl.x.back();
  w.length_right = tr.x.back();
  w.eps_tail = s.eps_tail;
  w.curve = HermiteCurve(k.x, k.y, k.dy);
  w.pot = pot;
  auto left = linspace(0.0, w.length_left, s.points_per_branch);
  auto right = linspace(0.0, w.length_right, s.points_per_branch);
  std::vector<double> X;
  for (std::size_t i = left.size(); i-- > 1;) X.push_back(-left[i]);
  X.insert(X.end(), right.begin(), right.end());
  sample_grid(w, X);
  w.Phi[s.points_per_branch - 1] = 0.5 * pl;
  fill_columns(w);
  return w;
}

WaveProfile build_train(const SagdeevPotential& pot, const ProfileSettings& s) {
  require_kind(pot, WaveKind::train);
  s.validate();
  maybe_check(pot, s);
  const double beta = pot.amplitude();
  auto t = x_of_phi(pot, 0.0, beta, s);
  if (t.stopped_early) throw NumericalError("train potential has a divergent endpoint");
  const double half = t.x.back();
  const double gamma = 2 * half;
  Knots k;
  for (std::size_t i = 0; i < t.x.size(); ++i) k.push(t.x[i], t.phi[i], t.dphi[i]);
  for (std::size_t i = t.x.size(); i-- > 0;) k.push(gamma - t.x[i], t.phi[i], -t.dphi[i]);
  WaveProfile w;
  w.kind = WaveKind::train;
  w.amplitude = beta;
  w.period = gamma;
  w.eps_tail = 0;
  w.curve = HermiteCurve(k.x, k.y, k.dy);
  w.pot = pot;
  auto first = linspace(0.0, half, s.points_per_branch);
  std::vector<double> X = first;
  for (std::size_t i = first.size() - 1; i-- > 0;) X.push_back(gamma - first[i]);
  sample_grid(w, X);
  // mirror symmetry about gamma/2 holds exactly on the grid
  const std::size_t n = X.size(), c = n / 2;
  for (std::size_t i = 0; i < c; ++i) {
    w.Phi[n - 1 - i] = w.Phi[i];
    w.dPhi[n - 1 - i] = -w.dPhi[i];
  }
  w.Phi[0] = w.Phi[n - 1] = 0.0;
  w.Phi[c] = beta;
  w.dPhi[c] = 0.0;
  fill_columns(w);
  return w;
}

WaveProfile build_profile(const SagdeevPotential& pot, const ProfileSettings& s) {
  switch (pot.kind()) {
    case WaveKind::solitary: return build_solitary(pot, s);
    case WaveKind::shock: return build_shock(pot, s);
    case WaveKind::train: return build_train(pot, s);
  }
  throw std::logic_error("unknown wave kind");
}

double period(const SagdeevPotential& pot, const ProfileSettings& s) {
  auto t = x_of_phi(pot, 0.0, pot.amplitude(), s);
  if (t.stopped_early) throw NumericalError("period: divergent endpoint, the orbit is not periodic");
  return 2 * t.x.back();
}

double energy_residual(const WaveProfile& p) {
  const auto& pot = p.potential();
  double m = 0;
  for (std::size_t i = 1; i + 1 < p.X.size(); ++i) {
    double v = pot.value(std::clamp(p.Phi[i], 0.0, p.amplitude));
    m = std::max(m, std::abs(p.dPhi[i] * p.dPhi[i] - 2 * v) / std::max(1.0, 2 * v));
  }
  return m;
}

void write_profile_csv(const WaveProfile& p, const std::string& path) {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  os << "# kind=" << to_string(p.kind) << "\n";
  os << "# amplitude=" << num(p.amplitude) << "\n";
  if (p.kind == WaveKind::train) os << "# period=" << num(p.period) << "\n";
  else {
    os << "# length_left=" << num(p.length_left) << "\n";
    os << "# length_right=" << num(p.length_right) << "\n";
    os << "# eps_tail=" << num(p.eps_tail) << "\n";
  }
  os << "X,Phi,dPhi,V,rho_plus,rho_minus\n";
  for (std::size_t i = 0; i < p.X.size(); ++i) {
    os << num(p.X[i]) << ',' << num(p.Phi[i]) << ',' << num(p.dPhi[i]) << ',' << num(p.V[i]) << ','
       << num(p.rho_plus[i]) << ',' << num(p.rho_minus[i]) << '\n';
  }
  write_file_atomic(path, os.str());
}

WaveProfile read_profile_csv(const std::string& path, const SagdeevPotential& pot) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  WaveProfile w;
  w.pot = pot;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(2, eq - 2), val = line.substr(eq + 1);
      if (key == "kind") w.kind = wave_kind_from_string(val);
      else if (key == "amplitude") w.amplitude = std::stod(val);
      else if (key == "period") w.period = std::stod(val);
      else if (key == "length_left") w.length_left = std::stod(val);
      else if (key == "length_right") w.length_right = std::stod(val);
      else if (key == "eps_tail") w.eps_tail = std::stod(val);
      continue;
    }
    if (!header) {
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != 6) throw std::runtime_error(path + ": expected 6 columns");
    w.X.push_back(row[0]);
    w.Phi.push_back(row[1]);
    w.dPhi.push_back(row[2]);
    w.V.push_back(row[3]);
    w.rho_plus.push_back(row[4]);
    w.rho_minus.push_back(row[5]);
  }
  if (w.X.size() < 5) throw std::runtime_error(path + ": too few rows");
  if (w.kind != pot.kind()) throw std::invalid_argument(path + ": kind does not match the potential");
  // A cubic through the CSV nodes alone is only O(h^2.5) next to square-root
  // kinks of dV (the shock centre has one). Refine each cell with X(Phi) from
  // the potential, stretched to fit the stored end nodes.
  ProfileSettings cell;
  cell.points_per_branch = 5;
  cell.table_refinement = 2;
  cell.check_conditions = false;
  const double a = pot.amplitude();
  Knots k;
  for (std::size_t i = 0; i + 1 < w.X.size(); ++i) {
    k.push(w.X[i], w.Phi[i], w.dPhi[i]);
    const double p0 = std::clamp(w.Phi[i], 0.0, a), p1 = std::clamp(w.Phi[i + 1], 0.0, a);
    if (p0 == p1) continue;
    XTable t;
    try {
      t = x_of_phi_serial(pot, p0, p1, cell);
    } catch (const NumericalError&) {
      continue;  // deep in a tail V is lost in rounding; the cell stays cubic
    }
    if (t.stopped_early || !(t.x.back() > 0)) continue;
    const double sc = (w.X[i + 1] - w.X[i]) / t.x.back();
    if (!(std::abs(sc - 1) < 1e-6)) continue;  // same cause, less loudly
    for (std::size_t j = 1; j + 1 < t.x.size(); ++j) k.push(w.X[i] + sc * t.x[j], t.phi[j], t.dphi[j]);
  }
  k.push(w.X.back(), w.Phi.back(), w.dPhi.back());
  w.curve = HermiteCurve(k.x, k.y, k.dy);
  return w;
}

}  // namespace vpw
