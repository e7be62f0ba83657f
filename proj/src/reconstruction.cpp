#include "vpw/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vpw/io.hpp"

namespace vpw {

std::string to_string(Species s) { return s == Species::plus ? "plus" : "minus"; }

namespace {

double sgn(double v) { return v < 0 ? -1.0 : 1.0; }

// u^2 - c with rounding-level differences flushed to zero, so an edge that
// sits on the separatrix maps to v = 0 rather than to ~1e-8
double gap2(double u, double c) {
  double u2 = u * u;
  return std::abs(u2 - c) <= 4e-16 * std::max(u2, c) ? 0.0 : u2 - c;
}

void require_marginals(const SagdeevPotential& pot) {
  if (!pot.has_marginals()) throw std::invalid_argument("reconstruction needs a potential built from marginals");
}

// which end-state marginal a species is read from
const Marginal& source(const SagdeevPotential& pot, Species sp) {
  return sp == Species::plus ? pot.g_plus() : pot.g_minus();
}

std::vector<double> edges_of(const Marginal& g) {
  auto b = g.breakpoints();
  if (!g.empty()) {
    b.push_back(g.support_lo());
    b.push_back(g.support_hi());
  }
  return b;
}

bool trapped_kind(const SagdeevPotential& pot) { return pot.kind() != WaveKind::shock; }

}  // namespace

double phase_value(const SagdeevPotential& pot, Species sp, double phi, double xi) {
  const auto& p = pot.params();
  const double v = xi - p.alpha;
  if (sp == Species::minus) {
    const auto& g = pot.g_minus();
    return g(p.alpha + sgn(v) * std::sqrt(v * v + 2 * p.q_minus * phi));
  }
  const auto& g = pot.g_plus();
  if (pot.kind() == WaveKind::shock)
    return g(p.alpha + sgn(v) * std::sqrt(v * v + 2 * p.q_plus * (pot.amplitude() - phi)));
  const double c = 2 * p.q_plus * phi;
  const double d = v * v - c;
  if (d >= 0) return g(p.alpha + sgn(v) * std::sqrt(d));
  const auto& G = pot.trapped();
  if (!G) return 0.0;
  return (*G)(p.alpha + std::sqrt(d + 2 * p.q_plus * pot.amplitude()));
}

std::vector<double> phase_breakpoints(const SagdeevPotential& pot, Species sp, double phi) {
  require_marginals(pot);
  const auto& p = pot.params();
  const double a = p.alpha;
  std::vector<double> out;
  auto push_v = [&](double v) { out.push_back(a + v); };
  if (sp == Species::minus) {
    const double c = 2 * p.q_minus * phi;
    for (double b : edges_of(pot.g_minus())) {
      double u = b - a;
      if (double d = gap2(u, c); d >= 0) push_v(sgn(u) * std::sqrt(d));
    }
    if (c > 0) push_v(0.0);  // v = 0 maps onto the kink at sqrt(c)
  } else if (!trapped_kind(pot)) {
    const double c = 2 * p.q_plus * (pot.amplitude() - phi);
    for (double b : edges_of(pot.g_plus())) {
      double u = b - a;
      if (double d = gap2(u, c); d >= 0) push_v(sgn(u) * std::sqrt(d));
    }
    if (c > 0) push_v(0.0);
  } else {
    const double c = 2 * p.q_plus * phi;
    for (double b : edges_of(pot.g_plus())) {
      double u = b - a;
      push_v(sgn(u) * std::sqrt(u * u + c));
    }
    push_v(std::sqrt(c));
    push_v(-std::sqrt(c));
    if (pot.trapped()) {
      const double shift = 2 * p.q_plus * (pot.amplitude() - phi);
      for (double b : edges_of(pot.trapped()->marginal())) {
        double u = b - a;
        double w2 = u * u - shift;
        if (w2 >= 0 && w2 <= c) {
          push_v(std::sqrt(w2));
          push_v(-std::sqrt(w2));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // an interior v = 0 cut outside the mapped support is harmless, but a lone one is not a range
  if (out.size() == 1) out.clear();
  return out;
}

double slice_density(const SagdeevPotential& pot, Species sp, double phi, const QuadratureSettings& qs) {
  auto cuts = phase_breakpoints(pot, sp, phi);
  if (cuts.size() < 2) return 0.0;
  return integrate([&](double xi) { return phase_value(pot, sp, phi, xi); }, cuts.front(), cuts.back(), cuts, qs);
}

namespace {

PhaseDistribution reconstruct_impl(const WaveProfile& prof, Species sp, const PhaseSettings& s, bool parallel) {
  const auto& pot = prof.potential();
  require_marginals(pot);
  if (s.x_slices < 2 || s.xi_points < 2) throw std::invalid_argument("phase grid needs at least 2x2 points");
  PhaseDistribution d;
  d.species = sp;
  const std::size_t n = prof.X.size();
  const int ns = std::min<int>(s.x_slices, static_cast<int>(n));
  for (int k = 0; k < ns; ++k) {
    std::size_t i = static_cast<std::size_t>(std::llround(static_cast<double>(k) * (n - 1) / (ns - 1)));
    d.X.push_back(prof.X[i]);
    d.Phi.push_back(std::clamp(prof.Phi[i], 0.0, prof.amplitude));
  }
  // xi grid: uniform fill plus mapped breakpoints at the extreme Phi values
  const double pmin = *std::min_element(d.Phi.begin(), d.Phi.end());
  const double pmax = *std::max_element(d.Phi.begin(), d.Phi.end());
  std::vector<double> bp = phase_breakpoints(pot, sp, pmin);
  for (double x : phase_breakpoints(pot, sp, pmax)) bp.push_back(x);
  std::sort(bp.begin(), bp.end());
  double lo = bp.empty() ? pot.params().alpha - 1 : bp.front();
  double hi = bp.empty() ? pot.params().alpha + 1 : bp.back();
  double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  for (int j = 0; j < s.xi_points; ++j) d.xi.push_back(lo + (hi - lo) * j / (s.xi_points - 1));
  d.xi.insert(d.xi.end(), bp.begin(), bp.end());
  std::sort(d.xi.begin(), d.xi.end());
  d.xi.erase(std::unique(d.xi.begin(), d.xi.end()), d.xi.end());

  const std::size_t nx = d.X.size(), nxi = d.xi.size();
  d.F.assign(nx * nxi, 0.0);
  const long long m = static_cast<long long>(nx);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < m; ++i)
      for (std::size_t j = 0; j < nxi; ++j) d.F[i * nxi + j] = phase_value(pot, sp, d.Phi[i], d.xi[j]);
  } else {
    for (long long i = 0; i < m; ++i)
      for (std::size_t j = 0; j < nxi; ++j) d.F[i * nxi + j] = phase_value(pot, sp, d.Phi[i], d.xi[j]);
  }
  return d;
}

}  // namespace

PhaseDistribution reconstruct(const WaveProfile& prof, Species sp, const PhaseSettings& s) {
  return reconstruct_impl(prof, sp, s, true);
}

PhaseDistribution reconstruct_serial(const WaveProfile& prof, Species sp, const PhaseSettings& s) {
  return reconstruct_impl(prof, sp, s, false);
}

Marginal shock_endstate_map(const Marginal& g, const PlasmaParams& p, double phi_l, Direction d, Species sp) {
  if (!(phi_l > 0)) throw std::invalid_argument("shock_endstate_map: Phi_l must be positive");
  const double q = sp == Species::plus ? p.q_plus : p.q_minus;
  const double c = 2 * q * phi_l;
  // ions lose energy moving right (Phi drops from Phi_l to 0): the right
  // state is the left one pushed through u -> sign(u) sqrt(u^2 - c), which
  // needs the left state symmetric on the band |u| < sqrt(c). Electrons gain
  // energy the same way in the opposite direction.
  const bool forward = (sp == Species::plus) == (d == Direction::l_to_r);
  if (forward) {
    if (!g.empty() && !check_symmetry(g, p.alpha, std::sqrt(c)))
      throw std::domain_error("shock_endstate_map: marginal not symmetric on the trapping band");
    return energy_shift(g, p.alpha, c);
  }
  // inverse map; the band |v| < sqrt(c) has no preimage and is left empty
  return energy_shift(g, p.alpha, -c);
}

PoissonResidual verify_poisson(const WaveProfile& prof, const QuadratureSettings& qs) {
  const auto& pot = prof.potential();
  const double a = prof.amplitude;
  auto dv_at = [&](double x) { return pot.slope(std::clamp(prof.phi_at(x), 0.0, a)); };
  const std::size_t n = prof.X.size();
  std::vector<double> lhs(n, 0.0), rhs(n, 0.0), node(n, 0.0);
  double scale = 0;
  for (std::size_t j = 0; j < n; ++j) {
    node[j] = pot.slope(std::clamp(prof.Phi[j], 0.0, a));
    scale = std::max(scale, std::abs(node[j]));
  }
  QuadratureSettings q = qs;
  q.abs_tol = std::max(q.abs_tol, 1e-15 * std::max(scale, 1e-300));
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double x0 = prof.X[j - 1], x1 = prof.X[j], x2 = prof.X[j + 1];
    const double h1 = x1 - x0, h2 = x2 - x1;
    lhs[j] = 2 / (h1 + h2) * ((prof.Phi[j + 1] - prof.Phi[j]) / h2 - (prof.Phi[j] - prof.Phi[j - 1]) / h1);
    double left = integrate([&](double s) { return (s - x0) / h1 * dv_at(s); }, x0, x1, q);
    double right = integrate([&](double s) { return (x2 - s) / h2 * dv_at(s); }, x1, x2, q);
    rhs[j] = 2 / (h1 + h2) * (left + right);
  }
  PoissonResidual r;
  r.scale = scale;
  const double sc = std::max(scale, 1e-300);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    double e = std::abs(lhs[j] - rhs[j]) / sc;
    if (e > r.max_rel) {
      r.max_rel = e;
      r.worst_index = j;
    }
    r.max_pointwise = std::max(r.max_pointwise, std::abs(lhs[j] - node[j]) / sc);
  }
  return r;
}

double verify_characteristics(const PhaseDistribution& dist, const WaveProfile& prof, int n_samples,
                              std::uint64_t seed, double invariant_offset) {
  const auto& pot = prof.potential();
  const auto& p = pot.params();
  const Species sp = dist.species;
  const bool ions = sp == Species::plus;
  const double q = ions ? p.q_plus : p.q_minus;
  const bool can_trap = ions && trapped_kind(pot);
  const double amp = pot.amplitude();
  // invariant e = v^2/2 - q Phi (ions) or v^2/2 + q Phi (electrons); shock
  // ions are referenced to the left state, which only shifts e
  auto energy = [&](double v, double phi) { return 0.5 * v * v + (ions ? -q : q) * phi; };
  auto v2_for = [&](double e, double phi) { return 2 * (e - (ions ? -q : q) * phi); };

  // end-state argument of a phase point; guards against samples on a jump
  auto edges = edges_of(source(pot, sp));
  if (can_trap && pot.trapped()) {
    auto ge = edges_of(pot.trapped()->marginal());
    edges.insert(edges.end(), ge.begin(), ge.end());
  }
  auto near_edge = [&](double x) {
    for (double b : edges)
      if (std::abs(x - b) <= 1e-9 * std::max(1.0, std::abs(b))) return true;
    return false;
  };
  auto argument = [&](double v, double phi) {
    if (sp == Species::minus) return p.alpha + sgn(v) * std::sqrt(v * v + 2 * q * phi);
    if (!trapped_kind(pot)) return p.alpha + sgn(v) * std::sqrt(v * v + 2 * q * (amp - phi));
    double d = v * v - 2 * q * phi;
    if (d >= 0) return p.alpha + sgn(v) * std::sqrt(d);
    return p.alpha + std::sqrt(d + 2 * q * amp);
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_x(0, dist.X.size() - 1), pick_xi(0, dist.xi.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  double worst = 0;
  int done = 0;
  for (int attempt = 0; attempt < 50 * n_samples && done < n_samples; ++attempt) {
    std::size_t i = pick_x(rng), j = pick_xi(rng), k = pick_x(rng);
    const double pa = dist.Phi[i], pb = dist.Phi[k];
    const double va = dist.xi[j] - p.alpha;
    if (va == 0) continue;
    const bool trapped_a = can_trap && va * va < 2 * q * pa;
    if (can_trap && std::abs(va * va - 2 * q * pa) < 1e-9 * std::max(1.0, 2 * q * pa)) continue;
    if (near_edge(argument(va, pa))) continue;
    const double e = energy(va, pa) + invariant_offset;
    const double v2 = v2_for(e, pb);
    if (!(v2 > 0)) continue;
    double vb = std::sqrt(v2);
    if (trapped_a) {
      if (!(v2 < 2 * q * pb)) continue;
      if (coin(rng)) vb = -vb;
    } else {
      if (can_trap && !(v2 > 2 * q * pb)) continue;
      vb *= sgn(va);
    }
    if (can_trap && std::abs(v2 - 2 * q * pb) < 1e-9 * std::max(1.0, 2 * q * pb)) continue;
    if (near_edge(argument(vb, pb))) continue;
    const double fb = phase_value(pot, sp, pb, p.alpha + vb);
    worst = std::max(worst, std::abs(dist.at(i, j) - fb));
    ++done;
  }
  if (done == 0) throw NumericalError("verify_characteristics: no admissible sample pairs");
  return worst;
}

namespace {

// trapezoid with third-order end corrections (weights 3/8, 7/6, 23/24)
double corrected_trapezoid(const std::vector<double>& x, const std::vector<double>& f, std::size_t a, std::size_t b) {
  const std::size_t m = b - a + 1;
  if (m < 2) return 0.0;
  if (m < 7) {
    double s = 0;
    for (std::size_t i = a; i < b; ++i) s += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return s;
  }
  const double h = (x[b] - x[a]) / static_cast<double>(m - 1);
  double s = 0;
  for (std::size_t i = a; i <= b; ++i) {
    std::size_t k = std::min(i - a, b - i);
    double w = k == 0 ? 3.0 / 8 : k == 1 ? 7.0 / 6 : k == 2 ? 23.0 / 24 : 1.0;
    s += w * f[i];
  }
  return h * s;
}

// split the grid into monotone branches at the extreme nodes
std::vector<std::size_t> branch_joints(const WaveProfile& prof) {
  const std::size_t n = prof.X.size();
  std::vector<std::size_t> j{0};
  if (prof.kind != WaveKind::shock) j.push_back(n / 2);
  j.push_back(n - 1);
  return j;
}

}  // namespace

double verify_neutrality(const WaveProfile& prof) {
  const auto& pot = prof.potential();
  std::vector<double> f(prof.X.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = pot.slope(std::clamp(prof.Phi[i], 0.0, prof.amplitude));
  auto j = branch_joints(prof);
  if (prof.kind == WaveKind::shock) {
    // the two sides use slightly different spacings; treat them separately
    j = {0, prof.X.size() / 2, prof.X.size() - 1};
  }
  double s = 0;
  for (std::size_t k = 0; k + 1 < j.size(); ++k) s += corrected_trapezoid(prof.X, f, j[k], j[k + 1]);
  return std::abs(s);
}

double density_recovery(const WaveProfile& prof, Species sp, int slices, const QuadratureSettings& qs) {
  const auto& pot = prof.potential();
  require_marginals(pot);
  const std::size_t n = prof.X.size();
  const int ns = std::max(2, std::min<int>(slices, static_cast<int>(n)));
  std::vector<double> phis;
  for (int k = 0; k < ns; ++k) {
    std::size_t i = static_cast<std::size_t>(std::llround(static_cast<double>(k) * (n - 1) / (ns - 1)));
    phis.push_back(std::clamp(prof.Phi[i], 0.0, prof.amplitude));
  }
  std::vector<double> err(phis.size());
  const long long m = static_cast<long long>(phis.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long long k = 0; k < m; ++k) {
    double rho = sp == Species::plus ? pot.rho_plus(phis[k]) : pot.rho_minus(phis[k]);
    err[k] = std::abs(slice_density(pot, sp, phis[k], qs) - rho) / (1 + rho);
  }
  return *std::max_element(err.begin(), err.end());
}

std::vector<SliceSummary> summarize(const PhaseDistribution& dist, const WaveProfile& prof) {
  const auto& pot = prof.potential();
  const Species sp = dist.species;
  // a shock has two end states; each slice is compared with the nearer one
  Marginal near_l = source(pot, sp), near_r = near_l;
  const bool shock = pot.kind() == WaveKind::shock;
  if (shock) {
    const double pl = pot.amplitude();
    if (sp == Species::plus) near_r = shock_endstate_map(near_l, pot.params(), pl, Direction::l_to_r, sp);
    else near_l = shock_endstate_map(near_r, pot.params(), pl, Direction::r_to_l, sp);
  }
  std::vector<SliceSummary> out;
  const std::size_t nxi = dist.xi.size();
  for (std::size_t i = 0; i < dist.X.size(); ++i) {
    const Marginal& end = shock && dist.Phi[i] < 0.5 * pot.amplitude() ? near_r : near_l;
    double mass = 0, l1 = 0;
    for (std::size_t j = 0; j + 1 < nxi; ++j) {
      double h = dist.xi[j + 1] - dist.xi[j];
      mass += 0.5 * h * (dist.at(i, j) + dist.at(i, j + 1));
      double d0 = std::abs(dist.at(i, j) - end(dist.xi[j])), d1 = std::abs(dist.at(i, j + 1) - end(dist.xi[j + 1]));
      l1 += 0.5 * h * (d0 + d1);
    }
    out.push_back({dist.X[i], dist.Phi[i], mass, l1});
  }
  return out;
}

void write_phase_csv(const PhaseDistribution& dist, const std::string& path) {
  std::ostringstream os;
  char buf[96];
  os << "# species=" << to_string(dist.species) << "\n";
  os << "X,xi1,F\n";
  for (std::size_t i = 0; i < dist.X.size(); ++i)
    for (std::size_t j = 0; j < dist.xi.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", dist.X[i], dist.xi[j], dist.at(i, j));
      os << buf;
    }
  write_file_atomic(path, os.str());
}

}  // namespace vpw
