#include "vpw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace vpw::oracle {

namespace {

double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

std::vector<double> edges(const Marginal& g) {
  auto b = g.breakpoints();
  if (!g.empty()) {
    b.push_back(g.support_lo());
    b.push_back(g.support_hi());
  }
  return b;
}

// midpoint rule of f on [lo, hi] split at cuts, `total` points shared by length;
// points inside any (c - ex, c + ex) for c in `holes` are skipped
double midpoint(const std::function<double(double)>& f, double lo, double hi, std::vector<double> cuts,
                const std::vector<double>& holes, const BruteSettings& s) {
  if (!(hi > lo)) return 0.0;
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double c) { return c < lo || c > hi; }), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double len = hi - lo;
  double sum = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    long n = std::max(16L, static_cast<long>(std::ceil(s.points * (b - a) / len)));
    const double h = (b - a) / n;
    double part = 0;
    for (long i = 0; i < n; ++i) {
      const double x = a + (i + 0.5) * h;
      bool skip = false;
      for (double c : holes)
        if (std::abs(x - c) < s.excise) skip = true;
      if (!skip) part += f(x);
    }
    sum += part * h;
  }
  return sum;
}

}  // namespace

double rho_plus_inf(const Marginal& g, const PlasmaParams& p, double phi, const BruteSettings& s) {
  if (g.empty()) return 0.0;
  const double c = 2 * p.q_plus * phi, rc = std::sqrt(c);
  std::vector<double> cuts{-rc, rc};
  double reach = 0;
  for (double b : edges(g)) {
    double u = b - p.alpha, v = sgn(u) * std::sqrt(u * u + c);
    cuts.push_back(v);
    reach = std::max(reach, std::abs(v));
  }
  auto f = [&](double v) {
    double d = v * v - c;
    return d > 0 ? g(p.alpha + sgn(v) * std::sqrt(d)) : 0.0;
  };
  return midpoint(f, -reach, reach, cuts, {-rc, rc}, s);
}

double rho_plus_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double phi,
                        const BruteSettings& s) {
  if (!(phi >= 0 && phi <= beta)) throw std::domain_error("Phi outside [0, beta]");
  const double c = 2 * p.q_plus * phi, rc = std::sqrt(c), shift = 2 * p.q_plus * (beta - phi);
  std::vector<double> cuts{-rc, rc};
  for (double b : edges(G.marginal())) {
    double u = b - p.alpha, w2 = u * u - shift;
    if (u > 0 && w2 > 0 && w2 < c) {
      cuts.push_back(std::sqrt(w2));
      cuts.push_back(-std::sqrt(w2));
    }
  }
  auto f = [&](double v) {
    double d = v * v - c;
    return d < 0 ? G(p.alpha + std::sqrt(d + 2 * p.q_plus * beta)) : 0.0;
  };
  return midpoint(f, -rc, rc, cuts, {-rc, rc}, s);
}

double rho_minus(const Marginal& g, const PlasmaParams& p, double phi, const BruteSettings& s) {
  if (g.empty()) return 0.0;
  const double c = 2 * p.q_minus * phi;
  std::vector<double> cuts{0.0};
  double reach = 0;
  for (double b : edges(g)) {
    double u = b - p.alpha;
    if (u * u > c) {
      double v = sgn(u) * std::sqrt(u * u - c);
      cuts.push_back(v);
      reach = std::max(reach, std::abs(v));
    }
  }
  auto f = [&](double v) { return g(p.alpha + sgn(v) * std::sqrt(v * v + c)); };
  // the v = 0 point maps onto the kink sqrt(2qPhi); excised like the ion edge
  return midpoint(f, -reach, reach, cuts, {0.0}, s);
}

double rho_shock_plus(const Marginal& g_l, const PlasmaParams& p, double phi_l, double phi, const BruteSettings& s) {
  if (!(phi >= 0 && phi <= phi_l)) throw std::domain_error("Phi outside [0, Phi_l]");
  PlasmaParams q = p;
  q.q_minus = p.q_plus;
  // same map as the electrons with Phi replaced by Phi_l - Phi
  return rho_minus(g_l, q, phi_l - phi, s);
}

double primitive(const std::function<double(double)>& rho, double phi, long points) {
  if (phi == 0) return 0.0;
  const double h = phi / points;
  double sum = 0;
  for (long i = 0; i < points; ++i) sum += rho((i + 0.5) * h);
  return sum * h;
}

}  // namespace vpw::oracle
