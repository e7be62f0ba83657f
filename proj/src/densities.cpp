#include "vpw/densities.hpp"

#include <cmath>
#include <stdexcept>

#include "folded.hpp"

namespace vpw {

namespace {
void require_nonneg(double phi, const char* who) {
  if (!(phi >= 0)) throw std::domain_error(std::string(who) + ": Phi must be >= 0");
}
}  // namespace

double rho_plus_inf(const Marginal& g, const PlasmaParams& p, double phi, const QuadratureSettings& qs, Method m) {
  require_nonneg(phi, "rho_plus_inf");
  return detail::Folded(g, p.alpha).k_plus(2 * p.q_plus * phi, qs, m);
}

double rho_plus_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double phi,
                        const QuadratureSettings& qs, Method m) {
  if (!(beta > 0)) throw std::domain_error("rho_plus_trapped: beta must be positive");
  if (!(phi >= 0 && phi <= beta)) throw std::domain_error("rho_plus_trapped: Phi outside [0, beta]");
  return detail::Folded(G.marginal(), p.alpha)
      .k_trapped(2 * p.q_plus * (beta - phi), std::sqrt(2 * p.q_plus * beta), qs, m);
}

double rho_minus(const Marginal& g, const PlasmaParams& p, double phi, const QuadratureSettings& qs, Method m) {
  require_nonneg(phi, "rho_minus");
  return detail::Folded(g, p.alpha).k_minus(2 * p.q_minus * phi, qs, m);
}

double rho_shock_plus(const Marginal& g_l, const PlasmaParams& p, double phi_l, double phi,
                      const QuadratureSettings& qs, Method m) {
  if (!(phi_l > 0)) throw std::domain_error("rho_shock_plus: Phi_l must be positive");
  if (!(phi >= 0 && phi <= phi_l)) throw std::domain_error("rho_shock_plus: Phi outside [0, Phi_l]");
  return detail::Folded(g_l, p.alpha).k_minus(2 * p.q_plus * (phi_l - phi), qs, m);
}

}  // namespace vpw
