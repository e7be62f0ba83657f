#pragma once

#include "vpw/core_model.hpp"
#include "vpw/numerics.hpp"

namespace vpw {

// automatic: closed forms where available (piecewise, centred maxwellian),
// quadrature otherwise. quadrature: always integrate, used for cross-checks.
enum class Method { automatic, quadrature };

// rho_plus^infinity(Phi): untrapped ions
double rho_plus_inf(const Marginal& g, const PlasmaParams& p, double phi, const QuadratureSettings& qs = {},
                    Method m = Method::automatic);

// rho_plus^0(Phi; beta, G): trapped ions, 0 <= Phi <= beta
double rho_plus_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double phi,
                        const QuadratureSettings& qs = {}, Method m = Method::automatic);

double rho_minus(const Marginal& g, const PlasmaParams& p, double phi, const QuadratureSettings& qs = {},
                 Method m = Method::automatic);

// ions of a shock, referenced to the left state, 0 <= Phi <= Phi_l
double rho_shock_plus(const Marginal& g_l, const PlasmaParams& p, double phi_l, double phi,
                      const QuadratureSettings& qs = {}, Method m = Method::automatic);

}  // namespace vpw
