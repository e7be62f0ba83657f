#pragma once

// Brute-force densities for cross-checking. Integrates the end-state
// marginal at the characteristic-mapped argument over the velocity
// v = xi1 - alpha with a composite midpoint rule; segments are split at the
// mapped jump points and a band of half-width `excise` around the
// trapped/untrapped edge |v| = sqrt(2qPhi) is left out.

#include <functional>

#include "vpw/core_model.hpp"

namespace vpw::oracle {

struct BruteSettings {
  long points = 10'000'000;
  double excise = 1e-9;
};

double rho_plus_inf(const Marginal& g, const PlasmaParams& p, double phi, const BruteSettings& s = {});
double rho_plus_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double phi,
                        const BruteSettings& s = {});
double rho_minus(const Marginal& g, const PlasmaParams& p, double phi, const BruteSettings& s = {});
double rho_shock_plus(const Marginal& g_l, const PlasmaParams& p, double phi_l, double phi, const BruteSettings& s = {});

// int_0^phi rho(s) ds by the composite midpoint rule on `points` nodes
double primitive(const std::function<double(double)>& rho, double phi, long points);

}  // namespace vpw::oracle
