#pragma once

// Explicit nonuniqueness families and the Boltzmann wave-train period match.

#include <optional>
#include <string>
#include <vector>

#include "vpw/conditions.hpp"
#include "vpw/profile.hpp"
#include "vpw/sagdeev.hpp"

namespace vpw {

struct FamilyMember {
  std::string family;  // "perturb", "inject-b", "inject-c", "train-box", "boltzmann-match"
  SagdeevPotential potential;
  double tau = 0;          // perturb, train-box, boltzmann-match
  double beta = 0;         // amplitude of the member
  double lambda = 0;       // inject-b/c: scale of the injected box
  double scale = 1;        // rescale_to_period: factor applied to every marginal
  double period = 0;       // trains
  ConditionReport report{};  // check_exists on the member
};

// solitary: quantile cut of G at tau A and 2 tau A of the weight (xi-alpha)^2
struct TrappedSplit {
  double A = 0;            // (2e+/q+) int G (xi-alpha)^2 over (alpha, alpha+sqrt(2q+beta))
  double alpha_star = 0;   // weighted tau quantile
  double alpha_zero = 0;   // weighted 2 tau quantile
  Marginal g_tilde;        // 0 on (alpha, alpha*), 2G on (alpha*, alpha0), G elsewhere
};
// piecewise G only
TrappedSplit split_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double tau);

// base: solitary built from marginals with G nonzero below the cap
FamilyMember solitary_perturb(const SagdeevPotential& base, double tau, const ConditionSettings& cs = {});

// base: solitary with G = 0 below the cap and V_inf negative before beta*
FamilyMember solitary_inject_case_b(const SagdeevPotential& base, const ConditionSettings& cs = {},
                                    std::optional<double> beta_star_override = std::nullopt);
FamilyMember solitary_inject_case_c(const SagdeevPotential& base, const ConditionSettings& cs = {},
                                    std::optional<double> beta_star_override = std::nullopt);

// f_tau(Phi) = sqrt(Phi + tau) - sqrt(Phi)
double f_tau(double tau, double phi);
FamilyMember train_box_family(const PlasmaParams& p, double beta, double tau, const ConditionSettings& cs = {});
FamilyMember rescale_to_period(const FamilyMember& m, double gamma_target, const ProfileSettings& s = {});

// dimensionless Boltzmann train: Vt = A Vt+ - Vt-, zero at 0 and beta
double boltzmann_tau_star(double kappa);  // = beta_star = 1/(10 kappa)
double boltzmann_a(double tau, double beta, double kappa);
double boltzmann_v_tilde(double tau, double beta, double kappa, double phi);
double boltzmann_gamma_tilde(double tau, double beta, double kappa);
// gamma_tilde over (tau, beta) pairs; OpenMP and serial twins
std::vector<double> gamma_tilde_sweep(const std::vector<double>& taus, const std::vector<double>& betas, double kappa);
std::vector<double> gamma_tilde_sweep_serial(const std::vector<double>& taus, const std::vector<double>& betas,
                                             double kappa);
// gamma = gamma_tilde * sqrt(kappa / (2 e- rho)) for (dPhi/dX)^2 = 2V
double boltzmann_period_factor(const PlasmaParams& p);
double boltzmann_gamma_star(const PlasmaParams& p);

// one member at (tau, beta) with the matching ion box and the maxwellian electron marginal
FamilyMember boltzmann_member(const PlasmaParams& p, double tau, double beta, const ConditionSettings& cs = {});
std::vector<FamilyMember> boltzmann_train_match(const PlasmaParams& p, double gamma_target, int count,
                                                const ConditionSettings& cs = {});

}  // namespace vpw
