#pragma once

// Built-in worked examples: a solitary wave with box marginals, the
// symmetric shock and the box wave train.

#include <string>

#include "vpw/conditions.hpp"
#include "vpw/families.hpp"
#include "vpw/profile.hpp"
#include "vpw/reconstruction.hpp"

namespace vpw {

struct SolitaryExample {
  SagdeevPotential potential;  // amplitude beta1, G = 0
  double beta0 = 0, beta1 = 0;
  double rho_at_0 = 0, rho_at_hundredth = 0, rho_at_1 = 0;
  ConditionReport report{};
  UniquenessVerdict uniqueness{};
};

// needs alpha = 0; e and q may be anything positive
Marginal solitary_example_g_plus(const PlasmaParams& p);
Marginal solitary_example_g_minus(const PlasmaParams& p);
SolitaryExample example_solitary(const PlasmaParams& p = {});

struct ShockExample {
  SagdeevPotential potential;
  ShockEndStates ends;
  double phi_l = 0;
  double masses[4] = {0, 0, 0, 0};  // gl+, gr+, gl-, gr- (charge weighted)
  AlphaResult alpha{};
  bool matching = false;
  double max_symmetry_defect = 0;  // max |V(Phi) - V(Phi_l - Phi)| on 101 points
  ConditionReport report{};
};

ShockEndStates shock_example_states(const PlasmaParams& p, double phi_l);
ShockExample example_shock(double phi_l, const PlasmaParams& p = {});

struct Residuals {
  double poisson = 0, poisson_pointwise = 0, energy = 0, neutrality = 0;
  double characteristics_plus = 0, characteristics_minus = 0;
  double density_plus = 0, density_minus = 0;
};
Residuals verify_all(const WaveProfile& prof, int characteristic_samples = 2000);

struct TrainExample {
  FamilyMember member;
  WaveProfile profile;
  double period_functional = 0;
  Residuals residuals{};
};
TrainExample example_train(double beta = 1, double tau = 1, const PlasmaParams& p = {},
                           const ProfileSettings& s = {});

}  // namespace vpw
