#include "vpw/examples.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vpw {

namespace {

void require_alpha_zero(const PlasmaParams& p) {
  if (p.alpha != 0) throw std::invalid_argument("the worked examples use alpha = 0");
}

}  // namespace

Marginal solitary_example_g_plus(const PlasmaParams& p) {
  require_alpha_zero(p);
  const double r = std::sqrt(2 * p.q_plus), h = 1 / (2 * p.e_plus * r);
  return Marginal::piecewise({{-2 * r, -r, h}, {r, 2 * r, h}});
}

Marginal solitary_example_g_minus(const PlasmaParams& p) {
  require_alpha_zero(p);
  const double r = std::sqrt(2 * p.q_minus), h = 1 / (2 * p.e_minus * r);
  return Marginal::piecewise({{-1.9 * r, -r, h}, {-0.1 * r, 0.1 * r, h}, {r, 1.9 * r, h}});
}

SolitaryExample example_solitary(const PlasmaParams& p) {
  p.validate();
  auto gp = solitary_example_g_plus(p), gm = solitary_example_g_minus(p);
  // V_inf does not depend on the amplitude; any beta serves for the search
  auto probe = SagdeevPotential::solitary(p, gp, gm, std::nullopt, 1.0);
  auto rho = [&](double phi) { return probe.dv_infinity(phi); };
  auto vinf = [&](double phi) { return probe.v_infinity(phi); };
  const double b0 = bisect(rho, 0.01, 1.0);
  const double b1 = bisect(vinf, b0, 1.0);
  auto pot = SagdeevPotential::solitary(p, gp, gm, std::nullopt, b1);
  SolitaryExample ex{pot};
  ex.beta0 = b0;
  ex.beta1 = b1;
  ex.rho_at_0 = rho(0);
  ex.rho_at_hundredth = rho(0.01);
  ex.rho_at_1 = rho(1);
  ex.report = check_exists(pot);
  ex.uniqueness = classify_uniqueness(pot);
  return ex;
}

ShockEndStates shock_example_states(const PlasmaParams& p, double phi_l) {
  require_alpha_zero(p);
  if (!(phi_l > 0)) throw std::invalid_argument("Phi_l must be positive");
  auto outer = [&](double q, double e) {
    const double r = std::sqrt(q * phi_l), h = 1 / (2 * e * std::sqrt(q));
    return Marginal::piecewise({{-1.5 * r, -r, h}, {r, 1.5 * r, h}});
  };
  auto inner = [&](double q, double e) {
    const double r = std::sqrt(q * phi_l);
    return Marginal::box(-0.5 * r, 0.5 * r, 1 / (2 * e * std::sqrt(q)));
  };
  return {outer(p.q_plus, p.e_plus), inner(p.q_plus, p.e_plus), inner(p.q_minus, p.e_minus),
          outer(p.q_minus, p.e_minus)};
}

ShockExample example_shock(double phi_l, const PlasmaParams& p) {
  p.validate();
  auto ends = shock_example_states(p, phi_l);
  auto pot = SagdeevPotential::shock(p, ends.gl_plus, ends.gr_minus, phi_l);
  ShockExample ex{pot, ends, phi_l};
  ex.masses[0] = p.e_plus * ends.gl_plus.mass();
  ex.masses[1] = p.e_plus * ends.gr_plus.mass();
  ex.masses[2] = p.e_minus * ends.gl_minus.mass();
  ex.masses[3] = p.e_minus * ends.gr_minus.mass();
  ex.alpha = compute_alpha(ends.gl_plus, ends.gr_plus);
  ex.matching = check_shock_matching(ends.gl_plus, ends.gr_plus, ends.gl_minus, ends.gr_minus, p, phi_l);
  for (int i = 0; i <= 100; ++i) {
    double phi = phi_l * i / 100;
    double mirror = i == 100 ? 0.0 : phi_l * (100 - i) / 100;
    ex.max_symmetry_defect = std::max(ex.max_symmetry_defect, std::abs(pot.value(phi) - pot.value(mirror)));
  }
  ex.report = check_exists(pot, ends);
  return ex;
}

Residuals verify_all(const WaveProfile& prof, int characteristic_samples) {
  Residuals r;
  auto pr = verify_poisson(prof);
  r.poisson = pr.max_rel;
  r.poisson_pointwise = pr.max_pointwise;
  r.energy = energy_residual(prof);
  r.neutrality = verify_neutrality(prof);
  if (!prof.potential().has_marginals()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.characteristics_plus = r.characteristics_minus = r.density_plus = r.density_minus = nan;
    return r;
  }
  auto dp = reconstruct(prof, Species::plus);
  auto dm = reconstruct(prof, Species::minus);
  r.characteristics_plus = verify_characteristics(dp, prof, characteristic_samples);
  r.characteristics_minus = verify_characteristics(dm, prof, characteristic_samples);
  r.density_plus = density_recovery(prof, Species::plus, 101);
  r.density_minus = density_recovery(prof, Species::minus, 101);
  return r;
}

TrainExample example_train(double beta, double tau, const PlasmaParams& p, const ProfileSettings& s) {
  p.validate();
  auto m = train_box_family(p, beta, tau, s.conditions);
  auto prof = build_train(m.potential, s);
  TrainExample ex{m, prof};
  ex.period_functional = period(m.potential, s);
  ex.residuals = verify_all(prof);
  return ex;
}

}  // namespace vpw
