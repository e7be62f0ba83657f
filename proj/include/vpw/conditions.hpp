#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpw/core_model.hpp"
#include "vpw/sagdeev.hpp"

namespace vpw {

enum class TailClass { divergent, convergent, indeterminate };
enum class Endpoint { zero, amplitude };

std::string to_string(TailClass t);

struct TailReport {
  TailClass verdict = TailClass::indeterminate;
  double value = 0;     // V at the endpoint
  double slope = 0;     // dV at the endpoint
  double exponent = 0;  // fitted local exponent; NaN when no fit was needed or possible
  std::string note;
};

struct ClauseResult {
  std::string label;  // "G-beta1", "Phil2", ...
  bool ok = false;
  std::string detail;
};

struct ConditionReport {
  WaveKind kind = WaveKind::solitary;
  double amplitude = 0;
  bool quasi_neutral = true;
  bool symmetry_ok = true;
  double symmetry_delta = 0;  // witnessed symmetric half-width (inf if symmetric everywhere)
  bool positivity_ok = false;
  bool positivity_indeterminate = false;
  double min_location = 0, min_value = 0;
  bool endpoint_zero_ok = false;
  double endpoint_value = 0;
  TailReport tail_at_zero, tail_at_amplitude;
  std::vector<ClauseResult> clauses;

  bool exists() const;
  std::vector<std::string> failed_clauses() const;
};

struct ConditionSettings {
  double equilibrium_rel = 1e-10;  // equilibrium tol = equilibrium_rel * max(1, sup V)
  double slope_tol = 1e-8;
  double fit_far = 1e-3, fit_near = 1e-8;  // fit distances, fractions of the amplitude
  int fit_points = 11;
  double exponent_band = 0.1;
  int positivity_samples = 2000;
  double symmetry_tol = -1;  // kind default
  double neutrality_tol = 1e-10;
  double derivative_tol = 1e-8;
  double horizon_factor = 10;  // scan horizon for beta_sharp when beta* is infinite
  int scan_points = 4000;
};

class ConditionFailure : public std::runtime_error {
 public:
  explicit ConditionFailure(ConditionReport r);
  const ConditionReport& report() const { return report_; }

 private:
  ConditionReport report_;
};

bool check_quasineutral(const Marginal& g_plus, const Marginal& g_minus, const PlasmaParams& p, double tol = 1e-10);

struct AlphaResult {
  bool degenerate = false;
  double alpha = 0;
};
// alpha from the first-moment balance of the two end states; throws
// std::domain_error when the masses agree but the first moments do not
AlphaResult compute_alpha(const Marginal& gl, const Marginal& gr, double tol = 1e-12);

struct ShockEndStates {
  Marginal gl_plus, gr_plus, gl_minus, gr_minus;
};

// per-clause results "Flr1".."Flr6"
std::vector<ClauseResult> shock_matching_clauses(const ShockEndStates& s, const PlasmaParams& p, double phi_l,
                                                 double tol = -1);
bool check_shock_matching(const Marginal& gl_plus, const Marginal& gr_plus, const Marginal& gl_minus,
                          const Marginal& gr_minus, const PlasmaParams& p, double phi_l, double tol = -1);

// throws NumericalError("endpoint not equilibrium") when V(endpoint) is not ~0
TailReport classify_tail(const SagdeevPotential& pot, Endpoint e, const ConditionSettings& cs = {});

// never throws on a failed clause; failures are listed in the report
ConditionReport check_exists(const SagdeevPotential& pot, const ConditionSettings& cs = {});
// shocks: also checks neutrality at both ends, (Flr0) and the speed condition
ConditionReport check_exists(const SagdeevPotential& pot, const ShockEndStates& ends, const ConditionSettings& cs = {});

// inf{Phi in [0, beta*) : V_inf(Phi) < 0}, scanned on [0, min(beta*, horizon)]
double beta_sharp(const ScalarFn& v_inf, double beta_star, const ConditionSettings& cs = {},
                  double horizon = std::numeric_limits<double>::infinity());

enum class Uniqueness { unique_case_i, unique_case_ii, nonunique_a, nonunique_b, nonunique_c };
std::string to_string(Uniqueness u);

struct UniquenessVerdict {
  Uniqueness classification = Uniqueness::nonunique_a;
  double beta_star = 0;
  double beta_sharp = 0;
  double trapped_mass = 0;
  double slope_at_sharp = 0;
  std::string details;
};

// beta_star_override replaces the symmetry-derived beta* (needed for
// potentials supplied as curves)
UniquenessVerdict classify_uniqueness(const SagdeevPotential& pot, const ConditionSettings& cs = {},
                                      std::optional<double> beta_star_override = std::nullopt);

// mass of G on (alpha, alpha + cap)
double trapped_mass_below(const TrappedMarginal& G, double cap);

}  // namespace vpw
