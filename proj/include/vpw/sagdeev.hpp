#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vpw/core_model.hpp"
#include "vpw/densities.hpp"
#include "vpw/numerics.hpp"

namespace vpw {

enum class WaveKind { solitary, shock, train };

std::string to_string(WaveKind k);
WaveKind wave_kind_from_string(const std::string& s);

struct PotentialCurve {
  ScalarFn value;
  ScalarFn slope;
};

// Immutable evaluator of V(Phi) and dV/dPhi for one wave.
class SagdeevPotential {
 public:
  // g_plus = F+inf, g_minus = F-inf
  static SagdeevPotential solitary(const PlasmaParams& p, Marginal g_plus, Marginal g_minus,
                                   std::optional<TrappedMarginal> G, double beta, const QuadratureSettings& qs = {});
  // g_plus = H+, g_minus = H-
  static SagdeevPotential train(const PlasmaParams& p, Marginal h_plus, Marginal h_minus,
                                std::optional<TrappedMarginal> G, double beta, const QuadratureSettings& qs = {});
  // ions from the left state, electrons from the right state
  static SagdeevPotential shock(const PlasmaParams& p, Marginal gl_plus, Marginal gr_minus, double phi_l,
                                const QuadratureSettings& qs = {});
  // V_infinity supplied as a curve; the trapped part still comes from G
  static SagdeevPotential with_background(WaveKind kind, const PlasmaParams& p, PotentialCurve v_inf,
                                          std::optional<TrappedMarginal> G, double beta,
                                          const QuadratureSettings& qs = {});
  // the whole of V supplied as a curve (calibration and tests)
  static SagdeevPotential synthetic(WaveKind kind, double amplitude, PotentialCurve v);

  WaveKind kind() const;
  double amplitude() const;
  const PlasmaParams& params() const;
  const QuadratureSettings& quadrature() const;

  // strict range 0 <= Phi <= amplitude
  double value(double phi) const;
  double slope(double phi) const;

  // trapped-free part; any Phi >= 0 (solitary and train kinds)
  double v_infinity(double phi) const;
  double dv_infinity(double phi) const;
  // trapped part V0(Phi; beta, G), 0 <= Phi <= beta
  double v_trapped(double phi) const;

  // number densities (not charge weighted); NaN when not built from marginals
  double rho_plus(double phi) const;
  double rho_minus(double phi) const;

  // Phi values in (0, amplitude) where a density has a square-root kink
  std::vector<double> phi_breakpoints() const;

  bool is_synthetic() const;
  bool has_marginals() const;
  const Marginal& g_plus() const;
  const Marginal& g_minus() const;
  const std::optional<TrappedMarginal>& trapped() const;

  SagdeevPotential with_trapped(std::optional<TrappedMarginal> G, double beta) const;
  // every marginal (and any supplied curve) multiplied by c > 0
  SagdeevPotential scaled(double c) const;

  struct State;

 private:
  explicit SagdeevPotential(std::shared_ptr<const State> s) : s_(std::move(s)) {}
  std::shared_ptr<const State> s_;
};

double v_infinity(const Marginal& g_plus, const Marginal& g_minus, const PlasmaParams& p, double phi,
                  const QuadratureSettings& qs = {}, Method m = Method::automatic);
double v_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double phi,
                 const QuadratureSettings& qs = {}, Method m = Method::automatic);
// shock V from the left ion state and right electron state
double v_shock(const Marginal& gl_plus, const Marginal& gr_minus, const PlasmaParams& p, double phi_l, double phi,
               const QuadratureSettings& qs = {}, Method m = Method::automatic);
double v_total(const SagdeevPotential& pot, double phi);
double dv(const SagdeevPotential& pot, double phi);

}  // namespace vpw
