#include "vpw/sagdeev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "folded.hpp"

namespace vpw {

std::string to_string(WaveKind k) {
  switch (k) {
    case WaveKind::solitary: return "solitary";
    case WaveKind::shock: return "shock";
    case WaveKind::train: return "train";
  }
  return "?";
}

WaveKind wave_kind_from_string(const std::string& s) {
  if (s == "solitary") return WaveKind::solitary;
  if (s == "shock") return WaveKind::shock;
  if (s == "train") return WaveKind::train;
  throw std::invalid_argument("unknown wave kind '" + s + "'");
}

struct SagdeevPotential::State {
  WaveKind kind = WaveKind::solitary;
  PlasmaParams p;
  double amplitude = 0;
  QuadratureSettings qs;
  std::optional<Marginal> g_plus, g_minus;
  std::optional<TrappedMarginal> G;
  detail::Folded fp, fm, fG;
  std::optional<PotentialCurve> background;  // replaces the marginal V_infinity
  std::optional<PotentialCurve> whole;       // synthetic V

  void fold() {
    if (g_plus) fp = detail::Folded(*g_plus, p.alpha);
    if (g_minus) fm = detail::Folded(*g_minus, p.alpha);
    fG = G ? detail::Folded(G->marginal(), p.alpha) : detail::Folded();
  }
};

namespace {

void check_amplitude(double a) {
  if (!(a > 0) || !std::isfinite(a)) throw std::invalid_argument("wave amplitude must be positive and finite");
}

void check_trapped_alpha(const std::optional<TrappedMarginal>& G, const PlasmaParams& p) {
  if (G && G->alpha() != p.alpha) throw std::invalid_argument("trapped marginal built for a different alpha");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

SagdeevPotential SagdeevPotential::solitary(const PlasmaParams& p, Marginal g_plus, Marginal g_minus,
                                            std::optional<TrappedMarginal> G, double beta,
                                            const QuadratureSettings& qs) {
  p.validate();
  qs.validate();
  check_amplitude(beta);
  check_trapped_alpha(G, p);
  auto s = std::make_shared<State>();
  s->kind = WaveKind::solitary;
  s->p = p;
  s->amplitude = beta;
  s->qs = qs;
  s->g_plus = std::move(g_plus);
  s->g_minus = std::move(g_minus);
  s->G = std::move(G);
  s->fold();
  return SagdeevPotential(s);
}

SagdeevPotential SagdeevPotential::train(const PlasmaParams& p, Marginal h_plus, Marginal h_minus,
                                         std::optional<TrappedMarginal> G, double beta, const QuadratureSettings& qs) {
  auto pot = solitary(p, std::move(h_plus), std::move(h_minus), std::move(G), beta, qs);
  auto s = std::make_shared<State>(*pot.s_);
  s->kind = WaveKind::train;
  return SagdeevPotential(s);
}

SagdeevPotential SagdeevPotential::shock(const PlasmaParams& p, Marginal gl_plus, Marginal gr_minus, double phi_l,
                                         const QuadratureSettings& qs) {
  p.validate();
  qs.validate();
  check_amplitude(phi_l);
  auto s = std::make_shared<State>();
  s->kind = WaveKind::shock;
  s->p = p;
  s->amplitude = phi_l;
  s->qs = qs;
  s->g_plus = std::move(gl_plus);
  s->g_minus = std::move(gr_minus);
  s->fold();
  return SagdeevPotential(s);
}

SagdeevPotential SagdeevPotential::with_background(WaveKind kind, const PlasmaParams& p, PotentialCurve v_inf,
                                                   std::optional<TrappedMarginal> G, double beta,
                                                   const QuadratureSettings& qs) {
  if (kind == WaveKind::shock) throw std::invalid_argument("a supplied background applies to solitary/train kinds");
  if (!v_inf.value || !v_inf.slope) throw std::invalid_argument("background curve needs value and slope");
  p.validate();
  qs.validate();
  check_amplitude(beta);
  check_trapped_alpha(G, p);
  auto s = std::make_shared<State>();
  s->kind = kind;
  s->p = p;
  s->amplitude = beta;
  s->qs = qs;
  s->G = std::move(G);
  s->background = std::move(v_inf);
  s->fold();
  return SagdeevPotential(s);
}

SagdeevPotential SagdeevPotential::synthetic(WaveKind kind, double amplitude, PotentialCurve v) {
  check_amplitude(amplitude);
  if (!v.value || !v.slope) throw std::invalid_argument("synthetic curve needs value and slope");
  auto s = std::make_shared<State>();
  s->kind = kind;
  s->amplitude = amplitude;
  s->whole = std::move(v);
  return SagdeevPotential(s);
}

WaveKind SagdeevPotential::kind() const { return s_->kind; }
double SagdeevPotential::amplitude() const { return s_->amplitude; }
const PlasmaParams& SagdeevPotential::params() const { return s_->p; }
const QuadratureSettings& SagdeevPotential::quadrature() const { return s_->qs; }
bool SagdeevPotential::is_synthetic() const { return s_->whole.has_value(); }
bool SagdeevPotential::has_marginals() const { return s_->g_plus.has_value() && s_->g_minus.has_value(); }
const std::optional<TrappedMarginal>& SagdeevPotential::trapped() const { return s_->G; }

const Marginal& SagdeevPotential::g_plus() const {
  if (!s_->g_plus) throw std::logic_error("potential carries no plus-species marginal");
  return *s_->g_plus;
}
const Marginal& SagdeevPotential::g_minus() const {
  if (!s_->g_minus) throw std::logic_error("potential carries no minus-species marginal");
  return *s_->g_minus;
}

double SagdeevPotential::v_infinity(double phi) const {
  const auto& s = *s_;
  if (!(phi >= 0)) throw std::domain_error("v_infinity: Phi must be >= 0");
  if (s.whole) throw std::logic_error("v_infinity is not defined for a synthetic potential");
  if (s.kind == WaveKind::shock) throw std::logic_error("v_infinity is not defined for shocks");
  if (s.background) return s.background->value(phi);
  const auto& p = s.p;
  return p.e_plus / p.q_plus * s.fp.a_plus(2 * p.q_plus * phi, s.qs, Method::automatic) -
         p.e_minus / p.q_minus * s.fm.a_minus(2 * p.q_minus * phi, s.qs, Method::automatic);
}

double SagdeevPotential::dv_infinity(double phi) const {
  const auto& s = *s_;
  if (!(phi >= 0)) throw std::domain_error("dv_infinity: Phi must be >= 0");
  if (s.whole) throw std::logic_error("dv_infinity is not defined for a synthetic potential");
  if (s.kind == WaveKind::shock) throw std::logic_error("dv_infinity is not defined for shocks");
  if (s.background) return s.background->slope(phi);
  const auto& p = s.p;
  return p.e_plus * s.fp.k_plus(2 * p.q_plus * phi, s.qs, Method::automatic) -
         p.e_minus * s.fm.k_minus(2 * p.q_minus * phi, s.qs, Method::automatic);
}

double SagdeevPotential::v_trapped(double phi) const {
  const auto& s = *s_;
  if (!(phi >= 0 && phi <= s.amplitude)) throw std::domain_error("v_trapped: Phi outside [0, beta]");
  if (!s.G || phi == 0) return 0.0;
  const auto& p = s.p;
  return 2 * p.e_plus / p.q_plus *
         s.fG.a_shift(2 * p.q_plus * (s.amplitude - phi), std::sqrt(2 * p.q_plus * s.amplitude), s.qs,
                      Method::automatic);
}

double SagdeevPotential::value(double phi) const {
  const auto& s = *s_;
  if (!(phi >= 0 && phi <= s.amplitude)) throw std::domain_error("V: Phi outside [0, amplitude]");
  if (s.whole) return s.whole->value(phi);
  if (s.kind == WaveKind::shock) {
    const auto& p = s.p;
    return p.e_plus / p.q_plus *
               s.fp.a_shock(2 * p.q_plus * (s.amplitude - phi), 2 * p.q_plus * s.amplitude, s.qs, Method::automatic) -
           p.e_minus / p.q_minus * s.fm.a_minus(2 * p.q_minus * phi, s.qs, Method::automatic);
  }
  return v_infinity(phi) + v_trapped(phi);
}

double SagdeevPotential::slope(double phi) const {
  const auto& s = *s_;
  if (!(phi >= 0 && phi <= s.amplitude)) throw std::domain_error("dV: Phi outside [0, amplitude]");
  if (s.whole) return s.whole->slope(phi);
  const auto& p = s.p;
  if (s.kind == WaveKind::shock)
    return p.e_plus * s.fp.k_minus(2 * p.q_plus * (s.amplitude - phi), s.qs, Method::automatic) -
           p.e_minus * s.fm.k_minus(2 * p.q_minus * phi, s.qs, Method::automatic);
  double trapped = s.G ? p.e_plus * s.fG.k_trapped(2 * p.q_plus * (s.amplitude - phi),
                                                   std::sqrt(2 * p.q_plus * s.amplitude), s.qs, Method::automatic)
                       : 0.0;
  return dv_infinity(phi) + trapped;
}

double SagdeevPotential::rho_plus(double phi) const {
  const auto& s = *s_;
  if (!(phi >= 0 && phi <= s.amplitude)) throw std::domain_error("rho_plus: Phi outside [0, amplitude]");
  if (s.whole || !s.g_plus) return kNaN;
  const auto& p = s.p;
  if (s.kind == WaveKind::shock) return s.fp.k_minus(2 * p.q_plus * (s.amplitude - phi), s.qs, Method::automatic);
  double trapped = s.G ? s.fG.k_trapped(2 * p.q_plus * (s.amplitude - phi), std::sqrt(2 * p.q_plus * s.amplitude),
                                        s.qs, Method::automatic)
                       : 0.0;
  return s.fp.k_plus(2 * p.q_plus * phi, s.qs, Method::automatic) + trapped;
}

double SagdeevPotential::rho_minus(double phi) const {
  const auto& s = *s_;
  if (!(phi >= 0 && phi <= s.amplitude)) throw std::domain_error("rho_minus: Phi outside [0, amplitude]");
  if (s.whole || !s.g_minus) return kNaN;
  return s.fm.k_minus(2 * s.p.q_minus * phi, s.qs, Method::automatic);
}

std::vector<double> SagdeevPotential::phi_breakpoints() const {
  const auto& s = *s_;
  std::vector<double> out;
  if (s.whole) return out;
  const auto& p = s.p;
  const double a = s.amplitude;
  auto keep = [&](double x) {
    if (x > 0 && x < a) out.push_back(x);
  };
  for (double u : s.fm.cuts()) keep(u * u / (2 * p.q_minus));
  if (s.kind == WaveKind::shock) {
    for (double u : s.fp.cuts()) keep(a - u * u / (2 * p.q_plus));
  } else {
    const double cap = std::sqrt(2 * p.q_plus * a);
    for (double u : s.fG.cuts())
      if (u <= cap) keep(a - u * u / (2 * p.q_plus));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SagdeevPotential SagdeevPotential::with_trapped(std::optional<TrappedMarginal> G, double beta) const {
  if (s_->whole || s_->kind == WaveKind::shock)
    throw std::logic_error("with_trapped needs a solitary/train potential with a background");
  check_amplitude(beta);
  check_trapped_alpha(G, s_->p);
  auto s = std::make_shared<State>(*s_);
  s->G = std::move(G);
  s->amplitude = beta;
  s->fold();
  return SagdeevPotential(s);
}

SagdeevPotential SagdeevPotential::scaled(double c) const {
  if (!(c > 0) || !std::isfinite(c)) throw std::invalid_argument("scale factor must be positive");
  auto s = std::make_shared<State>(*s_);
  if (s->g_plus) s->g_plus = s->g_plus->scaled(c);
  if (s->g_minus) s->g_minus = s->g_minus->scaled(c);
  if (s->G) s->G = s->G->scaled(c);
  auto wrap = [c](const PotentialCurve& v) {
    return PotentialCurve{[f = v.value, c](double x) { return c * f(x); },
                          [f = v.slope, c](double x) { return c * f(x); }};
  };
  if (s->background) s->background = wrap(*s->background);
  if (s->whole) s->whole = wrap(*s->whole);
  s->fold();
  return SagdeevPotential(s);
}

double v_infinity(const Marginal& g_plus, const Marginal& g_minus, const PlasmaParams& p, double phi,
                  const QuadratureSettings& qs, Method m) {
  if (!(phi >= 0)) throw std::domain_error("v_infinity: Phi must be >= 0");
  return p.e_plus / p.q_plus * detail::Folded(g_plus, p.alpha).a_plus(2 * p.q_plus * phi, qs, m) -
         p.e_minus / p.q_minus * detail::Folded(g_minus, p.alpha).a_minus(2 * p.q_minus * phi, qs, m);
}

double v_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double phi,
                 const QuadratureSettings& qs, Method m) {
  if (!(beta > 0)) throw std::domain_error("v_trapped: beta must be positive");
  if (!(phi >= 0 && phi <= beta)) throw std::domain_error("v_trapped: Phi outside [0, beta]");
  if (phi == 0) return 0.0;
  return 2 * p.e_plus / p.q_plus *
         detail::Folded(G.marginal(), p.alpha).a_shift(2 * p.q_plus * (beta - phi), std::sqrt(2 * p.q_plus * beta), qs, m);
}

double v_shock(const Marginal& gl_plus, const Marginal& gr_minus, const PlasmaParams& p, double phi_l, double phi,
               const QuadratureSettings& qs, Method m) {
  if (!(phi_l > 0)) throw std::domain_error("v_shock: Phi_l must be positive");
  if (!(phi >= 0 && phi <= phi_l)) throw std::domain_error("v_shock: Phi outside [0, Phi_l]");
  return p.e_plus / p.q_plus *
             detail::Folded(gl_plus, p.alpha).a_shock(2 * p.q_plus * (phi_l - phi), 2 * p.q_plus * phi_l, qs, m) -
         p.e_minus / p.q_minus * detail::Folded(gr_minus, p.alpha).a_minus(2 * p.q_minus * phi, qs, m);
}

double v_total(const SagdeevPotential& pot, double phi) { return pot.value(phi); }
double dv(const SagdeevPotential& pot, double phi) { return pot.slope(phi); }

}  // namespace vpw
