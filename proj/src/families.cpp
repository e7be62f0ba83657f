#include "vpw/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "vpw/kernels.hpp"

namespace vpw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

FamilyMember finish(std::string family, SagdeevPotential pot, const ConditionSettings& cs) {
  FamilyMember m{std::move(family), pot};
  m.beta = pot.amplitude();
  m.report = check_exists(pot, cs);
  if (!m.report.exists()) throw ConditionFailure(m.report);
  return m;
}

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * (i + 1) / n;  // (a, b]
  x.back() = b;
  return x;
}

// cumulative weight (2e+/q+) int_alpha^x G (xi-alpha)^2 for piecewise G
double weight_to(const Marginal& g, double alpha, double x, double pref) {
  double w = 0;
  for (const auto& pc : g.pieces()) {
    double lo = std::max(pc.lo, alpha), hi = std::min(pc.hi, x);
    if (hi <= lo) continue;
    w += pref * pc.height * (std::pow(hi - alpha, 3) - std::pow(lo - alpha, 3)) / 3;
  }
  return w;
}

// x with weight_to(x) = target, x in (alpha, cap)
double weight_quantile(const Marginal& g, double alpha, double cap, double target, double pref) {
  double acc = 0;
  for (const auto& pc : g.pieces()) {
    double lo = std::max(pc.lo, alpha), hi = std::min(pc.hi, cap);
    if (hi <= lo || pc.height <= 0) continue;
    double a3 = std::pow(lo - alpha, 3), b3 = std::pow(hi - alpha, 3);
    double w = pref * pc.height * (b3 - a3) / 3;
    if (acc + w >= target) {
      double c3 = a3 + 3 * (target - acc) / (pref * pc.height);
      return alpha + std::cbrt(std::min(c3, b3));
    }
    acc += w;
  }
  return cap;
}

}  // namespace

TrappedSplit split_trapped(const TrappedMarginal& G, const PlasmaParams& p, double beta, double tau) {
  if (!(tau > 0 && tau < 0.5)) throw std::invalid_argument("perturbation parameter tau must lie in (0, 1/2)");
  const Marginal& g = G.marginal();
  if (g.kind() != Marginal::Kind::piecewise)
    throw std::invalid_argument("perturbation needs a piecewise trapped marginal");
  const double a = p.alpha, cap = a + std::sqrt(2 * p.q_plus * beta);
  const double pref = 2 * p.e_plus / p.q_plus;
  TrappedSplit s;
  s.A = weight_to(g, a, cap, pref);
  if (!(s.A > 0)) throw std::domain_error("no trapped mass to perturb");
  s.alpha_star = weight_quantile(g, a, cap, tau * s.A, pref);
  s.alpha_zero = weight_quantile(g, a, cap, 2 * tau * s.A, pref);
  std::vector<Piece> out;
  for (const auto& pc : g.pieces()) {
    // cut each piece at alpha* and alpha0; drop (alpha, alpha*), double (alpha*, alpha0)
    double cuts[] = {pc.lo, std::clamp(s.alpha_star, pc.lo, pc.hi), std::clamp(s.alpha_zero, pc.lo, pc.hi), pc.hi};
    for (int k = 0; k < 3; ++k) {
      if (cuts[k + 1] <= cuts[k]) continue;
      double mid = 0.5 * (cuts[k] + cuts[k + 1]);
      double h = pc.height;
      if (mid > a && mid < s.alpha_star) h = 0;
      else if (mid > s.alpha_star && mid < s.alpha_zero) h *= 2;
      if (h != 0) out.push_back({cuts[k], cuts[k + 1], h});
    }
  }
  s.g_tilde = Marginal::piecewise(std::move(out));
  return s;
}

FamilyMember solitary_perturb(const SagdeevPotential& base, double tau, const ConditionSettings& cs) {
  if (base.kind() != WaveKind::solitary) throw std::invalid_argument("perturbation applies to solitary waves");
  if (!base.trapped()) throw std::domain_error("no trapped mass to perturb");
  const auto& p = base.params();
  const double beta = base.amplitude();
  auto split = split_trapped(*base.trapped(), p, beta, tau);
  auto pot = base.with_trapped(TrappedMarginal(split.g_tilde, p.alpha), beta);
  // V0(beta; beta, H_tau) = 0 and V(.; G~) >= V(.; G) on [0, beta]
  const double scale = std::max(1.0, std::abs(base.v_trapped(beta)));
  if (std::abs(pot.v_trapped(beta) - base.v_trapped(beta)) > 1e-10 * scale)
    throw NumericalError("perturbation changed V at beta");
  for (double phi : grid(0, beta, 512))
    if (pot.value(phi) < base.value(phi) - 1e-10 * scale) throw NumericalError("perturbation lowered V");
  auto m = finish("perturb", pot, cs);
  m.tau = tau;
  return m;
}

namespace {

struct InjectSetup {
  double beta, sharp, star, k;
};

InjectSetup inject_setup(const SagdeevPotential& base, const ConditionSettings& cs, std::optional<double> star_override,
                         Uniqueness want) {
  if (base.kind() != WaveKind::solitary) throw std::invalid_argument("trapped-ion injection applies to solitary waves");
  auto u = classify_uniqueness(base, cs, star_override);
  if (u.classification != want) {
    throw std::domain_error("classification mismatch: expected " + to_string(want) + ", found " +
                            to_string(u.classification));
  }
  return {base.amplitude(), u.beta_sharp, u.beta_star, -base.dv_infinity(u.beta_sharp)};
}

}  // namespace

FamilyMember solitary_inject_case_b(const SagdeevPotential& base, const ConditionSettings& cs,
                                    std::optional<double> beta_star_override) {
  auto st = inject_setup(base, cs, beta_star_override, Uniqueness::nonunique_b);
  const auto& p = base.params();
  const double upper = std::min(st.sharp + st.beta, st.star);
  const Marginal box = Marginal::box(p.alpha, p.alpha + std::sqrt(2 * p.q_plus * st.sharp),
                                     1 / (2 * std::sqrt(2 * p.q_plus) * p.e_plus));
  double d = 0.99 * (upper - st.sharp);
  for (int it = 0; it < 60; ++it, d *= 0.5) {
    const double bt = st.sharp + d;
    const double vinf_bt = base.v_infinity(bt);
    if (!(vinf_bt < 0)) continue;
    auto pts = grid(st.sharp, bt, 512);
    bool ok = true;
    for (double phi : pts) {
      if (base.v_infinity(phi) < -st.sharp * st.k / 6 || base.dv_infinity(phi) > -0.5 * st.k) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    auto with_h = base.with_trapped(TrappedMarginal(box, p.alpha), bt);
    const double lambda = -vinf_bt / with_h.v_trapped(bt);
    auto pot = base.with_trapped(TrappedMarginal(box.scaled(lambda), p.alpha), bt);
    for (double phi : pts)
      if (pot.slope(phi) > -0.25 * st.k) {
        ok = false;
        break;
      }
    if (!ok) continue;
    auto m = finish("inject-b", pot, cs);
    m.lambda = lambda;
    return m;
  }
  throw NumericalError("inject-b: no admissible beta~ found by shrinking");
}

FamilyMember solitary_inject_case_c(const SagdeevPotential& base, const ConditionSettings& cs,
                                    std::optional<double> beta_star_override) {
  auto st = inject_setup(base, cs, beta_star_override, Uniqueness::nonunique_c);
  const auto& p = base.params();
  double b1 = st.sharp + st.beta;
  if (std::isfinite(st.star)) b1 = std::min(b1, st.sharp + 0.99 * (st.star - st.sharp));
  if (!(base.v_infinity(b1) < 0)) throw NumericalError("inject-c: V_inf not negative below beta*");
  // beta~ = argmin of W = V_inf / (Phi - beta#) on (beta#, b1]
  auto W = [&](double phi) { return base.v_infinity(phi) / (phi - st.sharp); };
  auto pts = grid(st.sharp, b1, 512);
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (W(pts[i]) < W(pts[best])) best = i;
  double bt = pts[best];
  if (best + 1 < pts.size()) {
    double lo = best == 0 ? st.sharp + 1e-3 * (pts[0] - st.sharp) : pts[best - 1];
    bt = golden_min(W, lo, pts[best + 1], 1e-12 * b1);
    if (W(pts[best]) < W(bt)) bt = pts[best];
  }
  const double beta = st.beta;
  if (!(bt > beta)) throw NumericalError("inject-c: beta~ must exceed beta");
  const Marginal box = Marginal::box(p.alpha + std::sqrt(2 * p.q_plus * (bt - beta)),
                                     p.alpha + std::sqrt(2 * p.q_plus * (bt - 0.5 * beta)),
                                     1 / (2 * p.e_plus * std::sqrt(2 * p.q_plus)));
  auto with_h = base.with_trapped(TrappedMarginal(box, p.alpha), bt);
  // V0(.; beta~, H) is concave on (beta#, beta~)
  {
    const int n = 64;
    const double h = (bt - st.sharp) / n;
    const double scale = std::max(1.0, with_h.v_trapped(bt));
    for (int i = 1; i < n; ++i) {
      double x = st.sharp + i * h;
      double d2 = with_h.v_trapped(x + h) - 2 * with_h.v_trapped(x) + with_h.v_trapped(x - h);
      if (d2 > 1e-12 * scale) throw NumericalError("inject-c: V0 not concave past beta#");
    }
  }
  const double lambda = -base.v_infinity(bt) / with_h.v_trapped(bt);
  auto pot = base.with_trapped(TrappedMarginal(box.scaled(lambda), p.alpha), bt);
  auto m = finish("inject-c", pot, cs);
  m.lambda = lambda;
  return m;
}

double f_tau(double tau, double phi) { return tau / (std::sqrt(phi + tau) + std::sqrt(phi)); }

FamilyMember train_box_family(const PlasmaParams& p, double beta, double tau, const ConditionSettings& cs) {
  if (!(tau > 0) || !(beta > 0)) throw std::invalid_argument("train-box needs tau > 0 and beta > 0");
  const double a = p.alpha;
  const double rp = std::sqrt(2 * p.q_plus * tau);
  Marginal hp = Marginal::box(a - rp, a + rp, 1 / (2 * p.e_plus * std::sqrt(2 * p.q_plus)));
  const double in = std::sqrt(2 * p.q_minus * beta), out = std::sqrt(2 * p.q_minus * (beta + tau));
  const double hm = 1 / (2 * p.e_minus * std::sqrt(2 * p.q_minus));
  Marginal hmin = Marginal::piecewise({{a - out, a - in, hm}, {a + in, a + out, hm}});
  auto pot = SagdeevPotential::train(p, hp, hmin, std::nullopt, beta);
  auto m = finish("train-box", pot, cs);
  m.tau = tau;
  m.period = period(pot);
  return m;
}

FamilyMember rescale_to_period(const FamilyMember& m, double gamma_target, const ProfileSettings& s) {
  if (!(gamma_target > 0)) throw std::invalid_argument("target period must be positive");
  if (m.potential.kind() != WaveKind::train) throw std::invalid_argument("rescaling applies to wave trains");
  const double g = m.period > 0 ? m.period : period(m.potential, s);
  const double c = (g / gamma_target) * (g / gamma_target);
  FamilyMember out = m;
  out.potential = m.potential.scaled(c);
  out.scale = m.scale * c;
  out.report = check_exists(out.potential, s.conditions);
  if (!out.report.exists()) throw ConditionFailure(out.report);
  out.period = period(out.potential, s);
  return out;
}

// ---- Boltzmann trains ----

double boltzmann_tau_star(double kappa) { return 1 / (10 * kappa); }

namespace {

void check_box(double tau, double beta, double kappa) {
  if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
  const double top = boltzmann_tau_star(kappa) * (1 + 1e-12);
  if (!(tau > 0 && tau <= top && beta > 0 && beta <= top))
    throw std::domain_error("(tau, beta) outside (0, 1/(10 kappa)]^2");
}

// Vt+ = (Phi+tau)^1.5 - Phi^1.5 - tau^1.5
double vplus(double tau, double phi) { return pow15_diff(phi + tau, tau, phi) - phi * std::sqrt(phi); }

double a_unchecked(double tau, double beta, double kappa) { return -std::expm1(-kappa * beta) / vplus(tau, beta); }

// Vt at Phi = beta - s, both supplied so neither end loses digits
double v_split(double tau, double beta, double kappa, double A, double phi, double s) {
  if (phi <= s) return A * vplus(tau, phi) + std::expm1(-kappa * phi);
  double dplus = pow15_diff(beta + tau, phi + tau, s) - pow15_diff(beta, phi, s);
  double dminus = std::exp(-kappa * beta) * std::expm1(kappa * s);
  return -(A * dplus - dminus);
}

const PlasmaParams& with_boltzmann(const PlasmaParams& p) {
  if (!p.boltzmann) throw std::invalid_argument("Boltzmann constants (rho, kappa) are required");
  return p;
}

}  // namespace

double boltzmann_a(double tau, double beta, double kappa) {
  check_box(tau, beta, kappa);
  return a_unchecked(tau, beta, kappa);
}

double boltzmann_v_tilde(double tau, double beta, double kappa, double phi) {
  check_box(tau, beta, kappa);
  if (!(phi >= 0 && phi <= beta)) throw std::domain_error("Phi outside [0, beta]");
  return v_split(tau, beta, kappa, a_unchecked(tau, beta, kappa), phi, beta - phi);
}

double boltzmann_gamma_tilde(double tau, double beta, double kappa) {
  check_box(tau, beta, kappa);
  const double A = a_unchecked(tau, beta, kappa);
  // Psi = sin^2 t removes both inverse square roots
  auto f = [&](double t) {
    double sn = std::sin(t), cs = std::cos(t);
    double v = v_split(tau, beta, kappa, A, beta * sn * sn, beta * cs * cs);
    return 2 * beta * 2 * sn * cs / std::sqrt(v);
  };
  QuadratureSettings qs;
  qs.rel_tol = 1e-13;
  qs.abs_tol = 0;
  return integrate(f, 0, std::numbers::pi / 2, qs);
}

std::vector<double> gamma_tilde_sweep(const std::vector<double>& taus, const std::vector<double>& betas,
                                      double kappa) {
  if (taus.size() != betas.size()) throw std::invalid_argument("sweep needs equal-length tau and beta lists");
  std::vector<double> idx(taus.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
  return map_values(
      [&](double i) {
        auto k = static_cast<std::size_t>(i);
        return boltzmann_gamma_tilde(taus[k], betas[k], kappa);
      },
      idx);
}

std::vector<double> gamma_tilde_sweep_serial(const std::vector<double>& taus, const std::vector<double>& betas,
                                             double kappa) {
  if (taus.size() != betas.size()) throw std::invalid_argument("sweep needs equal-length tau and beta lists");
  std::vector<double> out(taus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = boltzmann_gamma_tilde(taus[i], betas[i], kappa);
  return out;
}

double boltzmann_period_factor(const PlasmaParams& p) {
  const auto& b = *with_boltzmann(p).boltzmann;
  return std::sqrt(b.kappa / (2 * p.e_minus * b.rho));
}

double boltzmann_gamma_star(const PlasmaParams& p) {
  const double k = with_boltzmann(p).boltzmann->kappa;
  const double ts = boltzmann_tau_star(k);
  return boltzmann_gamma_tilde(ts, ts, k) * boltzmann_period_factor(p);
}

FamilyMember boltzmann_member(const PlasmaParams& p, double tau, double beta, const ConditionSettings& cs) {
  const auto& b = *with_boltzmann(p).boltzmann;
  const double A = boltzmann_a(tau, beta, b.kappa);
  const double h = 3 * p.e_minus * b.rho * A / (2 * b.kappa * p.e_plus * std::sqrt(2 * p.q_plus));
  Marginal hp = Marginal::box(p.alpha, p.alpha + std::sqrt(2 * p.q_plus * tau), h);
  Marginal hm = Marginal::maxwellian(b.rho, p.alpha, b.kappa, p.q_minus);
  auto pot = SagdeevPotential::train(p, hp, hm, std::nullopt, beta);
  auto m = finish("boltzmann-match", pot, cs);
  m.tau = tau;
  m.period = period(pot);
  return m;
}

std::vector<FamilyMember> boltzmann_train_match(const PlasmaParams& p, double gamma_target, int count,
                                                const ConditionSettings& cs) {
  const double kappa = with_boltzmann(p).boltzmann->kappa;
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  if (!(gamma_target > 0)) throw std::invalid_argument("target period must be positive");
  const double ts = boltzmann_tau_star(kappa);
  const double factor = boltzmann_period_factor(p);
  const double gs = boltzmann_gamma_tilde(ts, ts, kappa);
  const double target = gamma_target / factor;
  if (target > gs * (1 + 1e-12)) throw std::domain_error("target period above the constructive range");

  // delta: shrink until the left end of (tau* - delta, tau*] still overshoots
  double delta = ts / 2;
  if (count > 1) {
    int it = 0;
    while (boltzmann_gamma_tilde(ts - delta, ts, kappa) <= target) {
      delta *= 0.5;
      if (++it > 60) throw NumericalError("no tau window above the target period");
    }
  }
  std::vector<double> taus(count), betas(count);
  for (int i = 0; i < count; ++i) taus[i] = ts - delta * i / count;

  for (int i = 0; i < count; ++i) {
    const double tau = taus[i];
    auto f = [&](double beta) { return boltzmann_gamma_tilde(tau, beta, kappa) - target; };
    const double fhi = f(ts);
    if (std::abs(fhi) <= 1e-14 * target) {
      betas[i] = ts;
      continue;
    }
    // gamma_tilde -> 0 as beta -> 0 gives the lower end of the bracket
    double lo = ts / 10;
    int it = 0;
    while (f(lo) >= 0) {
      lo /= 10;
      if (++it > 14) throw NumericalError("no bracket for the period match");
    }
    betas[i] = bisect(f, lo, ts, 1e-15 * ts);
  }

  std::vector<FamilyMember> out;
  for (int i = 0; i < count; ++i) out.push_back(boltzmann_member(p, taus[i], betas[i], cs));
  return out;
}

}  // namespace vpw
