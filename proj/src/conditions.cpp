#include "vpw/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vpw/kernels.hpp"
#include "vpw/numerics.hpp"

namespace vpw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double equilibrium_tol(double sup_v, const ConditionSettings& cs) { return cs.equilibrium_rel * std::max(1.0, sup_v); }

// sup V over interior samples, used to scale the equilibrium tolerance
double sup_v(const SagdeevPotential& pot, const ConditionSettings& cs) {
  const double a = pot.amplitude();
  double s = 0;
  const int n = std::max(64, cs.positivity_samples / 8);
  for (int i = 1; i < n; ++i) s = std::max(s, pot.value(a * i / n));
  return s;
}

TailReport tail_impl(const SagdeevPotential& pot, Endpoint e, double tol, const ConditionSettings& cs) {
  const double a = pot.amplitude();
  const double x0 = e == Endpoint::zero ? 0.0 : a;
  const double dir = e == Endpoint::zero ? 1.0 : -1.0;  // into the interval
  TailReport r;
  r.value = pot.value(x0);
  r.exponent = kNaN;
  if (std::abs(r.value) > tol) throw NumericalError("endpoint not equilibrium");
  r.slope = pot.slope(x0);
  if (std::abs(r.slope) > cs.slope_tol) {
    r.verdict = TailClass::convergent;
    r.note = "simple zero";
    return r;
  }
  // log V against log distance on a geometric sample. Near points whose V
  // has sunk below the resolution floor (cancellation between O(1) density
  // terms) are dropped once three resolved points are in hand.
  const int n = std::max(3, cs.fit_points);
  const double l0 = std::log10(cs.fit_far), l1 = std::log10(cs.fit_near);
  const double floor = 0.01 * tol;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int k = 0; k < n; ++k) {
    double d = a * std::pow(10.0, l0 + (l1 - l0) * k / (n - 1));
    double v = pot.value(x0 + dir * d);
    if (!(v > floor)) {
      if (used >= 3 && v > -floor) break;
      r.verdict = TailClass::indeterminate;
      r.note = "V not positive near the endpoint";
      return r;
    }
    double x = std::log(d), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  r.exponent = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  if (r.exponent >= 2.0 - cs.exponent_band) {
    r.verdict = TailClass::divergent;
    r.note = "zero of order >= 2";
  } else {
    r.verdict = TailClass::indeterminate;
    r.note = "flat slope but exponent below 2";
  }
  return r;
}

struct Positivity {
  bool ok = false, indeterminate = false;
  double min_loc = 0, min_val = 0;
};

Positivity positivity(const SagdeevPotential& pot, double tol, const ConditionSettings& cs) {
  const double a = pot.amplitude();
  const int n = std::max(1000, cs.positivity_samples);
  std::vector<double> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = a * (i + 1) / (n + 1.0);
  auto s = sample_potential(pot, phi);
  Positivity p;
  p.min_val = kInf;
  bool touch = false;
  auto consider = [&](double x, double v) {
    if (v < p.min_val) {
      p.min_val = v;
      p.min_loc = x;
    }
  };
  for (int i = 0; i < n; ++i) consider(phi[i], s.v[i]);
  // interior local minimisers: dv goes from negative to nonnegative
  for (int i = 0; i + 1 < n; ++i) {
    if (!(s.dv[i] < 0 && s.dv[i + 1] >= 0)) continue;
    double x = s.dv[i + 1] == 0 ? phi[i + 1]
                                : bisect([&](double t) { return pot.slope(t); }, phi[i], phi[i + 1], 1e-15 * a);
    double v = pot.value(x);
    consider(x, v);
    if (std::abs(v) <= tol) touch = true;
  }
  if (p.min_val < -tol) {
    p.ok = false;
  } else if (touch) {
    p.ok = false;
    p.indeterminate = true;
  } else {
    p.ok = true;
  }
  return p;
}

void add(ConditionReport& r, std::string label, bool ok, std::string detail) {
  r.clauses.push_back({std::move(label), ok, std::move(detail)});
}

TailReport safe_tail(const SagdeevPotential& pot, Endpoint e, double tol, const ConditionSettings& cs) {
  try {
    return tail_impl(pot, e, tol, cs);
  } catch (const NumericalError& ex) {
    TailReport t;
    t.verdict = TailClass::indeterminate;
    t.exponent = kNaN;
    t.note = ex.what();
    double x0 = e == Endpoint::zero ? 0.0 : pot.amplitude();
    t.value = pot.value(x0);
    t.slope = pot.slope(x0);
    return t;
  }
}

// the part common to every kind: positivity, endpoint zero and both tails
void common(ConditionReport& r, const SagdeevPotential& pot, const ConditionSettings& cs) {
  const double tol = equilibrium_tol(sup_v(pot, cs), cs);
  auto pos = positivity(pot, tol, cs);
  r.positivity_ok = pos.ok;
  r.positivity_indeterminate = pos.indeterminate;
  r.min_location = pos.min_loc;
  r.min_value = pos.min_val;
  r.endpoint_value = pot.value(pot.amplitude());
  r.endpoint_zero_ok = std::abs(r.endpoint_value) <= tol;
  r.tail_at_zero = safe_tail(pot, Endpoint::zero, tol, cs);
  r.tail_at_amplitude = safe_tail(pot, Endpoint::amplitude, tol, cs);
}

std::string positivity_detail(const ConditionReport& r) {
  std::string s = "min V = " + fmt(r.min_value) + " at Phi = " + fmt(r.min_location) +
                  ", V(amplitude) = " + fmt(r.endpoint_value);
  if (r.positivity_indeterminate) s += ", interior touch within tolerance (indeterminate)";
  return s;
}

std::string tail_detail(const TailReport& t) {
  return to_string(t.verdict) + " (slope " + fmt(t.slope) + ", exponent " + fmt(t.exponent) + "; " + t.note + ")";
}

void symmetry_clause(ConditionReport& r, const SagdeevPotential& pot, const char* label, const ConditionSettings& cs) {
  if (!pot.has_marginals()) return;
  const auto& p = pot.params();
  const double delta = std::sqrt(2 * p.q_minus * pot.amplitude());
  r.symmetry_delta = symmetric_extent(pot.g_minus(), p.alpha, cs.symmetry_tol);
  r.symmetry_ok = check_symmetry(pot.g_minus(), p.alpha, delta, cs.symmetry_tol);
  add(r, label, r.symmetry_ok,
      "symmetric about alpha up to " + fmt(r.symmetry_delta) + ", required " + fmt(delta));
}

}  // namespace

std::string to_string(TailClass t) {
  switch (t) {
    case TailClass::divergent: return "divergent";
    case TailClass::convergent: return "convergent";
    case TailClass::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Uniqueness u) {
  switch (u) {
    case Uniqueness::unique_case_i: return "unique_case_i";
    case Uniqueness::unique_case_ii: return "unique_case_ii";
    case Uniqueness::nonunique_a: return "nonunique_a";
    case Uniqueness::nonunique_b: return "nonunique_b";
    case Uniqueness::nonunique_c: return "nonunique_c";
  }
  return "?";
}

bool ConditionReport::exists() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.ok; });
}

std::vector<std::string> ConditionReport::failed_clauses() const {
  std::vector<std::string> out;
  for (const auto& c : clauses)
    if (!c.ok) out.push_back(c.label);
  return out;
}

ConditionFailure::ConditionFailure(ConditionReport r)
    : std::runtime_error([&] {
        std::string s = "conditions fail:";
        for (const auto& c : r.failed_clauses()) s += " " + c;
        return s;
      }()),
      report_(std::move(r)) {}

bool check_quasineutral(const Marginal& g_plus, const Marginal& g_minus, const PlasmaParams& p, double tol) {
  return std::abs(p.e_plus * g_plus.mass() - p.e_minus * g_minus.mass()) <= tol;
}

AlphaResult compute_alpha(const Marginal& gl, const Marginal& gr, double tol) {
  const double dm = gr.mass() - gl.mass();
  const double dM = gr.first_moment() - gl.first_moment();
  if (std::abs(dm) > tol) return {false, dM / dm};
  if (std::abs(dM) <= tol) return {true, 0.0};
  throw std::domain_error("compute_alpha: masses agree but first moments differ (inconsistent end states)");
}

std::vector<ClauseResult> shock_matching_clauses(const ShockEndStates& s, const PlasmaParams& p, double phi_l,
                                                 double tol) {
  if (!(phi_l > 0)) throw std::invalid_argument("shock matching needs Phi_l > 0");
  const double a = p.alpha;
  auto tol_for = [&](const Marginal& x, const Marginal& y) {
    return tol >= 0 ? tol : std::max(default_symmetry_tol(x), default_symmetry_tol(y));
  };
  // compare on one side of alpha only
  auto side_diff = [&](const Marginal& x, const Marginal& y, int side) {
    std::vector<double> bp = x.breakpoints();
    for (double b : y.breakpoints()) bp.push_back(b);
    std::sort(bp.begin(), bp.end());
    // edges that differ only by rounding (mapped vs given) count as one
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double l, double r) { return r - l <= 1e-12 * std::max(1.0, std::abs(r)); }),
             bp.end());
    double reach = 0;
    for (const Marginal* g : {&x, &y})
      if (!g->empty()) reach = std::max({reach, std::abs(g->support_lo() - a), std::abs(g->support_hi() - a)});
    std::vector<double> pts;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) pts.push_back(0.5 * (bp[i] + bp[i + 1]));
    const int n = 4000;
    for (int k = 1; k <= n; ++k) {
      double u = a + side * reach * k / n;
      bool near = false;
      for (double b : bp)
        if (std::abs(u - b) <= 1e-9 * std::max(1.0, std::abs(b))) near = true;
      if (!near) pts.push_back(u);
    }
    double m = 0;
    for (double u : pts)
      if ((u - a) * side > 0) m = std::max(m, std::abs(x(u) - y(u)));
    return m;
  };
  const double cp = 2 * p.q_plus * phi_l, cm = 2 * p.q_minus * phi_l;
  std::vector<ClauseResult> out;
  auto shifted_plus = energy_shift(s.gl_plus, a, cp);  // left ions seen on the right
  auto shifted_minus = energy_shift(s.gr_minus, a, cm);  // right electrons seen on the left
  double t = tol_for(s.gr_plus, shifted_plus);
  double d1 = side_diff(s.gr_plus, shifted_plus, -1), d2 = side_diff(s.gr_plus, shifted_plus, +1);
  out.push_back({"Flr1", d1 <= t, "max mismatch " + fmt(d1)});
  out.push_back({"Flr2", d2 <= t, "max mismatch " + fmt(d2)});
  t = tol_for(s.gl_minus, shifted_minus);
  double d3 = side_diff(s.gl_minus, shifted_minus, -1), d4 = side_diff(s.gl_minus, shifted_minus, +1);
  out.push_back({"Flr3", d3 <= t, "max mismatch " + fmt(d3)});
  out.push_back({"Flr4", d4 <= t, "max mismatch " + fmt(d4)});
  bool s5 = s.gl_plus.empty() || check_symmetry(s.gl_plus, a, std::sqrt(cp), tol);
  bool s6 = s.gr_minus.empty() || check_symmetry(s.gr_minus, a, std::sqrt(cm), tol);
  out.push_back({"Flr5", s5, "left ions symmetric on the band of half-width " + fmt(std::sqrt(cp))});
  out.push_back({"Flr6", s6, "right electrons symmetric on the band of half-width " + fmt(std::sqrt(cm))});
  return out;
}

bool check_shock_matching(const Marginal& gl_plus, const Marginal& gr_plus, const Marginal& gl_minus,
                          const Marginal& gr_minus, const PlasmaParams& p, double phi_l, double tol) {
  auto cl = shock_matching_clauses({gl_plus, gr_plus, gl_minus, gr_minus}, p, phi_l, tol);
  return std::all_of(cl.begin(), cl.end(), [](const ClauseResult& c) { return c.ok; });
}

TailReport classify_tail(const SagdeevPotential& pot, Endpoint e, const ConditionSettings& cs) {
  return tail_impl(pot, e, equilibrium_tol(sup_v(pot, cs), cs), cs);
}

ConditionReport check_exists(const SagdeevPotential& pot, const ConditionSettings& cs) {
  ConditionReport r;
  r.kind = pot.kind();
  r.amplitude = pot.amplitude();
  common(r, pot, cs);
  const bool marg = pot.has_marginals();
  switch (pot.kind()) {
    case WaveKind::solitary: {
      if (marg) {
        r.quasi_neutral = check_quasineutral(pot.g_plus(), pot.g_minus(), pot.params());
        add(r, "netrual1", r.quasi_neutral, "e+ m+ = " + fmt(pot.params().e_plus * pot.g_plus().mass()) +
                                                ", e- m- = " + fmt(pot.params().e_minus * pot.g_minus().mass()));
      }
      symmetry_clause(r, pot, "G-beta1", cs);
      add(r, "G-beta2", r.positivity_ok && r.endpoint_zero_ok, positivity_detail(r));
      bool t3 = r.tail_at_zero.verdict == TailClass::divergent && r.tail_at_amplitude.verdict == TailClass::convergent;
      add(r, "G-beta3", t3,
          "at 0: " + tail_detail(r.tail_at_zero) + "; at beta: " + tail_detail(r.tail_at_amplitude));
      break;
    }
    case WaveKind::shock: {
      add(r, "Phil1", r.positivity_ok && r.endpoint_zero_ok, positivity_detail(r));
      bool t2 = r.tail_at_zero.verdict == TailClass::divergent && r.tail_at_amplitude.verdict == TailClass::divergent;
      add(r, "Phil2", t2, "at 0: " + tail_detail(r.tail_at_zero) + "; at Phi_l: " + tail_detail(r.tail_at_amplitude));
      break;
    }
    case WaveKind::train: {
      symmetry_clause(r, pot, "tG-beta1", cs);
      add(r, "tG-beta2", r.positivity_ok && r.endpoint_zero_ok, positivity_detail(r));
      bool t3 =
          r.tail_at_zero.verdict == TailClass::convergent && r.tail_at_amplitude.verdict == TailClass::convergent;
      add(r, "tG-beta3", t3, "at 0: " + tail_detail(r.tail_at_zero) + "; at beta: " + tail_detail(r.tail_at_amplitude));
      break;
    }
  }
  return r;
}

ConditionReport check_exists(const SagdeevPotential& pot, const ShockEndStates& ends, const ConditionSettings& cs) {
  ConditionReport r = check_exists(pot, cs);
  if (pot.kind() != WaveKind::shock) return r;
  const auto& p = pot.params();
  bool nl = check_quasineutral(ends.gl_plus, ends.gl_minus, p, cs.neutrality_tol);
  bool nr = check_quasineutral(ends.gr_plus, ends.gr_minus, p, cs.neutrality_tol);
  r.quasi_neutral = nl && nr;
  add(r, "nnetrual1", r.quasi_neutral, std::string("left ") + (nl ? "neutral" : "not neutral") + ", right " +
                                           (nr ? "neutral" : "not neutral"));
  auto fl = shock_matching_clauses(ends, p, pot.amplitude(), cs.symmetry_tol);
  std::string bad;
  for (const auto& c : fl)
    if (!c.ok) bad += (bad.empty() ? "" : ", ") + c.label + " (" + c.detail + ")";
  add(r, "Flr0", bad.empty(), bad.empty() ? "all six matching clauses hold" : "failed: " + bad);
  std::string why;
  bool speed = true;
  try {
    for (int sp = 0; sp < 2; ++sp) {
      auto ar = sp == 0 ? compute_alpha(ends.gl_plus, ends.gr_plus) : compute_alpha(ends.gl_minus, ends.gr_minus);
      if (!ar.degenerate && std::abs(ar.alpha - p.alpha) > 1e-9 * std::max(1.0, std::abs(p.alpha))) {
        speed = false;
        why += std::string(sp == 0 ? "ions" : "electrons") + " give alpha = " + fmt(ar.alpha) + "; ";
      }
    }
  } catch (const std::domain_error& e) {
    speed = false;
    why = e.what();
  }
  add(r, "nalpha0", speed, speed ? "alpha consistent with the end states (or free)" : why);
  return r;
}

double beta_sharp(const ScalarFn& v_inf, double beta_star, const ConditionSettings& cs, double horizon) {
  const double b = std::min(beta_star, horizon);
  if (!std::isfinite(b)) throw std::invalid_argument("beta_sharp: needs a finite beta* or scan horizon");
  if (!(b > 0)) return beta_star;
  const int n = std::max(16, cs.scan_points);
  double prev = 0;
  for (int i = 1; i <= n; ++i) {
    double x = b * i / n;
    // the open end beta* itself is excluded from the infimum set
    if (i == n && x >= beta_star) break;
    if (v_inf(x) < 0) {
      return bisect(v_inf, prev, x, 1e-15 * b);
    }
    prev = x;
  }
  return beta_star;
}

double trapped_mass_below(const TrappedMarginal& G, double cap) {
  const Marginal& g = G.marginal();
  if (g.empty() || !(cap > 0)) return 0.0;
  const double a = G.alpha(), hi = a + cap;
  if (g.kind() == Marginal::Kind::piecewise) {
    double m = 0;
    for (const auto& p : g.pieces()) {
      double lo = std::max(p.lo, a), h = std::min(p.hi, hi);
      if (h > lo) m += (h - lo) * p.height;
    }
    return m;
  }
  return integrate([&](double x) { return g(x); }, a, std::min(hi, g.support_hi()), g.breakpoints());
}

UniquenessVerdict classify_uniqueness(const SagdeevPotential& pot, const ConditionSettings& cs,
                                      std::optional<double> beta_star_override) {
  if (pot.kind() != WaveKind::solitary || pot.is_synthetic())
    throw std::invalid_argument("classify_uniqueness needs a solitary potential with a V_infinity");
  const auto& p = pot.params();
  const double beta = pot.amplitude();
  UniquenessVerdict u;
  u.beta_star = beta_star_override ? *beta_star_override
                : pot.has_marginals() ? beta_star(pot.g_minus(), p, cs.symmetry_tol)
                                      : kInf;
  u.trapped_mass = pot.trapped() ? trapped_mass_below(*pot.trapped(), std::sqrt(2 * p.q_plus * beta)) : 0.0;
  const double horizon = std::isfinite(u.beta_star) ? u.beta_star : cs.horizon_factor * std::max(beta, 1e-300);
  auto vinf = [&](double x) { return pot.v_infinity(x); };
  u.beta_sharp = beta_sharp(vinf, u.beta_star, cs, horizon);
  const bool sharp_found = u.beta_sharp < std::min(u.beta_star, horizon);
  u.slope_at_sharp = sharp_found ? pot.dv_infinity(u.beta_sharp) : kNaN;
  const double mass_tol = 1e-12;
  if (u.trapped_mass > mass_tol) {
    u.classification = Uniqueness::nonunique_a;
    u.details = "trapped ions present: G mass " + fmt(u.trapped_mass) + " on (alpha, alpha + sqrt(2 q+ beta))";
    return u;
  }
  if (std::isfinite(u.beta_star) && std::abs(beta - u.beta_star) <= 1e-10 * std::max(1.0, beta)) {
    u.classification = Uniqueness::unique_case_i;
    u.details = "G = 0 and beta = beta*";
    return u;
  }
  // case (ii): V_inf >= 0 on (beta, beta*); V > 0 below beta is part of existence
  if (!sharp_found) {
    u.classification = Uniqueness::unique_case_ii;
    u.details = "G = 0 and V_inf >= 0 on (beta, " + fmt(std::min(u.beta_star, horizon)) + ")";
    if (!std::isfinite(u.beta_star)) u.details += " (beta* infinite; scan horizon " + fmt(horizon) + ")";
    return u;
  }
  if (u.slope_at_sharp < -cs.derivative_tol) {
    u.classification = Uniqueness::nonunique_b;
    u.details = "V_inf turns negative at beta_sharp = " + fmt(u.beta_sharp) + " with slope " + fmt(u.slope_at_sharp);
  } else {
    u.classification = Uniqueness::nonunique_c;
    u.details = "V_inf turns negative at beta_sharp = " + fmt(u.beta_sharp) + " tangentially (slope " +
                fmt(u.slope_at_sharp) + ")";
  }
  return u;
}

}  // namespace vpw
