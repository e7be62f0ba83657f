// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vpw/examples.hpp"
#include "vpw/oracle.hpp"

using namespace vpw;

namespace {

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int failures = 0;

void run(int id, const std::string& name, double budget_s, const std::function<void(Criterion&)>& body) {
  Criterion c{id, name, budget_s};
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0) c.expect(dt < budget_s, fmt("runtime %.1f s over budget %.0f s", dt, budget_s));
  std::printf("criterion %d: %s  %s (%.2f s)\n", id, c.ok ? "PASS" : "FAIL", name.c_str(), dt);
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(g); }
};

Marginal random_marginal(Rng& r, double alpha) {
  if (r.integer(0, 3) == 0) return Marginal::maxwellian(r.uniform(0.5, 2), alpha + r.uniform(-0.5, 0.5), r.uniform(0.5, 2), 1.0);
  int n = r.integer(1, 4);
  std::vector<double> cuts;
  for (int i = 0; i < 2 * n; ++i) cuts.push_back(r.uniform(alpha - 2.5, alpha + 2.5));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Piece> p;
  for (int i = 0; i < n; ++i)
    if (cuts[2 * i + 1] > cuts[2 * i]) p.push_back({cuts[2 * i], cuts[2 * i + 1], r.uniform(0.1, 2)});
  return Marginal::piecewise(p);
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

void solitary_reproduction(Criterion& c) {
  auto ex = example_solitary();
  c.expect(std::abs(ex.rho_at_0) < 1e-14, fmt("rho_inf(0) = %.3g", ex.rho_at_0));
  c.expect(ex.rho_at_hundredth > 0, "rho_inf(1/100) > 0");
  c.expect(ex.rho_at_1 < 0, "rho_inf(1) < 0");
  double r0 = std::abs(ex.potential.dv_infinity(ex.beta0)), v1 = std::abs(ex.potential.v_infinity(ex.beta1));
  c.expect(r0 < 1e-12, fmt("|rho_inf(beta0)| = %.3g", r0));
  c.expect(v1 < 1e-12, fmt("|V_inf(beta1)| = %.3g", v1));
  c.expect(0.01 < ex.beta0 && ex.beta0 < ex.beta1 && ex.beta1 < 1, "1/100 < beta0 < beta1 < 1");
  c.expect(ex.report.exists(), "check_exists at beta1 with G = 0");
  c.expect(ex.uniqueness.classification == Uniqueness::nonunique_b,
           "classification " + to_string(ex.uniqueness.classification));
  c.note(fmt("beta0 = %.15f  beta1 = %.15f", ex.beta0, ex.beta1));
}

void shock_reproduction(Criterion& c, double phil) {
  auto t0 = std::chrono::steady_clock::now();
  auto sh = example_shock(phil);
  const double want = std::sqrt(phil) / 2;
  for (double m : sh.masses) c.expect(std::abs(m - want) <= 2e-16 * want, fmt("mass %.17g vs %.17g", m, want));
  c.expect(sh.max_symmetry_defect < 1e-12, fmt("max |V(Phi) - V(Phi_l - Phi)| = %.3g", sh.max_symmetry_defect));
  c.expect(sh.report.exists(), "check_exists");
  auto prof = build_shock(sh.potential);
  c.expect(std::abs(prof.phi_at(0.0) - phil / 2) < 1e-12, fmt("Phi(0) - Phi_l/2 = %.3g", prof.phi_at(0.0) - phil / 2));
  double worst = 0;
  for (double x : prof.X)
    if (std::abs(x) <= std::min(-prof.X.front(), prof.X.back()))
      worst = std::max(worst, std::abs(prof.phi_at(x) + prof.phi_at(-x) - phil));
  c.expect(worst < 1e-8, fmt("point symmetry defect %.3g", worst));
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(dt < 5, fmt("Phi_l = %g took %.1f s", phil, dt));
  c.note(fmt("Phi_l = %g: symmetry defect %.2g", phil, worst));
}

void residual_suite(Criterion& c) {
  struct Case {
    const char* name;
    WaveProfile prof;
    double neutrality;
  };
  std::vector<Case> cases{{"solitary", build_solitary(example_solitary().potential), 1e-4},
                          {"shock", build_shock(example_shock(1.0).potential), 1e-4},
                          {"train", example_train(1, 1).profile, 1e-10}};
  for (const auto& k : cases) {
    auto r = verify_all(k.prof);
    std::string n = k.name;
    c.expect(r.poisson < 1e-6, n + fmt(" poisson %.3g", r.poisson));
    c.expect(r.energy < 1e-8, n + fmt(" energy %.3g", r.energy));
    c.expect(r.characteristics_plus < 1e-8 && r.characteristics_minus < 1e-8,
             n + fmt(" characteristics %.3g / %.3g", r.characteristics_plus, r.characteristics_minus));
    c.expect(r.neutrality < k.neutrality, n + fmt(" neutrality %.3g", r.neutrality));
    c.note(n + fmt(": poisson %.2g energy %.2g", r.poisson, r.energy) +
           fmt(" characteristics %.2g neutrality %.2g", std::max(r.characteristics_plus, r.characteristics_minus),
               r.neutrality));
  }
}

void oracle_equivalence(Criterion& c) {
  Rng r(20240611);
  oracle::BruteSettings bs;  // 1e7 points, band excised at 1e-9
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    PlasmaParams p;
    p.alpha = r.uniform(-0.3, 0.3);
    p.q_plus = r.uniform(0.5, 2);
    p.q_minus = r.uniform(0.5, 2);
    auto g = random_marginal(r, p.alpha);
    double phi = r.uniform(0.01, 1.5), beta = phi + r.uniform(0, 0.5);
    auto G = TrappedMarginal(Marginal::piecewise({{p.alpha, p.alpha + r.uniform(0.5, 2), r.uniform(0.1, 2)}}), p.alpha);
    double pl = phi + r.uniform(0, 1);
    std::vector<std::pair<const char*, double>> errs{
        {"rho_plus_inf", rel(oracle::rho_plus_inf(g, p, phi, bs), rho_plus_inf(g, p, phi))},
        {"rho_minus", rel(oracle::rho_minus(g, p, phi, bs), rho_minus(g, p, phi))},
        {"rho_plus_trapped", rel(oracle::rho_plus_trapped(G, p, beta, phi, bs), rho_plus_trapped(G, p, beta, phi))},
        {"rho_shock_plus", rel(oracle::rho_shock_plus(g, p, pl, phi, bs), rho_shock_plus(g, p, pl, phi))}};
    for (auto [name, e] : errs) {
      c.expect(e < 1e-6, std::string(name) + fmt(" case %.0f: rel %.3g", trial, e));
      worst = std::max(worst, e);
    }
  }
  c.note(fmt("worst relative difference %.2g over 80 evaluations", worst));
}

void derivative_consistency(Criterion& c) {
  std::vector<std::pair<const char*, SagdeevPotential>> pots{
      {"solitary", example_solitary().potential},
      {"shock", example_shock(1.0).potential},
      {"train", train_box_family(PlasmaParams{}, 1.0, 1.0).potential}};
  for (const auto& [name, pot] : pots) {
    const double a = pot.amplitude(), h = 1e-6 * a;
    double worst = 0, at = 0;
    for (int i = 0; i < 200; ++i) {
      double phi = a * (i + 0.5) / 200;
      double fd = (pot.value(phi + h) - pot.value(phi - h)) / (2 * h), d = pot.slope(phi);
      double e = std::abs(fd - d) / std::max(std::abs(d), 1e-12);
      if (e > worst) worst = e, at = phi;
    }
    c.expect(worst < 1e-6, std::string(name) + fmt(" rel %.3g at Phi = %.6g", worst, at));
    c.note(std::string(name) + fmt(": worst relative %.2g", worst));
  }
}

void nonuniqueness(Criterion& c) {
  // (a) perturbation of the example with trapped ions injected
  auto base = solitary_inject_case_b(example_solitary().potential).potential;
  for (double tau : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    auto m = solitary_perturb(base, tau);
    c.expect(m.report.exists(), fmt("(a) tau = %g exists", tau));
    double v0 = m.potential.v_trapped(m.beta) - base.v_trapped(m.beta);
    c.expect(std::abs(v0) < 1e-12, fmt("(a) tau = %g: V0(beta; beta, H) = %.3g", tau, v0));
    double dip = 0;
    for (int i = 0; i <= 400; ++i) {
      double phi = m.beta * i / 400;
      dip = std::max(dip, base.value(phi) - m.potential.value(phi));
    }
    c.expect(dip <= 1e-13, fmt("(a) tau = %g: dominance defect %.3g", tau, dip));
  }
  // (b) injected box on the example data
  auto b = solitary_inject_case_b(example_solitary().potential);
  c.expect(b.report.exists(), "(b) exists");
  c.expect(b.lambda > 0, fmt("(b) lambda = %g", b.lambda));
  // (c) box trains rescaled to one period
  const double gamma = 10.0;
  std::vector<double> scales;
  for (double tau : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    auto m = rescale_to_period(train_box_family(PlasmaParams{}, 1.0, tau), gamma);
    double got = period(m.potential);
    c.expect(rel(got, gamma) < 1e-8, fmt("(c) tau = %g period rel %.3g", tau, rel(got, gamma)));
    c.expect(check_exists(m.potential).exists(), fmt("(c) tau = %g exists", tau));
    scales.push_back(m.scale);
  }
  c.note(fmt("(b) lambda = %.6g; (c) scales %.4g", b.lambda, scales.front()) + fmt("..%.4g", scales.back()));
}

void boltzmann_matching(Criterion& c) {
  const double kappa = 1;
  PlasmaParams p;
  p.boltzmann = BoltzmannConstants{1.0, kappa};
  const double ts = boltzmann_tau_star(kappa);
  // monotone in tau
  bool mono = true;
  for (int j = 1; j <= 10; ++j) {
    double prev = 0;
    for (int i = 1; i <= 10; ++i) {
      double g = boltzmann_gamma_tilde(ts * i / 10, ts * j / 10, kappa);
      mono = mono && g > prev;
      prev = g;
    }
  }
  c.expect(mono, "gamma tilde increasing in tau on the 10 x 10 grid");
  // small-beta decay at tau = tau*
  const double gs = boltzmann_gamma_tilde(ts, ts, kappa);
  double prev = gs;
  std::string ratios = "gamma tilde(tau*, beta) / gamma tilde*:";
  for (double beta : {1e-2, 1e-3, 1e-4, 1e-5}) {
    double g = boltzmann_gamma_tilde(ts, beta, kappa);
    c.expect(g < prev, fmt("decrease at beta = %g", beta));
    prev = g;
    ratios += fmt(" %.4f", g / gs);
  }
  c.note(ratios);
  c.expect(prev < 0.05 * gs, fmt("ratio at beta = 1e-5 is %.4f, not below 0.05", prev / gs));
  // three members at half of gamma*
  const double target = 0.5 * boltzmann_gamma_star(p);
  auto ms = boltzmann_train_match(p, target, 3);
  c.expect(ms.size() == 3, "three members");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto& m = ms[i];
    for (std::size_t j = 0; j < i; ++j) c.expect(ms[j].tau != m.tau || ms[j].beta != m.beta, "distinct members");
    double got = period(m.potential);
    c.expect(rel(got, target) < 1e-6, fmt("member tau = %.6g: period rel %.3g", m.tau, rel(got, target)));
    c.expect(m.report.exists(), fmt("member tau = %.6g exists", m.tau));
    double worst = 0;
    for (int k = 0; k <= 50; ++k) {
      double phi = m.beta * k / 50;
      double want = p.boltzmann->rho * std::exp(-kappa * phi);
      worst = std::max(worst, std::abs(slice_density(m.potential, Species::minus, phi) - want) / want);
    }
    c.expect(worst < 1e-8, fmt("member tau = %.6g: electron density rel %.3g", m.tau, worst));
    c.note(fmt("member (tau, beta) = (%.6g, %.6g)", m.tau, m.beta) + fmt(": period %.12g, density rel %.2g", got, worst));
  }
}

void tail_calibration(Criterion& c) {
  for (double k : {1e-3, 1.0, 1e3}) {
    auto quad = SagdeevPotential::synthetic(WaveKind::solitary, 1.0,
                                            {[k](double x) { return k * x * x; }, [k](double x) { return 2 * k * x; }});
    auto lin = SagdeevPotential::synthetic(WaveKind::train, 1.0, {[k](double x) { return k * x; }, [k](double) { return k; }});
    auto tq = classify_tail(quad, Endpoint::zero).verdict, tl = classify_tail(lin, Endpoint::zero).verdict;
    c.expect(tq == TailClass::divergent, fmt("c = %g: c Phi^2 gave ", k) + to_string(tq));
    c.expect(tl == TailClass::convergent, fmt("c = %g: c Phi gave ", k) + to_string(tl));
  }
}

}  // namespace

int main() {
  run(1, "solitary example reproduction", 5, solitary_reproduction);
  run(2, "symmetric shock reproduction", 15, [](Criterion& c) {
    for (double phil : {0.5, 1.0, 2.0}) shock_reproduction(c, phil);
  });
  run(3, "residual suite", 30, residual_suite);
  run(4, "oracle equivalence", 120, oracle_equivalence);
  run(5, "derivative consistency", 0, derivative_consistency);
  run(6, "nonuniqueness families", 0, nonuniqueness);
  run(7, "Boltzmann train matching", 120, boltzmann_matching);
  run(8, "tail classifier calibration", 0, tail_calibration);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
