#include "support.hpp"

#include <algorithm>

#include "vpw/conditions.hpp"
#include "vpw/examples.hpp"
#include "vpw/families.hpp"

using namespace vpw;
using namespace vt;

namespace {

bool has_failed(const ConditionReport& r, const std::string& label) {
  auto f = r.failed_clauses();
  return std::find(f.begin(), f.end(), label) != f.end();
}

SagdeevPotential synthetic(WaveKind k, double amp, std::function<double(double)> v, std::function<double(double)> dv) {
  return SagdeevPotential::synthetic(k, amp, {std::move(v), std::move(dv)});
}

SagdeevPotential background(std::function<double(double)> v, std::function<double(double)> dv, double beta,
                            std::optional<TrappedMarginal> G = std::nullopt) {
  return SagdeevPotential::with_background(WaveKind::solitary, PlasmaParams{}, {std::move(v), std::move(dv)}, G, beta);
}

}  // namespace

TEST_CASE("quasi-neutrality") {
  PlasmaParams p;
  CHECK(check_quasineutral(solitary_example_g_plus(p), solitary_example_g_minus(p), p));
  for (double phil : {0.5, 1.0, 2.0}) {
    auto e = shock_example_states(p, phil);
    CHECK(check_quasineutral(e.gl_plus, e.gl_minus, p));
    CHECK(check_quasineutral(e.gr_plus, e.gr_minus, p));
  }
  CHECK_FALSE(check_quasineutral(Marginal::box(0, 1, 1), Marginal::box(0, 1, 1.1), p, 1e-9));
}

TEST_CASE("speed from the first-moment balance") {
  auto e = shock_example_states(PlasmaParams{}, 1.0);
  CHECK(compute_alpha(e.gl_plus, e.gr_plus).degenerate);
  auto r = compute_alpha(Marginal::box(0, 1, 1), Marginal::box(0, 1, 2));
  CHECK_FALSE(r.degenerate);
  CHECK_THAT(r.alpha, WithinAbs(0.5, 1e-15));
  CHECK(compute_alpha(Marginal::box(0, 1, 1), Marginal::box(0, 1, 1)).degenerate);
  // equal masses, different first moments: no alpha balances them
  CHECK_THROWS_AS(compute_alpha(Marginal::box(0, 1, 1), Marginal::box(1, 2, 1)), std::domain_error);
}

TEST_CASE("shock matching") {
  PlasmaParams p;
  for (double phil : {0.5, 1.0, 2.0}) {
    auto e = shock_example_states(p, phil);
    CHECK(check_shock_matching(e.gl_plus, e.gr_plus, e.gl_minus, e.gr_minus, p, phil));
    auto clauses = shock_matching_clauses(e, p, phil);
    REQUIRE(clauses.size() == 6);
    for (const auto& c : clauses) CHECK(c.ok);
    auto doubled = e.gr_plus.scaled(2.0);
    CHECK_FALSE(check_shock_matching(e.gl_plus, doubled, e.gl_minus, e.gr_minus, p, phil));
  }
  Marginal z;
  CHECK(check_shock_matching(z, z, z, z, p, 1.0));
}

TEST_CASE("tail classification of the worked examples") {
  auto ex = example_solitary();
  auto t0 = classify_tail(ex.potential, Endpoint::zero);
  CHECK(t0.verdict == TailClass::divergent);
  CHECK_THAT(t0.exponent, WithinAbs(2.0, 0.1));
  CHECK(classify_tail(ex.potential, Endpoint::amplitude).verdict == TailClass::convergent);

  auto tr = train_box_family(PlasmaParams{}, 1.0, 1.0);
  auto tz = classify_tail(tr.potential, Endpoint::zero);
  CHECK(tz.verdict == TailClass::convergent);
  CHECK_THAT(tz.slope, WithinAbs(1.0 - f_tau(1.0, 1.0), 1e-12));
  CHECK(classify_tail(tr.potential, Endpoint::amplitude).verdict == TailClass::convergent);

  auto sh = example_shock(1.0);
  CHECK(classify_tail(sh.potential, Endpoint::zero).verdict == TailClass::divergent);
  CHECK(classify_tail(sh.potential, Endpoint::amplitude).verdict == TailClass::divergent);
}

TEST_CASE("tail classification on synthetic power laws") {
  for (double c : {1e-3, 1.0, 1e3}) {
    auto quad = synthetic(WaveKind::solitary, 1.0, [c](double x) { return c * x * x; },
                          [c](double x) { return 2 * c * x; });
    CHECK(classify_tail(quad, Endpoint::zero).verdict == TailClass::divergent);
    auto lin = synthetic(WaveKind::train, 1.0, [c](double x) { return c * x; }, [c](double) { return c; });
    CHECK(classify_tail(lin, Endpoint::zero).verdict == TailClass::convergent);
    // mirrored at the amplitude
    auto quad_r = synthetic(WaveKind::shock, 1.0, [c](double x) { return c * (1 - x) * (1 - x); },
                            [c](double x) { return -2 * c * (1 - x); });
    CHECK(classify_tail(quad_r, Endpoint::amplitude).verdict == TailClass::divergent);
    auto lin_r = synthetic(WaveKind::train, 1.0, [c](double x) { return c * (1 - x); }, [c](double) { return -c; });
    CHECK(classify_tail(lin_r, Endpoint::amplitude).verdict == TailClass::convergent);
  }
  auto off = synthetic(WaveKind::solitary, 1.0, [](double x) { return 1 + x; }, [](double) { return 1.0; });
  CHECK_THROWS_AS(classify_tail(off, Endpoint::zero), NumericalError);
}

TEST_CASE("existence verdicts") {
  auto ex = example_solitary();
  CHECK(ex.report.exists());
  CHECK(check_exists(ex.potential).exists());

  auto half = ex.potential.with_trapped(std::nullopt, ex.beta1 / 2);
  auto r = check_exists(half);
  CHECK_FALSE(r.exists());
  CHECK(has_failed(r, "G-beta2"));
  CHECK_FALSE(r.endpoint_zero_ok);

  for (double phil : {0.5, 1.0, 2.0}) {
    auto sh = example_shock(phil);
    CHECK(sh.report.exists());
    CHECK(sh.matching);
  }
  CHECK(train_box_family(PlasmaParams{}, 1.0, 1.0).report.exists());
}

TEST_CASE("verdicts survive positive rescaling") {
  auto ex = example_solitary();
  auto base = check_exists(ex.potential);
  for (double c : {1e-3, 0.5, 7.0}) {
    auto r = check_exists(ex.potential.scaled(c));
    CHECK(r.exists() == base.exists());
    CHECK(r.tail_at_zero.verdict == base.tail_at_zero.verdict);
    CHECK(r.tail_at_amplitude.verdict == base.tail_at_amplitude.verdict);
    CHECK(classify_uniqueness(ex.potential.scaled(c)).classification == Uniqueness::nonunique_b);
  }
  auto half = ex.potential.with_trapped(std::nullopt, ex.beta1 / 2);
  CHECK_FALSE(check_exists(half.scaled(40.0)).exists());
}

TEST_CASE("first negative point of V_inf") {
  auto ex = example_solitary();
  auto vinf = [&](double x) { return ex.potential.v_infinity(x); };
  double bs = beta_sharp(vinf, std::numeric_limits<double>::infinity(), {}, 10 * ex.beta1);
  CHECK_THAT(bs, WithinAbs(ex.beta1, 1e-10));
  CHECK(beta_sharp([](double x) { return x * x; }, 2.0) == 2.0);
  CHECK(beta_sharp([](double x) { return -x; }, 2.0) == 0.0);
}

TEST_CASE("beta_sharp never passes beta* and lands on a zero") {
  Gen g(51);
  for (int trial = 0; trial < 40; ++trial) {
    double r = g.uniform(0.1, 2), bstar = g.uniform(0.1, 3), c = g.uniform(0.1, 5);
    auto v = [r, c](double x) { return c * x * x * (r - x); };
    double bs = beta_sharp(v, bstar);
    CHECK(bs <= bstar);
    if (bs < bstar) CHECK(std::abs(v(bs)) <= 1e-9);
  }
}

TEST_CASE("uniqueness cases") {
  CHECK(example_solitary().uniqueness.classification == Uniqueness::nonunique_b);

  // trapped mass below the cap: the perturbation family exists
  auto ex = example_solitary();
  TrappedMarginal G(Marginal::box(0.1, 0.5, 0.3), 0.0);
  CHECK(classify_uniqueness(ex.potential.with_trapped(G, ex.beta1)).classification == Uniqueness::nonunique_a);

  // V_inf = Phi^2 (1 - Phi): beta = 1
  auto v = [](double x) { return x * x * (1 - x); };
  auto dv = [](double x) { return 2 * x - 3 * x * x; };
  CHECK(classify_uniqueness(background(v, dv, 1.0), {}, 1.0).classification == Uniqueness::unique_case_i);
  // V_inf = Phi^2 (1 - Phi)^2 stays nonnegative up to beta* = 2
  auto v2 = [](double x) { return x * x * (1 - x) * (1 - x); };
  auto dv2 = [](double x) { return 2 * x * (1 - x) * (1 - 2 * x); };
  CHECK(classify_uniqueness(background(v2, dv2, 1.0), {}, 2.0).classification == Uniqueness::unique_case_ii);
  // tangency at beta#: V_inf = Phi^2 (1/2 - Phi)^3
  auto v3 = [](double x) { return x * x * std::pow(0.5 - x, 3); };
  auto dv3 = [](double x) { return 2 * x * std::pow(0.5 - x, 3) - 3 * x * x * std::pow(0.5 - x, 2); };
  auto u3 = classify_uniqueness(background(v3, dv3, 0.5), {}, 2.0);
  CHECK(u3.classification == Uniqueness::nonunique_c);
  CHECK_THAT(u3.beta_sharp, WithinAbs(0.5, 1e-9));
  // transversal crossing past beta: case (b)
  auto u1 = classify_uniqueness(background(v, dv, 1.0), {}, 2.0);
  CHECK(u1.classification == Uniqueness::nonunique_b);
  CHECK(u1.slope_at_sharp < 0);
}

TEST_CASE("unique verdicts need an empty trapped band") {
  Gen g(52);
  auto v = [](double x) { return x * x * (1 - x); };
  auto dv = [](double x) { return 2 * x - 3 * x * x; };
  for (int trial = 0; trial < 20; ++trial) {
    TrappedMarginal G(random_boxes(g, 0.0, std::sqrt(2.0)), 0.0);
    auto u = classify_uniqueness(background(v, dv, 1.0, G), {}, g.uniform(1, 3));
    CHECK(u.trapped_mass > 0);
    CHECK(u.classification != Uniqueness::unique_case_i);
    CHECK(u.classification != Uniqueness::unique_case_ii);
  }
  // mass only above the cap does not count
  TrappedMarginal high(Marginal::box(2.0, 3.0, 1.0), 0.0);
  CHECK(trapped_mass_below(high, std::sqrt(2.0)) == 0.0);
  CHECK_THAT(trapped_mass_below(high, 2.5), WithinAbs(0.5, 1e-15));
}

TEST_CASE("condition failures carry their report") {
  auto ex = example_solitary();
  auto r = check_exists(ex.potential.with_trapped(std::nullopt, ex.beta1 / 2));
  try {
    throw ConditionFailure(r);
  } catch (const ConditionFailure& e) {
    CHECK(e.report().failed_clauses() == r.failed_clauses());
    CHECK(std::string(e.what()).find("G-beta2") != std::string::npos);
  }
}
