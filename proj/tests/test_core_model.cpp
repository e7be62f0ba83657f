#include "support.hpp"

#include <limits>

#include "vpw/examples.hpp"

using namespace vpw;
using namespace vt;

TEST_CASE("marginal masses") {
  PlasmaParams p;
  CHECK_THAT(marginal_mass(solitary_example_g_plus(p)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(marginal_mass(solitary_example_g_minus(p)), WithinAbs(1.0, 1e-15));
  CHECK(marginal_mass(Marginal::piecewise({})) == 0.0);
  CHECK(marginal_mass(Marginal{}) == 0.0);
  CHECK_THAT(marginal_mass(Marginal::maxwellian(2.5, 0.3, 1.7, 1.0)), WithinRel(2.5, 1e-14));
  CHECK_THAT(marginal_mass(Marginal::maxwellian(2.5, -4.0, 0.2, 3.0)), WithinRel(2.5, 1e-14));

  // e+ scaling shows up in the box heights, not in the charge-weighted mass
  p.e_plus = 2.0;
  p.q_plus = 3.0;
  CHECK_THAT(p.e_plus * marginal_mass(solitary_example_g_plus(p)), WithinAbs(1.0, 1e-15));
}

TEST_CASE("piecewise mass is the exact sum of the boxes") {
  Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_boxes(g, -5, 5, 6);
    CHECK(marginal_mass(m) == sum_of_boxes(m));
  }
}

TEST_CASE("evaluation is nonnegative and deterministic") {
  Gen g(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_boxes(g, -3, 3);
    auto w = Marginal::maxwellian(g.uniform(0, 3), g.uniform(-1, 1), g.uniform(0.2, 4), g.uniform(0.5, 2));
    for (int k = 0; k < 100; ++k) {
      double x = g.uniform(-4, 4);
      CHECK(m(x) >= 0);
      CHECK(w(x) >= 0);
      CHECK(m(x) == m(x));
    }
  }
}

TEST_CASE("values at jumps are the mean of the one-sided limits") {
  auto b = Marginal::box(0, 1, 2.0);
  CHECK(b(0.0) == 1.0);
  CHECK(b(1.0) == 1.0);
  CHECK(b(0.5) == 2.0);
  CHECK(b(1.5) == 0.0);
}

TEST_CASE("tabulated marginals interpolate linearly") {
  auto t = Marginal::tabulated({0, 1, 3}, {0, 2, 0});
  CHECK_THAT(t(0.5), WithinAbs(1.0, 1e-15));
  CHECK_THAT(t(2.0), WithinAbs(1.0, 1e-15));
  CHECK(t(-1) == 0);
  CHECK_THAT(marginal_mass(t), WithinAbs(3.0, 1e-15));
  CHECK_THROWS_AS(Marginal::tabulated({0, 0}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Marginal::tabulated({0, 1}, {1, -1}), std::invalid_argument);
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS_AS(Marginal::piecewise({{0, 2, 1}, {1, 3, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Marginal::box(0, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(Marginal::maxwellian(1, 0, 0, 1), std::invalid_argument);
  PlasmaParams p;
  p.q_minus = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("symmetry of even marginals") {
  Gen g(13);
  for (int trial = 0; trial < 40; ++trial) {
    double alpha = g.uniform(-1, 1);
    auto m = random_even_boxes(g, alpha, 0.05, 3);
    double d = g.uniform(0.01, 5);
    CHECK(check_symmetry(m, alpha, d));
    CHECK(std::isinf(symmetric_extent(m, alpha)));
  }
  CHECK(std::isinf(symmetric_extent(Marginal::maxwellian(1, 0.4, 1, 1), 0.4)));
}

TEST_CASE("the electron example marginal is symmetric on every band") {
  // three boxes placed symmetrically about 0, so no band breaks the symmetry
  PlasmaParams p;
  auto gm = solitary_example_g_minus(p);
  const double r = std::sqrt(2.0);
  CHECK(check_symmetry(gm, 0.0, 0.1 * r));
  CHECK(check_symmetry(gm, 0.0, 1.05 * 1.9 * r));
  CHECK(std::isinf(beta_star(gm, p)));
}

TEST_CASE("beta* of an asymmetric core") {
  PlasmaParams p;
  const double r = std::sqrt(2.0);
  // central box reaching further right than left: symmetric up to 0.1 sqrt 2
  auto g = Marginal::piecewise({{-0.1 * r, 0.2 * r, 1.0}, {r, 1.9 * r, 0.5}, {-1.9 * r, -r, 0.5}});
  CHECK_THAT(symmetric_extent(g, 0.0), WithinRel(0.1 * r, 1e-9));
  CHECK_THAT(beta_star(g, p), WithinRel(0.01, 1e-8));
  CHECK_FALSE(check_symmetry(g, 0.0, 0.2 * r));
  CHECK(check_symmetry(g, 0.0, 0.09 * r));
}

TEST_CASE("split-box train electrons are symmetric past beta + tau") {
  PlasmaParams p;
  for (double beta : {0.3, 1.0}) {
    for (double tau : {0.1, 1.0}) {
      double a = std::sqrt(2 * beta), b = std::sqrt(2 * (beta + tau));
      auto h = Marginal::piecewise({{-b, -a, 0.3}, {a, b, 0.3}});
      CHECK(beta_star(h, p) >= beta + tau);
    }
  }
}

TEST_CASE("symmetry on a band implies symmetry on every smaller band") {
  Gen g(14);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_boxes(g, -2, 2, 5);
    double d1 = g.uniform(0, 2.5), d2 = g.uniform(0, d1);
    if (check_symmetry(m, 0.0, d1)) CHECK(check_symmetry(m, 0.0, d2));
  }
}

TEST_CASE("removing asymmetric tail mass never lowers beta*") {
  Gen g(15);
  PlasmaParams p;
  for (int trial = 0; trial < 40; ++trial) {
    auto core = random_even_boxes(g, 0.0, 0.0, 1.0, 2);
    double lo = g.uniform(1.2, 2), hi = lo + g.uniform(0.1, 1);
    std::vector<Piece> with_tail = core.pieces();
    with_tail.push_back({lo, hi, g.uniform(0.1, 1)});
    double before = beta_star(Marginal::piecewise(with_tail), p);
    double after = beta_star(core, p);
    CHECK(after >= before);
    CHECK(before <= 0.5 * lo * lo * (1 + 1e-9));
  }
}

TEST_CASE("energy shift of boxes and maxwellians") {
  // outer boxes |u| in [1, 1.5] pushed down by c = 1 land on [0, sqrt(1.25)]
  auto g = Marginal::piecewise({{-1.5, -1, 0.5}, {1, 1.5, 0.5}});
  auto h = energy_shift(g, 0.0, 1.0);
  CHECK_THAT(h.support_lo(), WithinAbs(-std::sqrt(1.25), 1e-14));
  CHECK_THAT(h.support_hi(), WithinAbs(std::sqrt(1.25), 1e-14));
  CHECK(h(0.5) == 0.5);

  auto w = Marginal::maxwellian(1.3, 0.2, 1.5, 1.0);
  auto ws = energy_shift(w, 0.2, 0.7);
  Gen r(16);
  for (int k = 0; k < 200; ++k) {
    double v = r.uniform(-4, 4);
    double want = w(0.2 + (v < 0 ? -1 : 1) * std::sqrt(v * v + 0.7));
    CHECK_THAT(ws(0.2 + v), WithinAbs(want, 1e-13));
  }
}

TEST_CASE("distances between marginals") {
  auto a = Marginal::box(0, 1, 1), b = Marginal::box(0.5, 1.5, 1);
  CHECK_THAT(l1_distance(a, b), WithinAbs(1.0, 1e-12));
  CHECK_THAT(max_abs_difference(a, b), WithinAbs(1.0, 1e-15));
  CHECK(l1_distance(a, a) == 0.0);
}
