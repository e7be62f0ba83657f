#include "support.hpp"

#include "vpw/examples.hpp"
#include "vpw/kernels.hpp"

using namespace vpw;
using namespace vt;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

}  // namespace

TEST_CASE("map_values: parallel equals serial") {
  auto xs = grid(-3, 3, 1001);
  ScalarFn f = [](double x) { return std::exp(-x * x) * std::cos(7 * x); };
  auto a = map_values(f, xs), b = map_values_serial(f, xs);
  CHECK(a == b);
  CHECK(a[500] == f(0.0));
  CHECK(map_values(f, {}).empty());
}

TEST_CASE("exceptions inside the parallel loop surface afterwards") {
  auto xs = grid(0, 1, 200);
  ScalarFn bad = [](double x) -> double {
    if (x > 0.5) throw std::domain_error("past the half");
    return x;
  };
  CHECK_THROWS_AS(map_values(bad, xs), std::domain_error);
  CHECK_THROWS_AS(map_values_serial(bad, xs), std::domain_error);
}

TEST_CASE("sample_potential: parallel equals serial") {
  std::vector<SagdeevPotential> pots{example_solitary().potential, example_shock(1.0).potential,
                                     train_box_family(PlasmaParams{}, 1.0, 1.0).potential};
  for (const auto& pot : pots) {
    auto phi = grid(0, pot.amplitude(), 513);
    auto a = sample_potential(pot, phi), b = sample_potential_serial(pot, phi);
    CHECK(a.phi == b.phi);
    CHECK(a.v == b.v);
    CHECK(a.dv == b.dv);
    CHECK(a.v[100] == pot.value(phi[100]));
  }
}

TEST_CASE("cell_integrals: parallel equals serial and sums correctly") {
  auto nodes = grid(0, M_PI, 65);
  ScalarFn f = [](double x) { return std::sin(x); };
  auto a = cell_integrals(f, nodes), b = cell_integrals_serial(f, nodes);
  CHECK(a == b);
  REQUIRE(a.size() == 64);
  double s = 0;
  for (double v : a) s += v;
  CHECK_THAT(s, WithinAbs(2.0, 1e-14));
  CHECK(cell_integrals(f, {1.0}).empty());
}

TEST_CASE("x_of_phi: parallel equals serial") {
  auto ex = example_solitary();
  auto a = x_of_phi(ex.potential, ex.beta1, 0.0), b = x_of_phi_serial(ex.potential, ex.beta1, 0.0);
  CHECK(a.phi == b.phi);
  CHECK(a.x == b.x);
  CHECK(a.dphi == b.dphi);
  CHECK(a.stopped_early == b.stopped_early);
}

TEST_CASE("thread count") { CHECK(kernel_threads() >= 1); }
