#include "support.hpp"

#include "vpw/numerics.hpp"

using namespace vpw;
using namespace vt;

TEST_CASE("adaptive integration of smooth and kinked integrands") {
  CHECK_THAT(integrate([](double x) { return std::sin(x); }, 0, M_PI), WithinRel(2.0, 1e-12));
  CHECK_THAT(integrate([](double x) { return std::exp(-x * x); }, -8, 8), WithinRel(std::sqrt(M_PI), 1e-12));
  // |x - 1/3| has a kink; with the cut it is integrated piecewise exactly
  auto kink = [](double x) { return std::abs(x - 1.0 / 3.0); };
  double want = 0.5 * (1.0 / 9.0 + 4.0 / 9.0);
  CHECK_THAT(integrate(kink, 0, 1, std::vector<double>{1.0 / 3.0}), WithinRel(want, 1e-14));
  CHECK_THAT(integrate(kink, 0, 1), WithinRel(want, 1e-9));
  CHECK(integrate([](double) { return 1.0; }, 2, 2) == 0.0);
}

TEST_CASE("integration reports non-convergence") {
  QuadratureSettings q;
  q.max_subdivisions = 2;
  q.rel_tol = 1e-15;
  q.abs_tol = 1e-300;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1 / x); }, 1e-6, 1, q), NumericalError);
  QuadratureSettings bad;
  bad.rel_tol = 0;
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0, 1, bad), std::invalid_argument);
}

TEST_CASE("square-root singular integrals") {
  auto one = [](double) { return 1.0; };
  CHECK_THAT(integrate_sqrt_singular(one, 1.0, 1.0, std::sqrt(2.0)), WithinAbs(1.0, 1e-14));
  CHECK_THAT(integrate_sqrt_singular(one, 0.0, 0.0, 2.0), WithinAbs(2.0, 1e-14));
  // f(u) = u, c = 1 on [1, 2]: int_0^sqrt3 sqrt(w^2 + 1) dw
  const double s3 = std::sqrt(3.0);
  const double want = 0.5 * (s3 * 2.0 + std::asinh(s3));
  CHECK_THAT(integrate_sqrt_singular([](double u) { return u; }, 1.0, 1.0, 2.0), WithinRel(want, 1e-13));
  CHECK_THAT(want, WithinAbs(2.39053, 1e-5));
  // the mirrored branch
  CHECK_THAT(integrate_sqrt_singular([](double u) { return -u; }, 1.0, -2.0, -1.0), WithinRel(want, 1e-13));
  CHECK_THROWS_AS(integrate_sqrt_singular(one, 1.0, 0.5, 2.0), std::domain_error);
  CHECK_THROWS_AS(integrate_sqrt_singular(one, 1.0, -2.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(integrate_sqrt_singular(one, -1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("singular integrals against a brute-force midpoint rule") {
  Gen g(21);
  for (int trial = 0; trial < 20; ++trial) {
    double c = g.uniform(0.1, 3), a = std::sqrt(c), b = a + g.uniform(0.1, 2);
    double k = g.uniform(-1, 1);
    auto f = [k](double u) { return 1 + k * std::cos(u); };
    double got = integrate_sqrt_singular(f, c, a, b);
    // midpoint rule in w = sqrt(u^2 - c): no singularity left
    const int n = 200000;
    double wb = std::sqrt(b * b - c), h = wb / n, s = 0;
    for (int i = 0; i < n; ++i) {
      double w = (i + 0.5) * h;
      s += f(std::sqrt(w * w + c));
    }
    CHECK_THAT(got, WithinRel(s * h, 1e-9));
  }
}

TEST_CASE("bisection and golden section") {
  double r = bisect([](double x) { return x * x - 2; }, 0, 2);
  CHECK_THAT(r, WithinAbs(std::sqrt(2.0), 4e-16));
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1; }, -1, 1), NumericalError);
  // exact zero at an end
  CHECK(bisect([](double x) { return x - 1; }, 1, 3) == 1.0);
  double m = golden_min([](double x) { return (x - 0.3) * (x - 0.3); }, 0, 1, 1e-10);
  CHECK_THAT(m, WithinAbs(0.3, 1e-8));
}

TEST_CASE("x^1.5 - y^1.5 without cancellation") {
  Gen g(22);
  for (int k = 0; k < 500; ++k) {
    double y = g.log_uniform(1e-6, 10), d = g.log_uniform(1e-14, 1) * (g.uniform(0, 1) < 0.5 ? -1 : 1);
    double x = y + d;
    if (x < 0) continue;
    d = x - y;  // exact for the representable pair
    // y^1.5 (exp(1.5 log(1 + d/y)) - 1), in long double
    long double ly = y, want = std::pow(ly, 1.5L) * std::expm1(1.5L * std::log1p(static_cast<long double>(d) / ly));
    double got = pow15_diff(x, y, d);
    CHECK_THAT(got, WithinRel(static_cast<double>(want), 1e-12));
  }
  CHECK(pow15_diff(0, 0, 0) == 0);
  CHECK_THAT(pow15_diff(4, 0, 4), WithinAbs(8.0, 1e-15));
}
