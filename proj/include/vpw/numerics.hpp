#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpw {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ScalarFn = std::function<double(double)>;

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_subdivisions = 4000;

  void validate() const;
};

// Globally adaptive 15-point Gauss-Kronrod. Throws NumericalError when the
// subdivision budget runs out before the tolerance is met.
double integrate(const ScalarFn& f, double a, double b, const QuadratureSettings& qs = {});

// Same, with the interval pre-split at the given interior points (points
// outside (a,b) are ignored).
double integrate(const ScalarFn& f, double a, double b, const std::vector<double>& cuts,
                 const QuadratureSettings& qs = {});

// int_a^b f(u) |u| / sqrt(u^2 - c) du via w = sign(u) sqrt(u^2 - c).
// [a,b] must lie in u >= sqrt(c) or in u <= -sqrt(c).
double integrate_sqrt_singular(const ScalarFn& f, double c, double a, double b,
                               const QuadratureSettings& qs = {});

// Plain bisection on a sign-changing bracket. Stops when the bracket is below
// xtol (absolute) or after 200 halvings. Returns the endpoint nearer the root.
double bisect(const ScalarFn& f, double a, double b, double xtol = 0.0);

// Golden-section minimiser on [a,b].
double golden_min(const ScalarFn& f, double a, double b, double xtol);

// x^{3/2} - y^{3/2} for x, y >= 0 with d = x - y supplied exactly.
double pow15_diff(double x, double y, double d);

}  // namespace vpw
