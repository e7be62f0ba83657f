#pragma once

// Internal: marginals folded about alpha, f(u) = g(alpha+u) + g(alpha-u) for
// u >= 0, and the kernel integrals every density and potential reduces to.

#include <limits>
#include <vector>

#include "vpw/core_model.hpp"
#include "vpw/densities.hpp"
#include "vpw/numerics.hpp"

namespace vpw::detail {

struct FoldedPiece {
  double a, b, h;  // 0 <= a < b in u
};

class Folded {
 public:
  Folded() = default;
  Folded(const Marginal& g, double alpha);

  bool empty() const { return empty_; }
  double f(double u) const { return g_(alpha_ + u) + g_(alpha_ - u); }
  double umax() const { return umax_; }
  const std::vector<double>& cuts() const { return cuts_; }

  // int f(u) u / sqrt(u^2 + c) du
  double k_plus(double c, const QuadratureSettings& qs, Method m) const;
  // int f(u) u / sqrt(u^2 - c) chi(u^2 - c) du
  double k_minus(double c, const QuadratureSettings& qs, Method m) const;
  // 2 int_{sqrt c}^{cap} f(u) u / sqrt(u^2 - c) du
  double k_trapped(double c, double cap, const QuadratureSettings& qs, Method m) const;
  // int f(u) u (sqrt(u^2 + c) - u) du
  double a_plus(double c, const QuadratureSettings& qs, Method m) const;
  // int f(u) u (u - sqrt(max(u^2 - c, 0))) du
  double a_minus(double c, const QuadratureSettings& qs, Method m) const;
  // int_{sqrt c}^{cap} f(u) u sqrt(u^2 - c) du
  double a_shift(double c, double cap, const QuadratureSettings& qs, Method m) const;
  // int f(u) u (sqrt(max(u^2 - c1, 0)) - sqrt(max(u^2 - c0, 0))) du, c1 <= c0
  double a_shock(double c1, double c0, const QuadratureSettings& qs, Method m) const;

 private:
  bool closed_piecewise(Method m) const { return piecewise_ && m == Method::automatic; }
  bool closed_gauss(Method m) const { return gauss_ && m == Method::automatic; }
  // adaptive integral of F over [lo,hi] in u; pieces at or beyond sqrt(c)
  // use u = sqrt(w^2 + c) so sqrt-type endpoints become smooth
  template <class F>
  double quad_u(F&& integrand, double lo, double hi, double c, const QuadratureSettings& qs) const;

  Marginal g_;
  double alpha_ = 0;
  bool empty_ = true;
  bool piecewise_ = false;
  bool gauss_ = false;  // maxwellian centred at alpha
  double gauss_a_ = 1;  // kappa / (2 q)
  double gauss_mass_ = 0;
  std::vector<FoldedPiece> pieces_;
  std::vector<double> cuts_;  // kinks of f in u
  double umax_ = 0;
};

}  // namespace vpw::detail
