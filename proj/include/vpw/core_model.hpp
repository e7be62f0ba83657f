#pragma once

#include <optional>
#include <vector>

namespace vpw {

struct BoltzmannConstants {
  double rho = 1.0;
  double kappa = 1.0;
};

struct PlasmaParams {
  double e_plus = 1.0;
  double e_minus = 1.0;
  double q_plus = 1.0;
  double q_minus = 1.0;
  double alpha = 0.0;
  int n = 1;
  std::optional<BoltzmannConstants> boltzmann;

  // throws std::invalid_argument
  void validate() const;
};

struct Piece {
  double lo;
  double hi;
  double height;
};

// A velocity distribution reduced to its xi_1-marginal g(xi_1).
class Marginal {
 public:
  enum class Kind { piecewise, maxwellian, tabulated };

  Marginal() = default;  // identically zero

  static Marginal piecewise(std::vector<Piece> pieces);
  static Marginal box(double lo, double hi, double height);
  // mass * sqrt(kappa/(2 pi q)) * exp(-kappa (xi-center)^2 / (2 q)); q is the
  // coupling constant of the species, normally q_minus.
  static Marginal maxwellian(double mass, double center, double kappa, double q);
  static Marginal tabulated(std::vector<double> knots, std::vector<double> values);

  Kind kind() const { return kind_; }
  double operator()(double xi) const;

  bool empty() const;
  double support_lo() const;
  double support_hi() const;
  double mass() const;
  double first_moment() const;
  // jump/kink locations: piece edges or knots; none for a maxwellian
  std::vector<double> breakpoints() const;
  double sup() const;

  Marginal scaled(double c) const;

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  double maxwell_mass() const { return mw_mass_; }
  double center() const { return mw_center_; }
  double kappa() const { return mw_kappa_; }
  double temperature() const { return mw_q_; }
  double sigma() const;

  static constexpr double kTruncationSigmas = 12.0;

 private:
  Kind kind_ = Kind::piecewise;
  std::vector<Piece> pieces_;
  std::vector<double> knots_, values_;
  double mw_mass_ = 0, mw_center_ = 0, mw_kappa_ = 1, mw_q_ = 1;
};

// G: a marginal that vanishes for xi_1 <= alpha.
class TrappedMarginal {
 public:
  TrappedMarginal(Marginal g, double alpha);
  const Marginal& marginal() const { return g_; }
  double alpha() const { return alpha_; }
  double operator()(double xi) const { return g_(xi); }
  TrappedMarginal scaled(double c) const { return TrappedMarginal(g_.scaled(c), alpha_); }

 private:
  Marginal g_;
  double alpha_;
};

double marginal_mass(const Marginal& g);

double default_symmetry_tol(const Marginal& g);

// true iff |g(alpha+s) - g(alpha-s)| <= tol for sampled s in (0, delta).
// tol < 0 selects the kind default.
bool check_symmetry(const Marginal& g, double alpha, double delta, double tol = -1.0);

// sup{delta : symmetry holds on (0, delta)}; +inf when symmetric everywhere
double symmetric_extent(const Marginal& g, double alpha, double tol = -1.0);

double beta_star(const Marginal& g_minus, const PlasmaParams& params, double tol = -1.0);

// h(alpha+v) = g(alpha + sign(v) sqrt(v^2 + c)) where v^2 + c > 0, zero
// elsewhere. Exact for piecewise marginals and for maxwellians centred at
// alpha with c >= 0; other kinds are resampled on a dense tabulated grid.
Marginal energy_shift(const Marginal& g, double alpha, double c);

// max |a - b| over breakpoint midpoints and a dense grid
double max_abs_difference(const Marginal& a, const Marginal& b);

// L1 distance, by quadrature between breakpoints
double l1_distance(const Marginal& a, const Marginal& b);

}  // namespace vpw
