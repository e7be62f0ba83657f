#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpw/conditions.hpp"
#include "vpw/sagdeev.hpp"

namespace vpw {

struct ProfileSettings {
  int points_per_branch = 2001;  // uniform output grid per monotone branch
  int table_refinement = 8;      // X(Phi) table cells per output cell
  double eps_tail = 1e-6;        // divergent ends stop at eps_tail * amplitude
  bool check_conditions = true;  // run check_exists before building
  ConditionSettings conditions;

  void validate() const;
};

// Piecewise cubic Hermite curve with given nodal slopes.
class HermiteCurve {
 public:
  HermiteCurve() = default;
  // slopes are limited (Fritsch-Carlson) on cells where the data are monotone
  HermiteCurve(std::vector<double> x, std::vector<double> y, std::vector<double> dy);
  double operator()(double x) const;
  double derivative(double x) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  bool empty() const { return x_.empty(); }
  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& slopes() const { return dy_; }

 private:
  std::size_t cell(double x) const;
  std::vector<double> x_, y_, dy_;
};

// X(Phi) = |int_from^Phi dphi / sqrt(2V)| on nodes running from `from`
// toward `to`; dphi holds dPhi/dX along increasing X.
struct XTable {
  std::vector<double> phi, x, dphi;
  bool stopped_early = false;  // `to` is a divergent end and was not reached
};

XTable x_of_phi(const SagdeevPotential& pot, double from_phi, double to_phi, const ProfileSettings& s = {});
XTable x_of_phi_serial(const SagdeevPotential& pot, double from_phi, double to_phi, const ProfileSettings& s = {});

struct WaveProfile {
  WaveKind kind = WaveKind::solitary;
  double amplitude = 0;
  double period = 0;        // trains
  double length_left = 0;   // solitary/shock: grid spans [-length_left, length_right]
  double length_right = 0;
  double eps_tail = 0;
  std::vector<double> X, Phi, dPhi, V, rho_plus, rho_minus;
  HermiteCurve curve;  // Phi(X) on the whole grid range, from the fine table
  std::optional<SagdeevPotential> pot;

  double phi_at(double x) const;
  double dphi_at(double x) const;
  const SagdeevPotential& potential() const;
};

WaveProfile build_solitary(const SagdeevPotential& pot, const ProfileSettings& s = {});
WaveProfile build_shock(const SagdeevPotential& pot, const ProfileSettings& s = {});
WaveProfile build_train(const SagdeevPotential& pot, const ProfileSettings& s = {});
WaveProfile build_profile(const SagdeevPotential& pot, const ProfileSettings& s = {});

// gamma = 2 int_0^beta dPhi / sqrt(2V)
double period(const SagdeevPotential& pot, const ProfileSettings& s = {});

// max |dPhi^2 - 2V(Phi)| / max(1, 2V) over interior nodes
double energy_residual(const WaveProfile& p);

void write_profile_csv(const WaveProfile& p, const std::string& path);
// the grid itself becomes the interpolation table
WaveProfile read_profile_csv(const std::string& path, const SagdeevPotential& pot);

}  // namespace vpw
