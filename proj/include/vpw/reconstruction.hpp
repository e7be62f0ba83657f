#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vpw/profile.hpp"

namespace vpw {

enum class Species { plus, minus };
std::string to_string(Species s);

// F(X, xi1) depends on X only through Phi(X); this is the characteristic
// formula for the potential's kind, evaluated at one phase point.
double phase_value(const SagdeevPotential& pot, Species sp, double phi, double xi);

// xi1 values where F(Phi, .) jumps or kinks at this Phi
std::vector<double> phase_breakpoints(const SagdeevPotential& pot, Species sp, double phi);

// int F(Phi, xi1) dxi1 by adaptive quadrature split at phase_breakpoints
double slice_density(const SagdeevPotential& pot, Species sp, double phi, const QuadratureSettings& qs = {});

struct PhaseSettings {
  int x_slices = 201;
  int xi_points = 401;
};

struct PhaseDistribution {
  Species species = Species::plus;
  std::vector<double> X, Phi, xi;
  std::vector<double> F;  // row-major, X.size() x xi.size()
  double at(std::size_t i, std::size_t j) const { return F[i * xi.size() + j]; }
};

PhaseDistribution reconstruct(const WaveProfile& prof, Species sp, const PhaseSettings& s = {});
PhaseDistribution reconstruct_serial(const WaveProfile& prof, Species sp, const PhaseSettings& s = {});

// shock end states across the front
enum class Direction { l_to_r, r_to_l };
Marginal shock_endstate_map(const Marginal& g, const PlasmaParams& p, double phi_l, Direction d, Species sp);

struct PoissonResidual {
  double max_rel = 0;        // stencil-consistent: second difference vs hat-weighted average of dV
  double max_pointwise = 0;  // second difference vs dV at the node (informational)
  std::size_t worst_index = 0;
  double scale = 0;          // max |dV(Phi)| over the grid, the normaliser
};
PoissonResidual verify_poisson(const WaveProfile& prof, const QuadratureSettings& qs = {});

// pairs of phase points on one level set of the characteristic invariant
// (and in the same branch class); invariant_offset shifts the partner off
// the level set (detector check)
double verify_characteristics(const PhaseDistribution& dist, const WaveProfile& prof, int n_samples,
                              std::uint64_t seed = 1, double invariant_offset = 0.0);

// |int dV(Phi(X)) dX| over the grid, end-corrected trapezoid per monotone branch
double verify_neutrality(const WaveProfile& prof);

// max over slices of |int F dxi1 - rho(Phi)| / (1 + rho)
double density_recovery(const WaveProfile& prof, Species sp, int slices = 201, const QuadratureSettings& qs = {});

// per-slice norms for the JSON summary; shock slices are compared with the
// end state on their own side of the centre
struct SliceSummary {
  double X, Phi, mass, l1_to_end_state;
};
std::vector<SliceSummary> summarize(const PhaseDistribution& dist, const WaveProfile& prof);

void write_phase_csv(const PhaseDistribution& dist, const std::string& path);

}  // namespace vpw
