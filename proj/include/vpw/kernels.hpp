#pragma once

// Grid kernels. Each has an OpenMP version and a plain serial twin; the two
// must agree bit for bit (every element is computed independently).

#include <vector>

#include "vpw/numerics.hpp"
#include "vpw/sagdeev.hpp"

namespace vpw {

// f at every x. An exception thrown inside the loop is rethrown afterwards.
std::vector<double> map_values(const ScalarFn& f, const std::vector<double>& xs);
std::vector<double> map_values_serial(const ScalarFn& f, const std::vector<double>& xs);

struct PotentialSamples {
  std::vector<double> phi, v, dv;
};
PotentialSamples sample_potential(const SagdeevPotential& pot, const std::vector<double>& phi);
PotentialSamples sample_potential_serial(const SagdeevPotential& pot, const std::vector<double>& phi);

// out[i] = int_{nodes[i]}^{nodes[i+1]} f by a fixed 20-point Gauss rule;
// meant for cells on which f is smooth
std::vector<double> cell_integrals(const ScalarFn& f, const std::vector<double>& nodes);
std::vector<double> cell_integrals_serial(const ScalarFn& f, const std::vector<double>& nodes);

int kernel_threads();

}  // namespace vpw
