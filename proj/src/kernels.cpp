#include "vpw/kernels.hpp"

#include <exception>

#include <boost/math/quadrature/gauss.hpp>
#include <omp.h>

namespace vpw {

namespace {

// runs body(i) for i in [0,n) on the OpenMP team; keeps the first exception
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr err;
  const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < m; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(vpw_kernel_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<double> map_values(const ScalarFn& f, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = f(xs[i]); });
  return out;
}

std::vector<double> map_values_serial(const ScalarFn& f, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

PotentialSamples sample_potential(const SagdeevPotential& pot, const std::vector<double>& phi) {
  PotentialSamples s{phi, std::vector<double>(phi.size()), std::vector<double>(phi.size())};
  parallel_for(phi.size(), [&](std::size_t i) {
    s.v[i] = pot.value(phi[i]);
    s.dv[i] = pot.slope(phi[i]);
  });
  return s;
}

PotentialSamples sample_potential_serial(const SagdeevPotential& pot, const std::vector<double>& phi) {
  PotentialSamples s{phi, std::vector<double>(phi.size()), std::vector<double>(phi.size())};
  for (std::size_t i = 0; i < phi.size(); ++i) {
    s.v[i] = pot.value(phi[i]);
    s.dv[i] = pot.slope(phi[i]);
  }
  return s;
}

namespace {
double gauss20(const ScalarFn& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}
}  // namespace

std::vector<double> cell_integrals(const ScalarFn& f, const std::vector<double>& nodes) {
  if (nodes.size() < 2) return {};
  std::vector<double> out(nodes.size() - 1);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = gauss20(f, nodes[i], nodes[i + 1]); });
  return out;
}

std::vector<double> cell_integrals_serial(const ScalarFn& f, const std::vector<double>& nodes) {
  if (nodes.size() < 2) return {};
  std::vector<double> out(nodes.size() - 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = gauss20(f, nodes[i], nodes[i + 1]);
  return out;
}

int kernel_threads() { return omp_get_max_threads(); }

}  // namespace vpw
