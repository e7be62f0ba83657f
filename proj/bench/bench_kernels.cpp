// Times the OpenMP kernels against their serial twins and checks that both
// give identical output.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "vpw/examples.hpp"
#include "vpw/families.hpp"
#include "vpw/kernels.hpp"

using namespace vpw;

namespace {

template <class F>
double seconds(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double par, double ser, bool same) {
  std::printf("%-22s parallel %9.4f s   serial %9.4f s   speedup %5.2f   %s\n", name, par, ser, ser / par,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernel_threads());
  auto ex = example_solitary();
  const auto& pot = ex.potential;

  std::vector<double> phi(200000);
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = pot.amplitude() * (i + 0.5) / phi.size();
  PotentialSamples a, b;
  double tp = seconds([&] { a = sample_potential(pot, phi); });
  double ts = seconds([&] { b = sample_potential_serial(pot, phi); });
  row("sample_potential", tp, ts, a.v == b.v && a.dv == b.dv);

  ProfileSettings s;
  s.check_conditions = false;
  XTable xa, xb;
  tp = seconds([&] { xa = x_of_phi(pot, pot.amplitude(), 0, s); });
  ts = seconds([&] { xb = x_of_phi_serial(pot, pot.amplitude(), 0, s); });
  row("x_of_phi", tp, ts, xa.x == xb.x && xa.phi == xb.phi);

  auto prof = build_solitary(pot, s);
  PhaseDistribution da, db;
  tp = seconds([&] { da = reconstruct(prof, Species::minus); });
  ts = seconds([&] { db = reconstruct_serial(prof, Species::minus); });
  row("reconstruct", tp, ts, da.F == db.F);

  std::vector<double> taus, betas;
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; j <= 10; ++j) {
      taus.push_back(0.01 * i);
      betas.push_back(0.01 * j);
    }
  std::vector<double> ga, gb;
  tp = seconds([&] { ga = gamma_tilde_sweep(taus, betas, 1.0); }, 1);
  ts = seconds([&] { gb = gamma_tilde_sweep_serial(taus, betas, 1.0); }, 1);
  row("gamma_tilde_sweep", tp, ts, ga == gb);
  return 0;
}
