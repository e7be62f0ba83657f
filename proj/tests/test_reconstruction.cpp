#include "support.hpp"

#include <filesystem>
#include <fstream>

#include "vpw/examples.hpp"
#include "vpw/reconstruction.hpp"

using namespace vpw;
using namespace vt;

namespace {

ProfileSettings coarse() {
  ProfileSettings s;
  s.points_per_branch = 401;
  return s;
}

// a genuine wave with trapped ions: the injected box on top of the worked example
SagdeevPotential solitary_with_trapped() { return solitary_inject_case_b(example_solitary().potential).potential; }

}  // namespace

TEST_CASE("phase values at the tail reproduce the end states") {
  Gen g(71);
  auto sol = example_solitary().potential;
  for (int k = 0; k < 300; ++k) {
    double xi = g.uniform(-4, 4);
    CHECK(phase_value(sol, Species::plus, 0.0, xi) == sol.g_plus()(xi));
    CHECK(phase_value(sol, Species::minus, 0.0, xi) == sol.g_minus()(xi));
  }
  for (double phil : {0.5, 1.0, 2.0}) {
    auto sh = example_shock(phil);
    for (int k = 0; k < 300; ++k) {
      double xi = g.uniform(-4, 4);
      // ions enter from the left at Phi_l, electrons from the right at 0
      CHECK(phase_value(sh.potential, Species::plus, phil, xi) == sh.ends.gl_plus(xi));
      CHECK_THAT(phase_value(sh.potential, Species::plus, 0.0, xi), WithinAbs(sh.ends.gr_plus(xi), 1e-14));
      CHECK(phase_value(sh.potential, Species::minus, 0.0, xi) == sh.ends.gr_minus(xi));
      CHECK_THAT(phase_value(sh.potential, Species::minus, phil, xi), WithinAbs(sh.ends.gl_minus(xi), 1e-14));
    }
  }
}

TEST_CASE("the trapped branch at the crest is G itself") {
  auto pot = solitary_with_trapped();
  const double beta = pot.amplitude(), cap = std::sqrt(2 * beta);
  Gen g(72);
  for (int k = 0; k < 300; ++k) {
    double v = g.uniform(-cap, cap);
    CHECK(phase_value(pot, Species::plus, beta, v) == (*pot.trapped())(std::abs(v)));
  }
  // at Phi = 0 nothing is trapped
  CHECK(phase_value(pot, Species::plus, 0.0, 0.3) == pot.g_plus()(0.3));
}

TEST_CASE("slice integrals recover the densities") {
  Gen g(73);
  std::vector<SagdeevPotential> pots{example_solitary().potential, solitary_with_trapped(),
                                     example_shock(1.0).potential, train_box_family(PlasmaParams{}, 1.0, 1.0).potential};
  for (const auto& pot : pots) {
    for (int k = 0; k < 40; ++k) {
      double phi = g.uniform(0, pot.amplitude());
      CHECK_THAT(slice_density(pot, Species::plus, phi), WithinAbs(pot.rho_plus(phi), 1e-10));
      CHECK_THAT(slice_density(pot, Species::minus, phi), WithinAbs(pot.rho_minus(phi), 1e-10));
    }
  }
  auto prof = build_solitary(solitary_with_trapped(), coarse());
  CHECK(density_recovery(prof, Species::plus, 51) < 1e-10);
  CHECK(density_recovery(prof, Species::minus, 51) < 1e-10);
}

TEST_CASE("shock end-state map") {
  PlasmaParams p;
  for (double phil : {0.5, 1.0, 2.0}) {
    auto e = shock_example_states(p, phil);
    auto gr = shock_endstate_map(e.gl_plus, p, phil, Direction::l_to_r, Species::plus);
    CHECK(l1_distance(gr, e.gr_plus) < 1e-12);
    auto gl = shock_endstate_map(e.gr_minus, p, phil, Direction::r_to_l, Species::minus);
    CHECK(l1_distance(gl, e.gl_minus) < 1e-12);
    // ions slower than sqrt(2 Phi_l) are reflected: the inverse leaves that band
    // empty and gives the rest back
    auto back = shock_endstate_map(gr, p, phil, Direction::r_to_l, Species::plus);
    const double band = std::sqrt(2 * phil);
    Gen g(75);
    for (int k = 0; k < 200; ++k) {
      double u = g.uniform(-3, 3);
      CHECK(back(u) == (std::abs(u) < band ? 0.0 : e.gl_plus(u)));
    }
    CHECK(marginal_mass(shock_endstate_map(Marginal{}, p, phil, Direction::l_to_r, Species::plus)) == 0.0);
  }
  auto lopsided = Marginal::box(-0.1, 0.5, 1.0);
  CHECK_THROWS_AS(shock_endstate_map(lopsided, p, 1.0, Direction::l_to_r, Species::plus), std::domain_error);
  CHECK_THROWS_AS(shock_endstate_map(lopsided, p, 0.0, Direction::l_to_r, Species::plus), std::invalid_argument);
}

TEST_CASE("round trip of random symmetric marginals off the band") {
  Gen g(74);
  PlasmaParams p;
  for (int trial = 0; trial < 30; ++trial) {
    double phil = g.uniform(0.1, 2), band = std::sqrt(2 * phil);
    auto m = random_even_boxes(g, 0.0, band, band + 3);
    auto fwd = shock_endstate_map(m, p, phil, Direction::l_to_r, Species::plus);
    auto back = shock_endstate_map(fwd, p, phil, Direction::r_to_l, Species::plus);
    CHECK(l1_distance(back, m) < 1e-10);
  }
}

TEST_CASE("the Poisson check catches a perturbed profile") {
  auto prof = build_solitary(example_solitary().potential, coarse());
  auto r = verify_poisson(prof);
  CHECK(r.max_rel < 1e-6);
  CHECK(r.scale > 0);
  auto bad = prof;
  std::size_t j = bad.Phi.size() / 3;
  bad.Phi[j] += 1e-3;
  auto rb = verify_poisson(bad);
  CHECK(rb.max_rel > 1e-2);
  CHECK(std::abs(static_cast<long>(rb.worst_index) - static_cast<long>(j)) <= 1);
}

TEST_CASE("the characteristics check catches an off-level partner") {
  auto prof = build_solitary(solitary_with_trapped(), coarse());
  PhaseSettings ps;
  ps.x_slices = 61;
  ps.xi_points = 121;
  for (Species sp : {Species::plus, Species::minus}) {
    auto d = reconstruct(prof, sp, ps);
    CHECK(verify_characteristics(d, prof, 2000, 5) < 1e-12);
    CHECK(verify_characteristics(d, prof, 2000, 5, 0.3) > 1e-2);
  }
}

TEST_CASE("neutrality of the worked examples") {
  CHECK(verify_neutrality(build_solitary(example_solitary().potential, coarse())) < 1e-4);
  CHECK(verify_neutrality(build_shock(example_shock(1.0).potential, coarse())) < 1e-8);
  CHECK(verify_neutrality(example_train(1, 1, PlasmaParams{}, coarse()).profile) < 1e-8);
}

TEST_CASE("reconstructed F is nonnegative and bounded by the marginals") {
  std::vector<WaveProfile> profs{build_solitary(solitary_with_trapped(), coarse()),
                                 build_shock(example_shock(0.5).potential, coarse()),
                                 example_train(1, 1, PlasmaParams{}, coarse()).profile};
  PhaseSettings ps;
  ps.x_slices = 41;
  ps.xi_points = 81;
  for (const auto& prof : profs) {
    const auto& pot = prof.potential();
    double sup = 0;
    for (const auto* m : {&pot.g_plus(), &pot.g_minus()})
      for (const auto& b : m->pieces()) sup = std::max(sup, b.height);
    if (pot.trapped())
      for (const auto& b : pot.trapped()->marginal().pieces()) sup = std::max(sup, b.height);
    for (Species sp : {Species::plus, Species::minus}) {
      auto d = reconstruct(prof, sp, ps);
      for (double f : d.F) {
        CHECK(f >= 0);
        CHECK(f <= sup);
      }
    }
  }
}

TEST_CASE("parallel and serial reconstruction agree bit for bit") {
  auto prof = build_shock(example_shock(2.0).potential, coarse());
  for (Species sp : {Species::plus, Species::minus}) {
    auto a = reconstruct(prof, sp), b = reconstruct_serial(prof, sp);
    CHECK(a.X == b.X);
    CHECK(a.xi == b.xi);
    CHECK(a.F == b.F);
  }
}

TEST_CASE("slice summaries and csv output") {
  auto prof = build_solitary(example_solitary().potential, coarse());
  PhaseSettings ps;
  ps.x_slices = 21;
  auto d = reconstruct(prof, Species::plus, ps);
  auto sum = summarize(d, prof);
  REQUIRE(sum.size() == d.X.size());
  // the outermost slices sit in the tail, next to the end state
  CHECK(sum.front().l1_to_end_state < 1e-2);
  CHECK(sum.back().l1_to_end_state < 1e-2);
  CHECK(sum[sum.size() / 2].l1_to_end_state > sum.front().l1_to_end_state);

  auto path = (std::filesystem::temp_directory_path() / "vpw_phase_test.csv").string();
  write_phase_csv(d, path);
  std::ifstream in(path);
  std::string header;
  while (std::getline(in, header) && header[0] == '#') {
  }
  CHECK(header.find("xi") != std::string::npos);
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') ++rows;
  CHECK(rows == d.F.size());
  std::filesystem::remove(path);
}
