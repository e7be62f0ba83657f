// vpwave: traveling waves of the two-species Vlasov-Poisson system from
// Sagdeev potentials.
//
// exit codes: 0 ok, 2 a wave condition fails, 3 bad input, 4 numerical failure

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "vpw/examples.hpp"
#include "vpw/families.hpp"
#include "vpw/io.hpp"
#include "vpw/oracle.hpp"

using nlohmann::json;
using namespace vpw;

namespace {

constexpr int kOk = 0, kCondition = 2, kInput = 3, kNumerical = 4;

std::filesystem::path prepare_dir(const std::string& out) {
  std::filesystem::path d(out);
  std::error_code ec;
  std::filesystem::create_directories(d, ec);
  if (ec) throw InputError("cannot create output directory " + out);
  return d;
}

void write_json(const std::filesystem::path& p, const json& j) { write_file_atomic(p.string(), j.dump(2) + "\n"); }

// profile.csv, phase_plus.csv, phase_minus.csv, report.json
void emit_wave(const std::filesystem::path& dir, const WaveProfile& prof, const PhaseSettings& ps, json report) {
  write_profile_csv(prof, (dir / "profile.csv").string());
  report["residuals"] = to_json(verify_all(prof));
  if (prof.potential().has_marginals()) {
    for (auto sp : {Species::plus, Species::minus}) {
      auto d = reconstruct(prof, sp, ps);
      write_phase_csv(d, (dir / ("phase_" + to_string(sp) + ".csv")).string());
      report["slices_" + to_string(sp)] = to_json(summarize(d, prof));
    }
  }
  report["profile"] = {{"kind", to_string(prof.kind)},
                       {"amplitude", prof.amplitude},
                       {"period", prof.period},
                       {"length_left", prof.length_left},
                       {"length_right", prof.length_right},
                       {"points", prof.X.size()}};
  write_json(dir / "report.json", report);
}

// "1.5", "0.5gamma_star", "gamma_star"; "γ⋆" is accepted for gamma_star
double parse_gamma(const std::string& s, const PlasmaParams& p) {
  std::string tag = "gamma_star";
  auto pos = s.find(tag);
  if (pos == std::string::npos && (pos = s.find("γ⋆")) != std::string::npos) tag = "γ⋆";
  try {
    if (pos == std::string::npos) return std::stod(s);
    if (pos + tag.size() != s.size()) throw InputError("bad --gamma value " + s);
    double f = pos == 0 ? 1.0 : std::stod(s.substr(0, pos));
    return f * boltzmann_gamma_star(p);
  } catch (const std::logic_error&) {
    throw InputError("bad --gamma value " + s);
  }
}

PlasmaParams boltzmann_defaults() {
  PlasmaParams p;
  p.boltzmann = BoltzmannConstants{};
  return p;
}

json check_report(const SagdeevPotential& pot, const Config& c, const ConditionSettings& cs, bool& exists) {
  ConditionReport r = c.ends ? check_exists(pot, *c.ends, cs) : check_exists(pot, cs);
  exists = r.exists();
  json j = {{"report", to_json(r)}};
  if (pot.kind() == WaveKind::solitary) j["uniqueness"] = to_json(classify_uniqueness(pot, cs));
  return j;
}

int run_oracle(const Config& c, long points) {
  auto pot = make_potential(c);
  const auto& p = c.params;
  oracle::BruteSettings bs;
  bs.points = points;
  json rows = json::array();
  double worst = 0;
  for (int i = 0; i <= 10; ++i) {
    const double phi = c.amplitude * i / 10;
    auto add = [&](const char* name, double fast, double brute) {
      double rel = brute == 0 ? std::abs(fast) : std::abs(fast - brute) / std::abs(brute);
      worst = std::max(worst, rel);
      rows.push_back({{"operation", name}, {"Phi", phi}, {"fast", fast}, {"brute", brute}, {"rel", rel}});
    };
    if (c.kind == WaveKind::shock) {
      add("rho_shock_plus", rho_shock_plus(c.g_plus, p, c.amplitude, phi, c.quadrature),
          oracle::rho_shock_plus(c.g_plus, p, c.amplitude, phi, bs));
    } else {
      add("rho_plus_inf", rho_plus_inf(c.g_plus, p, phi, c.quadrature), oracle::rho_plus_inf(c.g_plus, p, phi, bs));
      if (pot.trapped())
        add("rho_plus_trapped", rho_plus_trapped(*pot.trapped(), p, c.amplitude, phi, c.quadrature),
            oracle::rho_plus_trapped(*pot.trapped(), p, c.amplitude, phi, bs));
    }
    add("rho_minus", rho_minus(c.g_minus, p, phi, c.quadrature), oracle::rho_minus(c.g_minus, p, phi, bs));
  }
  json out = {{"points", points}, {"max_rel", worst}, {"comparisons", rows}};
  std::cout << out.dump(2) << "\n";
  return worst <= 1e-6 ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling waves (solitary, shock, train) of the two-species Vlasov-Poisson system.\n"
               "Config: JSON with \"schema\": 1, \"kind\", \"params\", \"amplitude\", marginals and optional "
               "\"settings\" (rel_tol 1e-10, abs_tol 1e-13, points_per_branch 2001, table_refinement 8, "
               "eps_tail 1e-6, x_slices 201, xi_points 401)."};
  app.require_subcommand(1);

  std::string config, out, kind, example, gamma;
  double phi_l = 1, beta = 1, tau = 1;
  std::vector<double> taus;
  int count = 3;
  long points = 1'000'000;

  auto* check = app.add_subcommand("check", "print the condition report of a config as JSON");
  check->add_option("config", config, "config file")->required();

  auto* solve = app.add_subcommand("solve", "build the profile and phase-space densities");
  solve->add_option("config", config, "config file")->required();
  solve->add_option("--out", out, "output directory")->required();

  auto* family = app.add_subcommand("family", "emit members of a nonuniqueness family");
  family->add_option("config", config, "config file (optional for boltzmann-match and train-box)");
  family->add_option("--kind", kind, "perturb | inject-b | inject-c | train-box | boltzmann-match")
      ->required()
      ->check(CLI::IsMember({"perturb", "inject-b", "inject-c", "train-box", "boltzmann-match"}));
  family->add_option("--out", out, "output directory (families.json); stdout when omitted");
  family->add_option("--tau", taus, "perturbation or box parameter(s)");
  family->add_option("--beta", beta, "train amplitude (train-box)");
  family->add_option("--gamma", gamma, "target period, a number or <factor>gamma_star (or <factor>γ⋆)");
  family->add_option("--count", count, "members for boltzmann-match");

  auto* ex = app.add_subcommand("example", "run a built-in worked example");
  ex->add_option("name", example, "s2.5 | s3.3 | train")->required()->check(CLI::IsMember({"s2.5", "s3.3", "train"}));
  ex->add_option("--phi-l", phi_l, "shock amplitude (s3.3)");
  ex->add_option("--beta", beta, "train amplitude");
  ex->add_option("--tau", tau, "train box parameter");
  ex->add_option("--out", out, "output directory")->required();

  auto* orc = app.add_subcommand("oracle", "compare densities with brute-force quadrature");
  orc->add_option("config", config, "config file")->required();
  orc->add_option("--points", points, "midpoint nodes per density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*check) {
      auto c = load_config(config);
      auto pot = make_potential(c);
      bool exists = false;
      std::cout << check_report(pot, c, c.profile.conditions, exists).dump(2) << "\n";
      return exists ? kOk : kCondition;
    }
    if (*solve) {
      auto c = load_config(config);
      auto pot = make_potential(c);
      bool exists = false;
      json rep = check_report(pot, c, c.profile.conditions, exists);
      if (!exists) {
        std::cout << rep.dump(2) << "\n";
        return kCondition;
      }
      ProfileSettings s = c.profile;
      s.check_conditions = false;
      auto prof = build_profile(pot, s);
      rep["config"] = potential_to_config(pot);
      emit_wave(prepare_dir(out), prof, c.phase, rep);
      return kOk;
    }
    if (*family) {
      std::vector<FamilyMember> members;
      std::optional<Config> c;
      if (!config.empty()) c = load_config(config);
      const ConditionSettings cs = c ? c->profile.conditions : ConditionSettings{};
      if (kind == "boltzmann-match") {
        PlasmaParams p = c ? c->params : boltzmann_defaults();
        if (!p.boltzmann) throw InputError("boltzmann-match needs params.boltzmann");
        double g = gamma.empty() ? boltzmann_gamma_star(p) : parse_gamma(gamma, p);
        members = boltzmann_train_match(p, g, count, cs);
      } else if (kind == "train-box") {
        PlasmaParams p = c ? c->params : PlasmaParams{};
        if (taus.empty()) taus = {1.0};
        for (double t : taus) {
          auto m = train_box_family(p, beta, t, cs);
          if (!gamma.empty()) m = rescale_to_period(m, parse_gamma(gamma, p));
          members.push_back(m);
        }
      } else {
        if (!c) throw InputError(kind + " needs a config describing the base solitary wave");
        auto base = make_potential(*c);
        if (kind == "perturb") {
          if (taus.empty()) taus = {0.25};
          for (double t : taus) members.push_back(solitary_perturb(base, t, cs));
        } else if (kind == "inject-b") {
          members.push_back(solitary_inject_case_b(base, cs));
        } else {
          members.push_back(solitary_inject_case_c(base, cs));
        }
      }
      json arr = json::array();
      for (const auto& m : members) arr.push_back(to_json(m));
      if (out.empty()) {
        std::cout << arr.dump(2) << "\n";
      } else {
        write_json(prepare_dir(out) / "families.json", arr);
      }
      return kOk;
    }
    if (*ex) {
      auto dir = prepare_dir(out);
      json rep;
      if (example == "s2.5") {
        auto e = example_solitary();
        rep = {{"example", "s2.5"},
               {"beta0", e.beta0},
               {"beta1", e.beta1},
               {"rho_inf_at_0", e.rho_at_0},
               {"rho_inf_at_0.01", e.rho_at_hundredth},
               {"rho_inf_at_1", e.rho_at_1},
               {"report", to_json(e.report)},
               {"uniqueness", to_json(e.uniqueness)}};
        ProfileSettings s;
        s.check_conditions = false;
        emit_wave(dir, build_solitary(e.potential, s), {}, rep);
        return e.report.exists() ? kOk : kCondition;
      }
      if (example == "s3.3") {
        auto e = example_shock(phi_l);
        rep = {{"example", "s3.3"},
               {"phi_l", phi_l},
               {"masses", {e.masses[0], e.masses[1], e.masses[2], e.masses[3]}},
               {"alpha_degenerate", e.alpha.degenerate},
               {"matching", e.matching},
               {"max_symmetry_defect", e.max_symmetry_defect},
               {"report", to_json(e.report)}};
        ProfileSettings s;
        s.check_conditions = false;
        emit_wave(dir, build_shock(e.potential, s), {}, rep);
        return e.report.exists() ? kOk : kCondition;
      }
      auto e = example_train(beta, tau);
      rep = {{"example", "train"},
             {"beta", beta},
             {"tau", tau},
             {"period", e.profile.period},
             {"period_functional", e.period_functional},
             {"member", to_json(e.member)}};
      emit_wave(dir, e.profile, {}, rep);
      return kOk;
    }
    if (*orc) return run_oracle(load_config(config), points);
  } catch (const ConditionFailure& e) {
    std::cout << json{{"report", to_json(e.report())}}.dump(2) << "\n";
    std::cerr << "vpwave: " << e.what() << "\n";
    return kCondition;
  } catch (const InputError& e) {
    std::cerr << "vpwave: " << e.what() << "\n";
    return kInput;
  } catch (const NumericalError& e) {
    std::cerr << "vpwave: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "vpwave: " << e.what() << "\n";
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "vpwave: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "vpwave: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
