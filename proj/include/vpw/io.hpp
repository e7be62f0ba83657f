#pragma once

// Config parsing (JSON, "schema": 1), report serialization and atomic writes.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpw/examples.hpp"
#include "vpw/families.hpp"
#include "vpw/profile.hpp"
#include "vpw/reconstruction.hpp"

namespace vpw {

// bad user input: malformed JSON, missing keys, invalid values
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  WaveKind kind = WaveKind::solitary;
  PlasmaParams params;
  double amplitude = 0;  // beta, or Phi_l for shocks
  Marginal g_plus, g_minus;  // shocks: left ions and right electrons
  std::optional<Marginal> trapped;
  std::optional<ShockEndStates> ends;  // shocks; completed from the two given states if partial
  QuadratureSettings quadrature;
  ProfileSettings profile;
  PhaseSettings phase;
  nlohmann::json family = nlohmann::json::object();  // family-specific options, passed through
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);
SagdeevPotential make_potential(const Config& c);

Marginal marginal_from_json(const nlohmann::json& j);
nlohmann::json marginal_to_json(const Marginal& g);
nlohmann::json params_to_json(const PlasmaParams& p);
// config that rebuilds the potential; null for potentials not built from marginals
nlohmann::json potential_to_config(const SagdeevPotential& pot);

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const UniquenessVerdict& u);
nlohmann::json to_json(const Residuals& r);
nlohmann::json to_json(const FamilyMember& m);
nlohmann::json to_json(const std::vector<SliceSummary>& s);

std::string read_file(const std::string& path);
// temp file in the same directory, then rename
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace vpw
