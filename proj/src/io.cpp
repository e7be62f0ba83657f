#include "vpw/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vpw {

using nlohmann::json;

namespace {

std::string where(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double num(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key)) throw InputError(ctx + ": missing \"" + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw InputError(ctx + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

double num_or(const json& j, const char* key, double dflt, const std::string& ctx) {
  return j.contains(key) ? num(j, key, ctx) : dflt;
}

int int_or(const json& j, const char* key, int dflt, const std::string& ctx) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(ctx + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

PlasmaParams params_from_json(const json& j) {
  if (!j.is_object()) throw InputError("params: expected an object");
  PlasmaParams p;
  p.e_plus = num_or(j, "e_plus", p.e_plus, "params");
  p.e_minus = num_or(j, "e_minus", p.e_minus, "params");
  p.q_plus = num_or(j, "q_plus", p.q_plus, "params");
  p.q_minus = num_or(j, "q_minus", p.q_minus, "params");
  p.alpha = num_or(j, "alpha", p.alpha, "params");
  p.n = int_or(j, "n", p.n, "params");
  if (j.contains("boltzmann")) {
    const auto& b = j.at("boltzmann");
    p.boltzmann = BoltzmannConstants{num_or(b, "rho", 1.0, "params.boltzmann"), num_or(b, "kappa", 1.0, "params.boltzmann")};
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("params: ") + e.what());
  }
  return p;
}

}  // namespace

Marginal marginal_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw InputError("marginal: expected an object with a \"type\"");
  const auto type = j.at("type").get<std::string>();
  try {
    if (type == "zero") return Marginal{};
    if (type == "box") return Marginal::box(num(j, "lo", "box"), num(j, "hi", "box"), num(j, "height", "box"));
    if (type == "piecewise") {
      if (!j.contains("pieces") || !j.at("pieces").is_array()) throw InputError("piecewise: \"pieces\" must be an array");
      std::vector<Piece> ps;
      for (const auto& e : j.at("pieces")) {
        if (!e.is_array() || e.size() != 3) throw InputError("piecewise: each piece is [lo, hi, height]");
        ps.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
      }
      return Marginal::piecewise(std::move(ps));
    }
    if (type == "maxwellian")
      return Marginal::maxwellian(num(j, "mass", "maxwellian"), num(j, "center", "maxwellian"),
                                  num(j, "kappa", "maxwellian"), num(j, "q", "maxwellian"));
    if (type == "tabulated") {
      auto k = j.at("knots").get<std::vector<double>>();
      auto v = j.at("values").get<std::vector<double>>();
      return Marginal::tabulated(std::move(k), std::move(v));
    }
  } catch (const json::exception& e) {
    throw InputError("marginal " + type + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError("marginal " + type + ": " + e.what());
  }
  throw InputError("marginal: unknown type \"" + type + "\"");
}

json marginal_to_json(const Marginal& g) {
  if (g.empty()) return {{"type", "zero"}};
  switch (g.kind()) {
    case Marginal::Kind::piecewise: {
      json ps = json::array();
      for (const auto& p : g.pieces()) ps.push_back({p.lo, p.hi, p.height});
      return {{"type", "piecewise"}, {"pieces", ps}};
    }
    case Marginal::Kind::maxwellian:
      return {{"type", "maxwellian"},
              {"mass", g.maxwell_mass()},
              {"center", g.center()},
              {"kappa", g.kappa()},
              {"q", g.temperature()}};
    case Marginal::Kind::tabulated:
      return {{"type", "tabulated"}, {"knots", g.knots()}, {"values", g.values()}};
  }
  return {{"type", "zero"}};
}

json params_to_json(const PlasmaParams& p) {
  json j = {{"e_plus", p.e_plus}, {"e_minus", p.e_minus}, {"q_plus", p.q_plus},
            {"q_minus", p.q_minus}, {"alpha", p.alpha},     {"n", p.n}};
  if (p.boltzmann) j["boltzmann"] = {{"rho", p.boltzmann->rho}, {"kappa", p.boltzmann->kappa}};
  return j;
}

Config parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at " + where(text, e.byte));
  }
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  if (!j.contains("schema") || !j.at("schema").is_number_integer() || j.at("schema").get<int>() != 1)
    throw InputError("config: \"schema\": 1 is required");
  Config c;
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError("config: missing \"kind\"");
  try {
    c.kind = wave_kind_from_string(j.at("kind").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  c.params = params_from_json(j.value("params", json::object()));
  c.amplitude = num(j, "amplitude", "config");
  if (!(c.amplitude > 0)) throw InputError("config: \"amplitude\" must be positive");

  if (c.kind == WaveKind::shock) {
    if (!j.contains("end_states")) throw InputError("config: shocks need \"end_states\"");
    const auto& e = j.at("end_states");
    if (!e.contains("gl_plus") || !e.contains("gr_minus"))
      throw InputError("end_states: \"gl_plus\" and \"gr_minus\" are required");
    ShockEndStates s;
    s.gl_plus = marginal_from_json(e.at("gl_plus"));
    s.gr_minus = marginal_from_json(e.at("gr_minus"));
    try {
      s.gr_plus = e.contains("gr_plus")
                      ? marginal_from_json(e.at("gr_plus"))
                      : shock_endstate_map(s.gl_plus, c.params, c.amplitude, Direction::l_to_r, Species::plus);
      s.gl_minus = e.contains("gl_minus")
                       ? marginal_from_json(e.at("gl_minus"))
                       : shock_endstate_map(s.gr_minus, c.params, c.amplitude, Direction::r_to_l, Species::minus);
    } catch (const std::domain_error& err) {
      throw InputError(std::string("end_states: ") + err.what());
    }
    c.g_plus = s.gl_plus;
    c.g_minus = s.gr_minus;
    c.ends = s;
  } else {
    if (!j.contains("g_plus") || !j.contains("g_minus")) throw InputError("config: \"g_plus\" and \"g_minus\" are required");
    c.g_plus = marginal_from_json(j.at("g_plus"));
    c.g_minus = marginal_from_json(j.at("g_minus"));
    if (j.contains("trapped") && !j.at("trapped").is_null()) c.trapped = marginal_from_json(j.at("trapped"));
  }

  const json s = j.value("settings", json::object());
  c.quadrature.rel_tol = num_or(s, "rel_tol", c.quadrature.rel_tol, "settings");
  c.quadrature.abs_tol = num_or(s, "abs_tol", c.quadrature.abs_tol, "settings");
  c.quadrature.max_subdivisions = int_or(s, "max_subdivisions", c.quadrature.max_subdivisions, "settings");
  c.profile.points_per_branch = int_or(s, "points_per_branch", c.profile.points_per_branch, "settings");
  c.profile.table_refinement = int_or(s, "table_refinement", c.profile.table_refinement, "settings");
  c.profile.eps_tail = num_or(s, "eps_tail", c.profile.eps_tail, "settings");
  c.phase.x_slices = int_or(s, "x_slices", c.phase.x_slices, "settings");
  c.phase.xi_points = int_or(s, "xi_points", c.phase.xi_points, "settings");
  try {
    c.quadrature.validate();
    c.profile.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("settings: ") + e.what());
  }
  if (c.phase.x_slices < 2 || c.phase.xi_points < 2) throw InputError("settings: phase grid needs at least 2 points");
  if (j.contains("family")) c.family = j.at("family");
  return c;
}

Config load_config(const std::string& path) { return parse_config(read_file(path)); }

SagdeevPotential make_potential(const Config& c) {
  try {
    if (c.kind == WaveKind::shock)
      return SagdeevPotential::shock(c.params, c.g_plus, c.g_minus, c.amplitude, c.quadrature);
    std::optional<TrappedMarginal> G;
    if (c.trapped && !c.trapped->empty()) G = TrappedMarginal(*c.trapped, c.params.alpha);
    if (c.kind == WaveKind::train)
      return SagdeevPotential::train(c.params, c.g_plus, c.g_minus, G, c.amplitude, c.quadrature);
    return SagdeevPotential::solitary(c.params, c.g_plus, c.g_minus, G, c.amplitude, c.quadrature);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

json potential_to_config(const SagdeevPotential& pot) {
  if (!pot.has_marginals()) return nullptr;
  json j = {{"schema", 1},
            {"kind", to_string(pot.kind())},
            {"params", params_to_json(pot.params())},
            {"amplitude", pot.amplitude()}};
  if (pot.kind() == WaveKind::shock) {
    j["end_states"] = {{"gl_plus", marginal_to_json(pot.g_plus())}, {"gr_minus", marginal_to_json(pot.g_minus())}};
  } else {
    j["g_plus"] = marginal_to_json(pot.g_plus());
    j["g_minus"] = marginal_to_json(pot.g_minus());
    if (pot.trapped()) j["trapped"] = marginal_to_json(pot.trapped()->marginal());
  }
  return j;
}

namespace {
json tail_json(const TailReport& t) {
  return {{"verdict", to_string(t.verdict)},
          {"value", t.value},
          {"slope", t.slope},
          {"exponent", std::isfinite(t.exponent) ? json(t.exponent) : json(nullptr)},
          {"note", t.note}};
}
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
}  // namespace

json to_json(const ConditionReport& r) {
  json clauses = json::array();
  for (const auto& c : r.clauses) clauses.push_back({{"label", c.label}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"kind", to_string(r.kind)},
          {"amplitude", r.amplitude},
          {"exists", r.exists()},
          {"failed", r.failed_clauses()},
          {"quasi_neutral", r.quasi_neutral},
          {"symmetry_ok", r.symmetry_ok},
          {"symmetry_delta", finite_or_null(r.symmetry_delta)},
          {"positivity_ok", r.positivity_ok},
          {"positivity_indeterminate", r.positivity_indeterminate},
          {"min_location", r.min_location},
          {"min_value", r.min_value},
          {"endpoint_zero_ok", r.endpoint_zero_ok},
          {"endpoint_value", r.endpoint_value},
          {"tail_at_zero", tail_json(r.tail_at_zero)},
          {"tail_at_amplitude", tail_json(r.tail_at_amplitude)},
          {"clauses", clauses}};
}

json to_json(const UniquenessVerdict& u) {
  return {{"classification", to_string(u.classification)},
          {"beta_star", finite_or_null(u.beta_star)},
          {"beta_sharp", finite_or_null(u.beta_sharp)},
          {"trapped_mass", u.trapped_mass},
          {"slope_at_sharp", finite_or_null(u.slope_at_sharp)},
          {"details", u.details}};
}

json to_json(const Residuals& r) {
  return {{"poisson", r.poisson},
          {"poisson_pointwise", r.poisson_pointwise},
          {"energy", r.energy},
          {"neutrality", r.neutrality},
          {"characteristics_plus", finite_or_null(r.characteristics_plus)},
          {"characteristics_minus", finite_or_null(r.characteristics_minus)},
          {"density_plus", finite_or_null(r.density_plus)},
          {"density_minus", finite_or_null(r.density_minus)}};
}

json to_json(const FamilyMember& m) {
  return {{"family", m.family},
          {"tau", m.tau},
          {"beta", m.beta},
          {"lambda", m.lambda},
          {"scale", m.scale},
          {"period", m.period},
          {"exists", m.report.exists()},
          {"report", to_json(m.report)},
          {"config", potential_to_config(m.potential)}};
}

json to_json(const std::vector<SliceSummary>& s) {
  json a = json::array();
  for (const auto& x : s)
    a.push_back({{"X", x.X}, {"Phi", x.Phi}, {"mass", x.mass}, {"l1_to_end_state", x.l1_to_end_state}});
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace vpw
