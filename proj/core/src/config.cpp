#include "echo2d/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "echo2d/error.hpp"

namespace echo2d {

using nlohmann::json;

namespace {

class Section {
 public:
  Section(const json& node, std::string path, std::vector<std::string>& defaults)
      : node_(node), path_(std::move(path)), defaults_(defaults) {
    if (!node_.is_object()) throw ValidationError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }
  std::string path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  const json& at(const std::string& key) const { return node_.at(key); }

  double number(const std::string& key) const {
    if (!has(key)) throw ValidationError(path(key) + ": required");
    const json& v = at(key);
    if (!v.is_number()) throw ValidationError(path(key) + ": expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) const {
    if (!has(key)) {
      defaults_.push_back(path(key));
      return fallback;
    }
    return number(key);
  }
  int integer(const std::string& key, int fallback) const {
    if (!has(key)) {
      defaults_.push_back(path(key));
      return fallback;
    }
    const json& v = at(key);
    if (!v.is_number_integer()) throw ValidationError(path(key) + ": expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) {
      defaults_.push_back(path(key));
      return fallback;
    }
    const json& v = at(key);
    if (!v.is_boolean()) throw ValidationError(path(key) + ": expected true or false");
    return v.get<bool>();
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) {
      defaults_.push_back(path(key));
      return fallback;
    }
    const json& v = at(key);
    if (!v.is_string()) throw ValidationError(path(key) + ": expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(const std::string& key) const {
    if (!has(key)) throw ValidationError(path(key) + ": required");
    const json& v = at(key);
    if (!v.is_array()) throw ValidationError(path(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ValidationError(path(key) + "[" + std::to_string(i) + "]: expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }
  Section child(const std::string& key) const {
    static const json empty = json::object();
    if (!has(key)) {
      defaults_.push_back(path(key));
      return Section(empty, path(key), defaults_);
    }
    return Section(at(key), path(key), defaults_);
  }
  void reject_unknown(const std::set<std::string>& known) const {
    for (const auto& item : node_.items())
      if (!known.count(item.key())) throw ValidationError(path(item.key()) + ": unknown key");
  }

 private:
  const json& node_;
  std::string path_;
  std::vector<std::string>& defaults_;
};

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void parse_model(const Section& s, RunConfig& cfg) {
  s.reject_unknown({"ground_energy", "site_energies", "couplings", "dipoles"});
  auto& m = cfg.model;
  m.ground_energy = s.number("ground_energy", 0.0);
  m.site_energies = to_vector(s.numbers("site_energies"));
  const int n = m.n_sites();
  if (n < 1) throw ValidationError("model.site_energies: at least one site is required");
  m.couplings = Eigen::MatrixXd::Zero(n, n);
  if (s.has("couplings")) {
    const json& rows = s.at("couplings");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw ValidationError("model.couplings: expected " + std::to_string(n) + " rows");
    for (int i = 0; i < n; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw ValidationError("model.couplings[" + std::to_string(i) + "]: expected " + std::to_string(n) + " values");
      for (int j = 0; j < n; ++j) {
        if (!row[static_cast<std::size_t>(j)].is_number())
          throw ValidationError("model.couplings[" + std::to_string(i) + "][" + std::to_string(j) +
                                "]: expected a number");
        m.couplings(i, j) = row[static_cast<std::size_t>(j)].get<double>();
      }
    }
  } else {
    cfg.defaults_applied.push_back("model.couplings");
  }

  const Section d = s.child("dipoles");
  d.reject_unknown({"mode", "values"});
  const std::string mode = d.text("mode", "site");
  if (mode == "site") {
    cfg.dipole_mode = DipoleMode::PerSite;
  } else if (mode == "stationary") {
    cfg.dipole_mode = DipoleMode::PerStationaryState;
  } else {
    throw ValidationError("model.dipoles.mode: expected 'site' or 'stationary'");
  }
  if (d.has("values")) {
    cfg.dipole_values = to_vector(d.numbers("values"));
  } else {
    cfg.defaults_applied.push_back("model.dipoles.values");
    cfg.dipole_values = Eigen::VectorXd::Ones(n);
  }
  if (cfg.dipole_values.size() != n)
    throw ValidationError("model.dipoles.values: expected " + std::to_string(n) + " values");
  m.site_dipoles = Eigen::VectorXd::Zero(n);
  m.validate();
  m.site_dipoles = cfg.dipole_mode == DipoleMode::PerSite ? cfg.dipole_values
                                                           : site_dipoles_from_stationary(m, cfg.dipole_values);
}

void parse_bath(const Section& s, RunConfig& cfg, const std::string& base_dir) {
  s.reject_unknown({"kind", "lambda", "lambda_over_omega_c", "omega_c", "temperature", "quadrature", "table", "modes"});
  auto& b = cfg.bath;
  b.kind = spectral_kind_from_string(s.text("kind", "ohmic"));
  b.temperature = s.number("temperature", 77.0);
  if (b.kind == SpectralKind::Ohmic || b.kind == SpectralKind::Debye) {
    b.cutoff = s.number("omega_c");
    if (s.has("lambda") && s.has("lambda_over_omega_c"))
      throw ValidationError("bath: give either lambda or lambda_over_omega_c, not both");
    b.reorganization = s.has("lambda") ? s.number("lambda") : s.number("lambda_over_omega_c") * b.cutoff;
  }
  if (b.kind == SpectralKind::Tabulated) {
    if (!s.has("table")) throw ValidationError("bath.table: required for a tabulated density");
    const json& t = s.at("table");
    if (t.is_string()) {
      std::filesystem::path p(t.get<std::string>());
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      b.table = read_spectral_table(p.string());
    } else if (t.is_array()) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        const json& row = t[i];
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
          throw ValidationError("bath.table[" + std::to_string(i) + "]: expected [omega, density]");
        b.table.push_back({row[0].get<double>(), row[1].get<double>()});
      }
    } else {
      throw ValidationError("bath.table: expected a file path or an array of [omega, density]");
    }
  }
  if (b.kind == SpectralKind::Discrete) {
    if (!s.has("modes") || !s.at("modes").is_array()) throw ValidationError("bath.modes: required array");
    const json& modes = s.at("modes");
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const json& row = modes[i];
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
        throw ValidationError("bath.modes[" + std::to_string(i) + "]: expected [omega, coupling]");
      b.modes.push_back({row[0].get<double>(), row[1].get<double>()});
    }
  }
  if (b.kind != SpectralKind::Discrete) {
    const Section q = s.child("quadrature");
    q.reject_unknown({"omega_max", "n_points"});
    b.quadrature.omega_max = q.number("omega_max", 0.0);
    b.quadrature.n_points = q.integer("n_points", 2000);
    b.quadrature.omega_max = b.resolved_omega_max();
  }
  b.validate();
}

void parse_grid(const Section& s, RunConfig& cfg) {
  s.reject_unknown({"dt", "n1", "n3", "t2", "window", "window_tau", "zero_pad", "origin1", "origin3"});
  auto& g = cfg.grid;
  g.dt = s.number("dt", 4.0);
  g.n1 = s.integer("n1", 256);
  g.n3 = s.integer("n3", 256);
  g.t2 = s.numbers("t2");
  g.spectrum.window = window_from_string(s.text("window", "cosine"));
  if (g.spectrum.window == Window::Exponential) g.spectrum.exponential_tau = s.number("window_tau");
  g.spectrum.zero_pad = s.integer("zero_pad", 4);
  // Frequency origins default to the mean one-exciton transition energy.
  double mean = 0.0;
  if (s.has("origin1") && s.has("origin3")) {
    g.spectrum.origin1 = s.number("origin1");
    g.spectrum.origin3 = s.number("origin3");
    return;
  }
  const Eigensystem singles = diagonalize_singles(cfg.model);
  mean = singles.energies.mean() - cfg.model.ground_energy;
  g.spectrum.origin1 = s.number("origin1", mean);
  g.spectrum.origin3 = s.number("origin3", mean);
}

void parse_flags(const Section& s, RunConfig& cfg) {
  s.reject_unknown({"relaxation_mode", "case2_decoherence", "doubles_relaxation", "prune", "K", "degeneracy_tol"});
  auto& f = cfg.flags;
  const std::string mode = s.text("relaxation_mode", "reduced");
  if (mode == "reduced") {
    f.relaxation = RelaxationMode::Reduced;
  } else if (mode == "full") {
    f.relaxation = RelaxationMode::Full;
  } else {
    throw ValidationError("flags.relaxation_mode: expected 'reduced' or 'full'");
  }
  f.case2_decoherence = s.boolean("case2_decoherence", false);
  f.doubles_relaxation = s.boolean("doubles_relaxation", true);
  f.prune = s.boolean("prune", true);
  f.prefactor = s.number("K", 1.0);
  f.degeneracy_tol = s.number("degeneracy_tol", 1e-6);
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  bath.validate();
  if (pathways.empty()) throw ValidationError("pathways: at least one pathway is required");
  for (Pathway p : pathways) {
    if (p == Pathway::Total) throw ValidationError("pathways: 'total' is always written; list SE, GSB or ESA");
    if (p == Pathway::ESA && model.n_sites() < 2) throw ValidationError("pathways: ESA requires at least two sites");
  }
  if (grid.t2.empty()) throw ValidationError("grid.t2: at least one population time is required");
  for (double t : grid.t2)
    if (!(t >= 0.0)) throw ValidationError("grid.t2: population times must be nonnegative");
  if (!(grid.dt > 0.0)) throw ValidationError("grid.dt: must be positive");
  if (grid.n1 < 2 || grid.n3 < 2) throw ValidationError("grid.n1/grid.n3: need at least two samples");
  grid.spectrum.validate();
  if (!(flags.degeneracy_tol > 0.0)) throw ValidationError("flags.degeneracy_tol: must be positive");
  if (output_dir.empty()) throw ValidationError("output_dir: must not be empty");
}

bool RunConfig::has(Pathway p) const {
  for (Pathway q : pathways)
    if (q == p) return true;
  return false;
}

BasisOptions RunConfig::basis_options() const {
  BasisOptions o;
  o.degeneracy_tol = flags.degeneracy_tol;
  o.doubles_couplings = flags.doubles_relaxation;
  return o;
}

ResponseOptions RunConfig::response_options() const {
  ResponseOptions o;
  o.relaxation = flags.relaxation;
  o.case2_decoherence = flags.case2_decoherence;
  o.prune = flags.prune;
  return o;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON: ") + e.what());
  }
  RunConfig cfg;
  Section top(root, "", cfg.defaults_applied);
  top.reject_unknown({"model", "bath", "grid", "pathways", "flags", "output_dir"});
  if (!top.has("model")) throw ValidationError("model: required");
  if (!top.has("bath")) throw ValidationError("bath: required");
  if (!top.has("grid")) throw ValidationError("grid: required");
  parse_model(top.child("model"), cfg);
  parse_bath(top.child("bath"), cfg, base_dir);
  parse_grid(top.child("grid"), cfg);
  if (top.has("pathways")) {
    const json& p = top.at("pathways");
    if (!p.is_array()) throw ValidationError("pathways: expected an array of names");
    cfg.pathways.clear();
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_string()) throw ValidationError("pathways[" + std::to_string(i) + "]: expected a name");
      cfg.pathways.push_back(pathway_from_string(p[i].get<std::string>()));
    }
  } else {
    cfg.defaults_applied.push_back("pathways");
  }
  parse_flags(top.child("flags"), cfg);
  cfg.output_dir = top.text("output_dir", cfg.output_dir);
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto parent = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), parent.empty() ? "." : parent.string());
}

std::string to_json(const RunConfig& c) {
  json root;
  auto& m = root["model"];
  m["ground_energy"] = c.model.ground_energy;
  m["site_energies"] = std::vector<double>(c.model.site_energies.begin(), c.model.site_energies.end());
  json rows = json::array();
  for (int i = 0; i < c.model.n_sites(); ++i) {
    json row = json::array();
    for (int j = 0; j < c.model.n_sites(); ++j) row.push_back(c.model.couplings(i, j));
    rows.push_back(row);
  }
  m["couplings"] = rows;
  m["dipoles"]["mode"] = c.dipole_mode == DipoleMode::PerSite ? "site" : "stationary";
  m["dipoles"]["values"] = std::vector<double>(c.dipole_values.begin(), c.dipole_values.end());

  auto& b = root["bath"];
  b["kind"] = to_string(c.bath.kind);
  b["temperature"] = c.bath.temperature;
  if (c.bath.kind == SpectralKind::Ohmic || c.bath.kind == SpectralKind::Debye) {
    b["lambda"] = c.bath.reorganization;
    b["omega_c"] = c.bath.cutoff;
  }
  if (c.bath.kind == SpectralKind::Tabulated) {
    json t = json::array();
    for (const auto& p : c.bath.table) t.push_back({p.omega, p.density});
    b["table"] = t;
  }
  if (c.bath.kind == SpectralKind::Discrete) {
    json t = json::array();
    for (const auto& p : c.bath.modes) t.push_back({p.omega, p.coupling});
    b["modes"] = t;
  } else {
    b["quadrature"]["omega_max"] = c.bath.quadrature.omega_max;
    b["quadrature"]["n_points"] = c.bath.quadrature.n_points;
  }

  auto& g = root["grid"];
  g["dt"] = c.grid.dt;
  g["n1"] = c.grid.n1;
  g["n3"] = c.grid.n3;
  g["t2"] = c.grid.t2;
  g["window"] = to_string(c.grid.spectrum.window);
  if (c.grid.spectrum.window == Window::Exponential) g["window_tau"] = c.grid.spectrum.exponential_tau;
  g["zero_pad"] = c.grid.spectrum.zero_pad;
  g["origin1"] = c.grid.spectrum.origin1;
  g["origin3"] = c.grid.spectrum.origin3;

  json p = json::array();
  for (Pathway q : c.pathways) p.push_back(to_string(q));
  root["pathways"] = p;

  auto& f = root["flags"];
  f["relaxation_mode"] = c.flags.relaxation == RelaxationMode::Full ? "full" : "reduced";
  f["case2_decoherence"] = c.flags.case2_decoherence;
  f["doubles_relaxation"] = c.flags.doubles_relaxation;
  f["prune"] = c.flags.prune;
  f["K"] = c.flags.prefactor;
  f["degeneracy_tol"] = c.flags.degeneracy_tol;
  root["output_dir"] = c.output_dir;
  return root.dump(2);
}

}  // namespace echo2d
