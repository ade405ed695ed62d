#include "echo2d/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "echo2d/error.hpp"
#include "echo2d/oracle.hpp"
#include "echo2d/units.hpp"

namespace echo2d {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void write_complex(const fs::path& dir, const std::string& stem, const Eigen::MatrixXcd& m) {
  write_matrix_csv((dir / (stem + "_re.csv")).string(), m.real());
  write_matrix_csv((dir / (stem + "_im.csv")).string(), m.imag());
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.begin(), v.end()); }

}  // namespace

std::string snapshot_dir_name(double t2_fs) { return "t2_" + shortest(t2_fs); }

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  std::string line;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) line += ',';
      line += shortest(m(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << shortest(v(i)) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) throw ValidationError("malformed number in '" + path + "'");
      row.push_back(v);
      p = res.ptr;
      if (p < end && *p == ',') ++p;
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw ValidationError("ragged rows in '" + path + "'");
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Snapshot compute_snapshot(const RunConfig& config, const ResponseEngine& engine, double t2_fs) {
  const Eigen::VectorXd t1 = uniform_axis(config.grid.n1, config.grid.dt);
  const Eigen::VectorXd t3 = uniform_axis(config.grid.n3, config.grid.dt);
  Snapshot snap;
  const ResponseGrid* se = nullptr;
  const ResponseGrid* gsb = nullptr;
  const ResponseGrid* esa = nullptr;
  snap.pathways.reserve(config.pathways.size());
  for (Pathway p : config.pathways) snap.pathways.push_back(engine.grid(p, t1, t2_fs, t3));
  for (const auto& g : snap.pathways) {
    if (g.pathway == Pathway::SE) se = &g;
    if (g.pathway == Pathway::GSB) gsb = &g;
    if (g.pathway == Pathway::ESA) esa = &g;
  }
  snap.total = assemble_spe(se, gsb, esa, config.flags.prefactor);
  snap.spectrum = transform(snap.total, config.grid.spectrum);
  return snap;
}

RunResult run(const RunConfig& config, std::ostream* log) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.warnings = config.bath.warnings();
  for (const auto& w : result.warnings)
    if (log) *log << "warning: " << w << '\n';

  const fs::path root(config.output_dir);
  std::vector<fs::path> created;
  const bool root_existed = fs::exists(root);
  try {
    fs::create_directories(root);
    const StationaryBasis basis(config.model, config.basis_options());
    const Bath bath(config.bath);
    const ResponseEngine engine(basis, bath, config.response_options());
    {
      auto out = open_out((root / "config.resolved.json").string());
      out << to_json(config) << '\n';
    }
    for (double t2 : config.grid.t2) {
      const fs::path dir = root / snapshot_dir_name(t2);
      if (fs::exists(dir)) fs::remove_all(dir);
      fs::create_directories(dir);
      created.push_back(dir);
      const auto t0 = std::chrono::steady_clock::now();
      const Snapshot snap = compute_snapshot(config, engine, t2);
      for (const auto& g : snap.pathways) write_complex(dir, std::string("R_") + to_string(g.pathway), g.values);
      write_complex(dir, "R_total", snap.total.values);
      write_complex(dir, "spectrum", snap.spectrum.values);
      write_vector_csv((dir / "omega1.csv").string(), snap.spectrum.omega1);
      write_vector_csv((dir / "omega3.csv").string(), snap.spectrum.omega3);

      json meta;
      meta["t2"] = {{"value", t2}, {"unit", "fs"}};
      meta["time_axes"] = {{"dt", config.grid.dt}, {"n1", config.grid.n1}, {"n3", config.grid.n3}, {"unit", "fs"},
                           {"layout", "R_* rows follow t1, columns follow t3"}};
      meta["frequency_axes"] = {{"n1", snap.spectrum.omega1.size()},
                                {"n3", snap.spectrum.omega3.size()},
                                {"origin1", config.grid.spectrum.origin1},
                                {"origin3", config.grid.spectrum.origin3},
                                {"intrinsic_bin1", snap.spectrum.intrinsic_bin1},
                                {"intrinsic_bin3", snap.spectrum.intrinsic_bin3},
                                {"unit", "cm^-1"},
                                {"layout", "spectrum_* rows follow omega1, columns follow omega3"}};
      meta["spectrum"] = {{"window", to_string(config.grid.spectrum.window)},
                          {"zero_pad", config.grid.spectrum.zero_pad},
                          {"unit", "fs^2 (response is dimensionless)"},
                          {"convention", "sum over t1,t3 >= 0 of R e^{-i w1 t1} e^{+i w3 t3}, trapezoidal"}};
      json paths = json::array();
      for (Pathway p : config.pathways) paths.push_back(to_string(p));
      meta["pathways"] = paths;
      meta["K"] = config.flags.prefactor;
      meta["stationary_energies"] = {{"values", vector_json(basis.energies())}, {"unit", "cm^-1"}};
      meta["ground_energy"] = {{"value", config.model.ground_energy}, {"unit", "cm^-1"}};
      meta["bath"] = {{"kind", to_string(config.bath.kind)},
                      {"lambda", config.bath.reorganization},
                      {"omega_c", config.bath.cutoff},
                      {"temperature", config.bath.temperature},
                      {"units", {{"lambda", "cm^-1"}, {"omega_c", "cm^-1"}, {"temperature", "K"}}}};
      meta["defaults_applied"] = config.defaults_applied;
      meta["warnings"] = result.warnings;
      meta["config"] = json::parse(to_json(config));
      meta["elapsed_seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      {
        auto out = open_out((dir / "meta.json").string());
        out << meta.dump(2) << '\n';
      }
      result.snapshot_dirs.push_back(dir.string());
      if (log) *log << "t2 = " << t2 << " fs -> " << dir.string() << '\n';
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& d : created) fs::remove_all(d, ec);
    fs::remove(root / "config.resolved.json", ec);
    if (!root_existed) fs::remove_all(root, ec);
    throw;
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double relaxation_slope(const RelaxationTerms& terms, int state, double t_begin, double t_end) {
  return (terms.L(state, state, t_end).real() - terms.L(state, state, t_begin).real()) / (t_end - t_begin);
}

double relative_rms(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return std::sqrt((a - b).squaredNorm() / b.squaredNorm());
}

std::vector<CheckResult> verify(const RunConfig& config, const VerifyOptions& options, std::ostream* log) {
  config.validate();
  std::vector<CheckResult> out;
  auto report = [&](CheckResult r) {
    if (log)
      *log << (r.passed ? "PASS " : "FAIL ") << r.name << ": measured " << r.measured << ", tolerance "
           << r.tolerance << (r.detail.empty() ? "" : " (" + r.detail + ")") << '\n';
    out.push_back(std::move(r));
  };

  {
    const auto conv = check_kernel_convergence(config.bath, {0.0, 10.0, 100.0, 1000.0}, 1e-6);
    report({"bath quadrature convergence", conv.converged, conv.max_relative_change, 1e-6,
            "kernels vs twice the nodes and twice the frequency range"});
  }

  const StationaryBasis basis(config.model, config.basis_options());
  const Bath bath(config.bath);
  if (basis.n_singles() == 2) {
    const RelaxationTerms terms(basis, bath);
    const double ratio = relaxation_slope(terms, 0, 1000.0, 2000.0) / relaxation_slope(terms, 1, 1000.0, 2000.0);
    const double expected = std::exp(bath.beta() * (basis.energy(0) - basis.energy(1)));
    const double err = std::abs(ratio / expected - 1.0);
    report({"detailed balance", err <= 0.05, err, 0.05,
            "slope ratio " + shortest(ratio) + " vs " + shortest(expected)});
  } else {
    report({"detailed balance", true, 0.0, 0.05, "skipped: needs exactly two one-exciton states"});
  }

  const DiscretizedBath weak = discretize(config.bath, options.oracle_modes, options.oracle_fock_levels);
  DiscretizedBath scaled = weak;
  for (auto& m : scaled.modes) m.coupling *= std::sqrt(options.coupling_scale);
  DiscretizedBath silent = weak;
  for (auto& m : silent.modes) m.coupling = 0.0;

  Eigen::VectorXd axis = uniform_axis(11, 10.0);
  try {
    const ExactOracle free_oracle(config.model, silent);
    const Bath free_bath(silent.as_spec());
    const ResponseEngine free_engine(basis, free_bath, config.response_options());
    double worst = 0.0;
    for (double t2 : {0.0, 50.0}) {
      const Eigen::MatrixXcd exact = free_oracle.response(Pathway::SE, axis, t2, axis);
      const Eigen::MatrixXcd approx = free_engine.grid(Pathway::SE, axis, t2, axis).values;
      worst = std::max(worst, (exact - approx).cwiseAbs().maxCoeff() / exact.cwiseAbs().maxCoeff());
    }
    report({"oracle identity at zero bath coupling", worst <= 1e-10, worst, 1e-10, "max relative deviation, SE"});

    const ExactOracle oracle(config.model, scaled);
    const Bath scaled_bath(scaled.as_spec());
    const ResponseEngine engine(basis, scaled_bath, config.response_options());
    // One RMS over the whole (t1, t2, t3) sample set.
    double num = 0.0, den = 0.0;
    std::string per_t2;
    for (double t2 : {0.0, 50.0}) {
      const Eigen::MatrixXcd exact = oracle.response(Pathway::SE, axis, t2, axis);
      const Eigen::MatrixXcd approx = engine.grid(Pathway::SE, axis, t2, axis).values;
      num += (approx - exact).squaredNorm();
      den += exact.squaredNorm();
      per_t2 += " t2=" + shortest(t2) + ":" + shortest(relative_rms(approx, exact));
    }
    const double rms = std::sqrt(num / den);
    report({"oracle agreement at weak coupling", rms <= options.oracle_tolerance, rms, options.oracle_tolerance,
            "relative RMS of SE over t1,t3 in [0,100] fs, t2 in {0,50} fs;" + per_t2});
  } catch (const ValidationError& e) {
    report({"oracle comparisons", false, 0.0, 0.0, e.what()});
  }
  return out;
}

Spectrum2D read_spectrum(const std::string& snapshot_dir) {
  const fs::path dir(snapshot_dir);
  Spectrum2D s;
  const Eigen::MatrixXd re = read_matrix_csv((dir / "spectrum_re.csv").string());
  const Eigen::MatrixXd im = read_matrix_csv((dir / "spectrum_im.csv").string());
  const Eigen::MatrixXd w1 = read_matrix_csv((dir / "omega1.csv").string());
  const Eigen::MatrixXd w3 = read_matrix_csv((dir / "omega3.csv").string());
  if (re.rows() != w1.rows() || re.cols() != w3.rows() || im.rows() != re.rows() || im.cols() != re.cols())
    throw ValidationError("spectrum files in '" + snapshot_dir + "' have inconsistent shapes");
  s.values.resize(re.rows(), re.cols());
  s.values.real() = re;
  s.values.imag() = im;
  s.omega1 = w1.col(0);
  s.omega3 = w3.col(0);
  std::ifstream meta_in((dir / "meta.json").string());
  if (meta_in) {
    const json meta = json::parse(meta_in, nullptr, false);
    if (!meta.is_discarded() && meta.contains("t2")) s.t2 = meta["t2"]["value"].get<double>();
  }
  return s;
}

}  // namespace echo2d
