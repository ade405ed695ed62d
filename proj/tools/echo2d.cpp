#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "echo2d/config.hpp"
#include "echo2d/error.hpp"
#include "echo2d/pipeline.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

echo2d::RunConfig load(const std::string& path, const std::string& output_dir,
                       const std::vector<std::string>& pathways) {
  echo2d::RunConfig cfg = echo2d::load_config(path);
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  if (!pathways.empty()) {
    cfg.pathways.clear();
    for (const auto& p : pathways) cfg.pathways.push_back(echo2d::pathway_from_string(p));
  }
  cfg.validate();
  return cfg;
}

int print_peaks(const std::string& dir, int n) {
  namespace fs = std::filesystem;
  std::vector<fs::path> snapshots;
  if (fs::exists(fs::path(dir) / "spectrum_re.csv")) {
    snapshots.emplace_back(dir);
  } else {
    if (!fs::is_directory(dir)) throw echo2d::ValidationError("--output-dir: '" + dir + "' is not a directory");
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_directory() && fs::exists(e.path() / "spectrum_re.csv")) snapshots.push_back(e.path());
    std::sort(snapshots.begin(), snapshots.end());
  }
  if (snapshots.empty()) throw echo2d::ValidationError("--output-dir: no spectra found in '" + dir + "'");
  std::cout << "snapshot,omega1_cm,omega3_cm,re_height\n";
  for (const auto& s : snapshots) {
    const auto spectrum = echo2d::read_spectrum(s.string());
    for (const auto& p : echo2d::extract_peaks(spectrum, n))
      std::cout << s.filename().string() << ',' << std::setprecision(10) << p.omega1 << ',' << p.omega3 << ','
                << p.height << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D photon-echo spectra of excitonic systems (cumulant expansion in the stationary basis)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::vector<std::string> pathways;
  int threads = 0;
  int n_peaks = 8;

  auto* run = app.add_subcommand("run", "Compute response grids and spectra for every t2");
  auto* verify = app.add_subcommand("verify", "Run the numerical self-checks for a configuration");
  auto* peaks = app.add_subcommand("peaks", "List spectral peaks of an existing run");
  for (auto* sub : {run, verify}) {
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--output-dir", output_dir, "Override output_dir");
    sub->add_option("--threads", threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--pathway", pathways, "Pathway to include (SE, GSB, ESA); repeatable");
  }
  peaks->add_option("--output-dir", output_dir, "Run directory or one t2 snapshot directory")->required();
  peaks->add_option("-n,--count", n_peaks, "Peaks per snapshot")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors count as validation errors; --help exits 0.
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }
  set_threads(threads);

  try {
    if (*run) {
      const auto cfg = load(config_path, output_dir, pathways);
      const auto result = echo2d::run(cfg, &std::cout);
      std::cout << "wrote " << result.snapshot_dirs.size() << " snapshot(s) in " << result.seconds << " s\n";
      return 0;
    }
    if (*verify) {
      const auto cfg = load(config_path, output_dir, pathways);
      const auto checks = echo2d::verify(cfg, {}, &std::cout);
      for (const auto& c : checks)
        if (!c.passed) return kExitNumerical;
      return 0;
    }
    if (*peaks) return print_peaks(output_dir, n_peaks);
  } catch (const echo2d::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const echo2d::DegenerateStates& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const echo2d::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
