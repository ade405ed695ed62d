#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/bath.hpp"
#include "echo2d/exciton_model.hpp"
#include "echo2d/population.hpp"
#include "echo2d/response.hpp"
#include "echo2d/spectrum.hpp"

namespace echo2d {

/// How model.dipoles.values are interpreted: one per site, or one per
/// stationary state (mu_{g,m}, converted to site dipoles).
enum class DipoleMode { PerSite, PerStationaryState };

struct GridSpec {
  double dt = 4.0;  // fs, shared by t1 and t3
  int n1 = 256;
  int n3 = 256;
  std::vector<double> t2;  // fs
  SpectrumOptions spectrum;
};

struct RunFlags {
  RelaxationMode relaxation = RelaxationMode::Reduced;
  bool case2_decoherence = false;
  bool doubles_relaxation = true;
  bool prune = true;
  double prefactor = 1.0;  // K
  double degeneracy_tol = 1e-6;
};

struct RunConfig {
  ExcitonModel model;  // site dipoles already resolved
  DipoleMode dipole_mode = DipoleMode::PerSite;
  Eigen::VectorXd dipole_values;  // as given
  BathSpec bath;
  GridSpec grid;
  std::vector<Pathway> pathways{Pathway::SE, Pathway::GSB, Pathway::ESA};
  RunFlags flags;
  std::string output_dir = "echo2d_out";

  /// Keys filled from defaults rather than the file, as "section.key".
  std::vector<std::string> defaults_applied;

  void validate() const;
  bool has(Pathway p) const;
  BasisOptions basis_options() const;
  ResponseOptions response_options() const;
};

/// Parses a JSON config; file-relative paths (bath.table) resolve against base_dir.
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

/// Fully resolved config; parsing it back reproduces the same run.
std::string to_json(const RunConfig& config);

}  // namespace echo2d
