#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/config.hpp"
#include "echo2d/spectrum.hpp"

namespace echo2d {

/// "t2_<fs>" with the shortest exact decimal form of t2.
std::string snapshot_dir_name(double t2_fs);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

struct RunResult {
  std::vector<std::string> snapshot_dirs;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

/// Computes every t2 snapshot and writes it below config.output_dir. On any
/// failure the snapshot directories created by this call are removed.
RunResult run(const RunConfig& config, std::ostream* log = nullptr);

/// Grids and spectrum of one snapshot without touching the filesystem.
struct Snapshot {
  std::vector<ResponseGrid> pathways;  // in config order
  ResponseGrid total;
  Spectrum2D spectrum;
};
Snapshot compute_snapshot(const RunConfig& config, const ResponseEngine& engine, double t2_fs);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  double coupling_scale = 0.2;  // oracle comparison bath strength
  int oracle_modes = 2;
  int oracle_fock_levels = 4;
  double oracle_tolerance = 0.10;
};

/// Quadrature convergence, detailed balance, and the oracle comparisons.
std::vector<CheckResult> verify(const RunConfig& config, const VerifyOptions& options = {},
                                std::ostream* log = nullptr);

/// Reads spectrum_re.csv and the axes from a snapshot directory.
Spectrum2D read_spectrum(const std::string& snapshot_dir);

/// Long-time slope of Re L(t) by a two-point difference over [t_begin, t_end] fs.
double relaxation_slope(const RelaxationTerms& terms, int state, double t_begin, double t_end);

/// sqrt(sum |a-b|^2 / sum |b|^2).
double relative_rms(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace echo2d
