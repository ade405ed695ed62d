#pragma once

#include <complex>
#include <string>
#include <vector>

namespace echo2d {

enum class SpectralKind { Ohmic, Debye, Tabulated, Discrete };

struct QuadratureSpec {
  double omega_max = 0.0;  // cm^-1; 0 selects 30 * cutoff (or the table end)
  int n_points = 2000;
};

/// One harmonic mode linearly coupled as coupling * (a + a^dagger).
struct DiscreteMode {
  double omega = 0.0;     // cm^-1
  double coupling = 0.0;  // cm^-1
};

struct TabulatedPoint {
  double omega = 0.0;
  double density = 0.0;
};

struct BathSpec {
  SpectralKind kind = SpectralKind::Ohmic;
  double reorganization = 0.0;  // lambda, cm^-1
  double cutoff = 0.0;          // omega_c, cm^-1
  double temperature = 77.0;    // K
  QuadratureSpec quadrature;
  std::vector<TabulatedPoint> table;  // Tabulated only
  std::vector<DiscreteMode> modes;    // Discrete only

  double beta() const;  // 1/(k_B T), cm
  double resolved_omega_max() const;

  /// Hard errors (non-positive parameters, malformed tables).
  void validate() const;
  /// Soft problems worth reporting, e.g. an omega_max that truncates the tail.
  std::vector<std::string> warnings() const;
};

std::vector<TabulatedPoint> read_spectral_table(const std::string& path);

/// Quadrature node carrying the spectral measure: integral dw S(w) f(w) = sum strength * f(omega).
struct BathNode {
  double omega = 0.0;
  double strength = 0.0;
  double occupation = 0.0;  // Bose factor 1/(e^{beta w} - 1)
  double coth = 0.0;        // coth(beta w / 2) = 2 n + 1
};

double spectral_density(const BathSpec& spec, double omega);

class Bath {
 public:
  explicit Bath(BathSpec spec);

  const BathSpec& spec() const noexcept { return spec_; }
  double beta() const noexcept { return beta_; }
  const std::vector<BathNode>& nodes() const noexcept { return nodes_; }

  double spectral_density(double omega) const { return echo2d::spectral_density(spec_, omega); }

  /// C(tau) = int dw S(w) [coth(beta w/2) cos(w tau) - i sin(w tau)], cm^-2. tau in fs.
  std::complex<double> position_kernel(double tau_fs) const;

  /// <P(tau) P(0)> = int dw S(w) w^2 [e^{-i w tau}/(1-e^{-beta w}) + e^{i w tau}/(e^{beta w}-1)], cm^-4.
  std::complex<double> momentum_kernel(double tau_fs) const;

  /// int dw S(w)/w, the reorganization energy seen by the quadrature.
  double reorganization_integral() const;

  /// Same bath with the spectral measure scaled by factor (coupling strength).
  Bath scaled(double factor) const;

 private:
  BathSpec spec_;
  double beta_;
  std::vector<BathNode> nodes_;
};

struct ConvergenceReport {
  double max_relative_change = 0.0;
  bool converged = false;
};

/// Compares the kernels against a rule with twice the points and twice the
/// frequency range at the given lags (fs).
ConvergenceReport check_kernel_convergence(const BathSpec& spec, const std::vector<double>& taus_fs,
                                           double tolerance);

BathNode make_node(double omega, double strength, double beta);

const char* to_string(SpectralKind kind);
SpectralKind spectral_kind_from_string(const std::string& name);

}  // namespace echo2d
