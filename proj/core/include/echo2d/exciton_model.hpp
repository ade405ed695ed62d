#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace echo2d {

/// Frenkel exciton Hamiltonian in the site basis. Energies in cm^-1.
/// Every site is linearly coupled to its own copy of the bath.
struct ExcitonModel {
  double ground_energy = 0.0;
  Eigen::VectorXd site_energies;
  Eigen::MatrixXd couplings;  // symmetric, zero diagonal
  Eigen::VectorXd site_dipoles;

  int n_sites() const noexcept { return static_cast<int>(site_energies.size()); }

  /// Throws ValidationError if shapes or symmetry are wrong.
  void validate() const;

  Eigen::MatrixXd singles_hamiltonian() const;
};

struct Eigensystem {
  Eigen::VectorXd energies;  // descending
  Eigen::MatrixXd vectors;   // columns are eigenvectors
};

/// Two-exciton manifold |i,j>, i<j, in lexicographic order.
struct DoublesSystem {
  std::vector<std::pair<int, int>> pairs;
  Eigen::MatrixXd hamiltonian;
  Eigensystem eigen;
};

/// Diagonalizes a real symmetric matrix: eigenvalues descending, each
/// eigenvector signed so its largest-magnitude component is positive.
Eigensystem diagonalize_symmetric(const Eigen::MatrixXd& h);

Eigensystem diagonalize_singles(const ExcitonModel& model);

/// Pair diagonal energies are eps_i + eps_j - eps_g so that two-exciton
/// transition energies sit next to the one-exciton band.
DoublesSystem build_doubles(const ExcitonModel& model);

/// d eps_m / d Q_j = |<j|m>|^2, rows = stationary states, cols = sites.
Eigen::MatrixXd singles_gradients(const Eigensystem& singles);

/// d eps_n / d Q_j = sum over pairs containing j of |<(i,k)|n>|^2.
Eigen::MatrixXd doubles_gradients(const DoublesSystem& doubles, int n_sites);

/// A^j_{n,m} = -i <n|dH/dQ_j|m> / (eps_n - eps_m), zero on the diagonal.
/// site_projectors[j] is dH/dQ_j in the manifold's local basis.
/// Throws DegenerateStates when a gap is below degeneracy_tol.
std::vector<Eigen::MatrixXcd> nonadiabatic_couplings(const Eigensystem& system,
                                                     const std::vector<Eigen::MatrixXd>& site_projectors,
                                                     double degeneracy_tol);

struct DipoleMatrices {
  Eigen::VectorXd ground_to_singles;    // mu_{g,m}
  Eigen::MatrixXd singles_to_doubles;   // mu_{m,n}
};

DipoleMatrices dipole_matrices(const ExcitonModel& model, const Eigensystem& singles,
                               const DoublesSystem* doubles);

/// Site dipoles that realize the given ground-to-stationary dipoles mu_{g,m}.
Eigen::VectorXd site_dipoles_from_stationary(const ExcitonModel& model,
                                             const Eigen::VectorXd& stationary_dipoles);

struct BasisOptions {
  double degeneracy_tol = 1e-6;   // cm^-1
  bool doubles_couplings = true;  // nonadiabatic couplings inside the doubles manifold
};

/// All stationary-basis quantities at Q = 0. States are addressed with a
/// global index: singles 0..n_singles-1, then doubles.
class StationaryBasis {
 public:
  StationaryBasis(const ExcitonModel& model, BasisOptions options = {});

  int n_sites() const noexcept { return n_sites_; }
  int n_singles() const noexcept { return static_cast<int>(singles_.energies.size()); }
  int n_doubles() const noexcept { return static_cast<int>(doubles_.eigen.energies.size()); }
  int n_states() const noexcept { return n_singles() + n_doubles(); }
  bool has_doubles() const noexcept { return n_doubles() > 0; }

  int double_state(int n) const noexcept { return n_singles() + n; }
  bool is_double(int state) const noexcept { return state >= n_singles(); }

  double ground_energy() const noexcept { return ground_energy_; }
  double energy(int state) const;
  Eigen::VectorXd energies() const;

  const Eigensystem& singles() const noexcept { return singles_; }
  const DoublesSystem& doubles() const noexcept { return doubles_; }

  /// Rows: global states, columns: sites.
  const Eigen::MatrixXd& gradients() const noexcept { return gradients_; }

  /// A^j over global states (block diagonal; no singles-doubles blocks).
  std::complex<double> na_coupling(int site, int n, int m) const;
  const std::vector<Eigen::MatrixXcd>& singles_na() const noexcept { return singles_na_; }
  const std::vector<Eigen::MatrixXcd>& doubles_na() const noexcept { return doubles_na_; }

  double dipole_ground(int m) const { return dipoles_.ground_to_singles(m); }
  double dipole_singles_doubles(int m, int n) const { return dipoles_.singles_to_doubles(m, n); }
  const DipoleMatrices& dipoles() const noexcept { return dipoles_; }

  const BasisOptions& options() const noexcept { return options_; }

 private:
  int n_sites_;
  double ground_energy_;
  BasisOptions options_;
  Eigensystem singles_;
  DoublesSystem doubles_;
  Eigen::MatrixXd gradients_;
  std::vector<Eigen::MatrixXcd> singles_na_;
  std::vector<Eigen::MatrixXcd> doubles_na_;
  DipoleMatrices dipoles_;
};

}  // namespace echo2d
